#ifndef SAHM_CHARACTERIZATION_HPP
#define SAHM_CHARACTERIZATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sahm/state_space.hpp"
#include "sahm/trace.hpp"

namespace sahm {

/// counts[i][j]: number of consecutive epoch pairs in state i then state j.
struct TransitionMatrix {
    std::array<std::array<std::uint64_t, kStateCount>, kStateCount> counts{};

    std::uint64_t total() const;
    std::uint64_t diagonal() const;
    TransitionMatrix& operator+=(const TransitionMatrix& other);
    bool operator==(const TransitionMatrix&) const = default;
};

// Shares of a matrix; std::nullopt marks a transition that never occurred.
using ShareMatrix = std::array<std::array<std::optional<double>, kStateCount>, kStateCount>;

TransitionMatrix transitions(const std::vector<BehavioralState>& states);

// Traces with fewer than two epochs are skipped and their names appended to
// `skipped` when given.
TransitionMatrix transitions(std::span<const Trace> traces, const CutoffSet& cutoffs,
                             std::vector<std::string>* skipped = nullptr);

// Throws PreconditionError when nothing is left after excluding the diagonal.
ShareMatrix transition_shares(const TransitionMatrix& m, bool exclude_diagonal);

// Cell-wise unweighted mean over per-application share matrices; a cell is
// absent only when absent in every input.
ShareMatrix average_shares(std::span<const ShareMatrix> per_app);

/// Interval-length buckets given by their lower bounds, e.g. {1,2,5,10,50}
/// means [1], [2,4], [5,9], [10,49], [50,inf).
struct IntervalBuckets {
    std::vector<std::size_t> lower_bounds{1, 2, 5, 10, 50};

    std::size_t bucket_of(std::size_t length) const;
    std::string bucket_label(std::size_t index) const;
    std::size_t size() const { return lower_bounds.size(); }
};

IntervalBuckets default_interval_buckets();

/// Maximal runs of one state, for a single trace or a pool of traces.
struct IntervalStats {
    std::array<std::vector<std::size_t>, kStateCount> per_state; // lengths in epochs
    std::vector<std::size_t> all;
    std::vector<double> count_share; // per bucket
    std::vector<double> time_share;  // per bucket

    // Absent for states that never occur.
    std::optional<double> mean_length(BehavioralState s) const;
};

std::vector<std::size_t> interval_lengths(const std::vector<BehavioralState>& states);

IntervalStats intervals(std::span<const Trace> traces, const CutoffSet& cutoffs,
                        const IntervalBuckets& buckets);

/// Per-application state-coverage rows with the unweighted average last.
struct CoverageTable {
    std::vector<std::string> applications;
    std::vector<StateVector> rows;
    StateVector average{};
};

CoverageTable coverage(std::span<const Trace> traces, const CutoffSet& cutoffs);

void write_coverage_csv(std::ostream& out, const CoverageTable& table);

// Rows: application,i,j,share. Applications are each trace, "average"
// (unweighted across traces that have transitions) and "pooled".
void write_transitions_csv(std::ostream& out, std::span<const Trace> traces,
                           const CutoffSet& cutoffs, bool exclude_diagonal);

// Rows: application,bucket,count_share,time_share. Applications are each
// trace, "average" and "pooled".
void write_intervals_csv(std::ostream& out, std::span<const Trace> traces,
                         const CutoffSet& cutoffs, const IntervalBuckets& buckets);

// Rows: state,label,intervals,mean_length (pooled over traces).
void write_interval_means_csv(std::ostream& out, std::span<const Trace> traces,
                              const CutoffSet& cutoffs);

} // namespace sahm

#endif
