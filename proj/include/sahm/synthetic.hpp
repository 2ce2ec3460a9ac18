#ifndef SAHM_SYNTHETIC_HPP
#define SAHM_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sahm/state_space.hpp"
#include "sahm/trace.hpp"

namespace sahm {

/// Parameters of a Markov-chain state generator.
///
/// The chain stays in its current state with probability
/// `self_transition_prob`; otherwise it moves to s' != s with probability
/// proportional to target_distribution[s']. The initial state is drawn
/// from target_distribution.
struct SyntheticSpec {
    StateVector target_distribution{};
    double self_transition_prob = 0.84;
    std::size_t epoch_count = 100;
    std::uint64_t seed = 0;
};

// Throws PreconditionError for bad weights, a probability outside [0,1], zero
// epochs, or a chain that would have no reachable successor.
void validate(const SyntheticSpec& spec);

std::vector<BehavioralState> generate_states(const SyntheticSpec& spec);

// Metric values sit at 2x the cutoff for HIGH bits and 0.5x for LOW bits, so
// classify() recovers `states` exactly.
Trace materialize(const std::vector<BehavioralState>& states, const CutoffSet& cutoffs,
                  std::string name = "synthetic", int epoch_ms = kDefaultEpochMs);

Trace generate_trace(const SyntheticSpec& spec, const CutoffSet& cutoffs,
                     std::string name = "synthetic", int epoch_ms = kDefaultEpochMs);

std::vector<BehavioralState> classify_trace(const Trace& trace, const CutoffSet& cutoffs);

StateVector empirical_state_fraction(const Trace& trace, const CutoffSet& cutoffs);

// Relative weights of the non-Low states: the L2, L2+L1D, Branch, L2+Branch
// and L2+L1D+Branch states dominate; the others are rare. Index 0 unused.
StateVector suite_state_prior();

/// Knobs for a synthetic multi-program workload resembling a benchmark
/// suite: every program puts `low_share` of its target mass on state 0 and
/// spreads the rest over the other 15 states, each program drawing its own
/// uneven weights around `state_prior`.
struct SuiteSpec {
    std::size_t count = 39;
    StateVector state_prior = suite_state_prior();
    double low_share = 0.08;
    double self_transition_prob = 0.84;
    std::size_t min_epochs = 200;
    std::size_t max_epochs = 600;
    std::uint64_t seed = 2025;
};

std::vector<Trace> generate_suite(const SuiteSpec& suite, const CutoffSet& cutoffs,
                                  int epoch_ms = kDefaultEpochMs);

} // namespace sahm

#endif
