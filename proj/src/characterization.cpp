#include "sahm/characterization.hpp"

#include <numeric>

#include "sahm/format.hpp"
#include "sahm/synthetic.hpp"

namespace sahm {

std::uint64_t TransitionMatrix::total() const
{
    std::uint64_t n = 0;
    for (const auto& row : counts)
        for (auto c : row)
            n += c;
    return n;
}

std::uint64_t TransitionMatrix::diagonal() const
{
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < kStateCount; ++i)
        n += counts[i][i];
    return n;
}

TransitionMatrix& TransitionMatrix::operator+=(const TransitionMatrix& other)
{
    for (std::size_t i = 0; i < kStateCount; ++i)
        for (std::size_t j = 0; j < kStateCount; ++j)
            counts[i][j] += other.counts[i][j];
    return *this;
}

TransitionMatrix transitions(const std::vector<BehavioralState>& states)
{
    TransitionMatrix m;
    for (std::size_t t = 1; t < states.size(); ++t)
        ++m.counts[states[t - 1].code()][states[t].code()];
    return m;
}

TransitionMatrix transitions(std::span<const Trace> traces, const CutoffSet& cutoffs,
                             std::vector<std::string>* skipped)
{
    TransitionMatrix m;
    for (const auto& t : traces) {
        if (t.size() < 2) {
            if (skipped)
                skipped->push_back(t.name());
            continue;
        }
        m += transitions(classify_trace(t, cutoffs));
    }
    return m;
}

ShareMatrix transition_shares(const TransitionMatrix& m, bool exclude_diagonal)
{
    std::uint64_t total = m.total() - (exclude_diagonal ? m.diagonal() : 0);
    if (total == 0)
        throw PreconditionError(exclude_diagonal ? "no off-diagonal transitions"
                                                 : "no transitions");
    ShareMatrix shares{};
    for (std::size_t i = 0; i < kStateCount; ++i) {
        for (std::size_t j = 0; j < kStateCount; ++j) {
            if (exclude_diagonal && i == j)
                continue;
            if (m.counts[i][j] > 0)
                shares[i][j] = static_cast<double>(m.counts[i][j]) / static_cast<double>(total);
        }
    }
    return shares;
}

ShareMatrix average_shares(std::span<const ShareMatrix> per_app)
{
    ShareMatrix avg{};
    if (per_app.empty())
        return avg;
    for (std::size_t i = 0; i < kStateCount; ++i) {
        for (std::size_t j = 0; j < kStateCount; ++j) {
            bool seen = false;
            double sum = 0.0;
            for (const auto& m : per_app) {
                if (m[i][j]) {
                    seen = true;
                    sum += *m[i][j];
                }
            }
            if (seen)
                avg[i][j] = sum / static_cast<double>(per_app.size());
        }
    }
    return avg;
}

std::size_t IntervalBuckets::bucket_of(std::size_t length) const
{
    std::size_t b = 0;
    while (b + 1 < lower_bounds.size() && length >= lower_bounds[b + 1])
        ++b;
    return b;
}

std::string IntervalBuckets::bucket_label(std::size_t index) const
{
    auto lo = lower_bounds.at(index);
    if (index + 1 == lower_bounds.size())
        return ">=" + std::to_string(lo);
    auto hi = lower_bounds[index + 1] - 1;
    if (hi == lo)
        return std::to_string(lo);
    return std::to_string(lo) + "-" + std::to_string(hi);
}

IntervalBuckets default_interval_buckets() { return IntervalBuckets{}; }

namespace {

void check_buckets(const IntervalBuckets& b)
{
    if (b.lower_bounds.empty() || b.lower_bounds.front() != 1)
        throw PreconditionError("interval buckets must start at 1");
    for (std::size_t i = 1; i < b.lower_bounds.size(); ++i)
        if (b.lower_bounds[i] <= b.lower_bounds[i - 1])
            throw PreconditionError("interval buckets must be strictly increasing");
}

void fill_histograms(IntervalStats& stats, const IntervalBuckets& buckets)
{
    stats.count_share.assign(buckets.size(), 0.0);
    stats.time_share.assign(buckets.size(), 0.0);
    std::size_t time = 0;
    for (auto len : stats.all) {
        auto b = buckets.bucket_of(len);
        stats.count_share[b] += 1.0;
        stats.time_share[b] += static_cast<double>(len);
        time += len;
    }
    if (stats.all.empty())
        return;
    for (auto& c : stats.count_share)
        c /= static_cast<double>(stats.all.size());
    for (auto& t : stats.time_share)
        t /= static_cast<double>(time);
}

void add_intervals(IntervalStats& stats, const std::vector<BehavioralState>& states)
{
    std::size_t start = 0;
    for (std::size_t t = 1; t <= states.size(); ++t) {
        if (t == states.size() || states[t] != states[start]) {
            auto len = t - start;
            stats.all.push_back(len);
            stats.per_state[states[start].code()].push_back(len);
            start = t;
        }
    }
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

} // namespace

std::optional<double> IntervalStats::mean_length(BehavioralState s) const
{
    const auto& v = per_state[s.code()];
    if (v.empty())
        return std::nullopt;
    double sum = std::accumulate(v.begin(), v.end(), 0.0);
    return sum / static_cast<double>(v.size());
}

std::vector<std::size_t> interval_lengths(const std::vector<BehavioralState>& states)
{
    IntervalStats stats;
    add_intervals(stats, states);
    return stats.all;
}

IntervalStats intervals(std::span<const Trace> traces, const CutoffSet& cutoffs,
                        const IntervalBuckets& buckets)
{
    check_buckets(buckets);
    if (traces.empty())
        throw PreconditionError("intervals: no traces");
    IntervalStats stats;
    for (const auto& t : traces)
        add_intervals(stats, classify_trace(t, cutoffs));
    fill_histograms(stats, buckets);
    return stats;
}

CoverageTable coverage(std::span<const Trace> traces, const CutoffSet& cutoffs)
{
    if (traces.empty())
        throw PreconditionError("coverage: no traces");
    CoverageTable table;
    for (const auto& t : traces) {
        table.applications.push_back(t.name());
        table.rows.push_back(empirical_state_fraction(t, cutoffs));
    }
    for (std::size_t s = 0; s < kStateCount; ++s) {
        double sum = 0.0;
        for (const auto& row : table.rows)
            sum += row[s];
        table.average[s] = sum / static_cast<double>(table.rows.size());
    }
    return table;
}

void write_coverage_csv(std::ostream& out, const CoverageTable& table)
{
    out << "application";
    for (unsigned s = 0; s < kStateCount; ++s)
        out << ',' << label(BehavioralState(s));
    out << '\n';
    auto row = [&](const std::string& name, const StateVector& v) {
        out << name;
        for (double x : v)
            out << ',' << format_double(x);
        out << '\n';
    };
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        row(table.applications[i], table.rows[i]);
    row("average", table.average);
}

void write_transitions_csv(std::ostream& out, std::span<const Trace> traces,
                           const CutoffSet& cutoffs, bool exclude_diagonal)
{
    out << "application,i,j,share\n";
    auto emit = [&](const std::string& app, const ShareMatrix& m) {
        for (std::size_t i = 0; i < kStateCount; ++i)
            for (std::size_t j = 0; j < kStateCount; ++j)
                out << app << ',' << i << ',' << j << ',' << opt(m[i][j]) << '\n';
    };
    std::vector<ShareMatrix> per_app;
    for (const auto& t : traces) {
        if (t.size() < 2)
            continue;
        auto m = transitions(classify_trace(t, cutoffs));
        if (m.total() - (exclude_diagonal ? m.diagonal() : 0) == 0)
            continue;
        per_app.push_back(transition_shares(m, exclude_diagonal));
        emit(t.name(), per_app.back());
    }
    emit("average", average_shares(per_app));
    emit("pooled", transition_shares(transitions(traces, cutoffs), exclude_diagonal));
}

void write_intervals_csv(std::ostream& out, std::span<const Trace> traces,
                         const CutoffSet& cutoffs, const IntervalBuckets& buckets)
{
    out << "application,bucket,count_share,time_share\n";
    std::vector<double> avg_count(buckets.size(), 0.0), avg_time(buckets.size(), 0.0);
    auto emit = [&](const std::string& app, const std::vector<double>& c,
                    const std::vector<double>& t) {
        for (std::size_t b = 0; b < buckets.size(); ++b)
            out << app << ',' << buckets.bucket_label(b) << ',' << format_double(c[b]) << ','
                << format_double(t[b]) << '\n';
    };
    for (const auto& t : traces) {
        auto stats = intervals(std::span<const Trace>(&t, 1), cutoffs, buckets);
        emit(t.name(), stats.count_share, stats.time_share);
        for (std::size_t b = 0; b < buckets.size(); ++b) {
            avg_count[b] += stats.count_share[b];
            avg_time[b] += stats.time_share[b];
        }
    }
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        avg_count[b] /= static_cast<double>(traces.size());
        avg_time[b] /= static_cast<double>(traces.size());
    }
    emit("average", avg_count, avg_time);
    auto pooled = intervals(traces, cutoffs, buckets);
    emit("pooled", pooled.count_share, pooled.time_share);
}

void write_interval_means_csv(std::ostream& out, std::span<const Trace> traces,
                              const CutoffSet& cutoffs)
{
    auto stats = intervals(traces, cutoffs, default_interval_buckets());
    out << "state,label,intervals,mean_length\n";
    for (unsigned s = 0; s < kStateCount; ++s) {
        BehavioralState st(s);
        out << s << ',' << label(st) << ',' << stats.per_state[s].size() << ','
            << opt(stats.mean_length(st)) << '\n';
    }
}

} // namespace sahm
