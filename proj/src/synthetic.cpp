#include "sahm/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "sahm/format.hpp"
#include "sahm/rng.hpp"

namespace sahm {

void validate(const SyntheticSpec& spec)
{
    double sum = 0.0;
    std::size_t positive = 0;
    for (double w : spec.target_distribution) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw PreconditionError("target_distribution weights must be nonnegative");
        sum += w;
        positive += w > 0.0;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw PreconditionError("target_distribution must sum to 1 (got " + format_double(sum) +
                                ")");
    if (!(spec.self_transition_prob >= 0.0 && spec.self_transition_prob <= 1.0))
        throw PreconditionError("self_transition_prob must lie in [0,1]");
    if (spec.epoch_count == 0)
        throw PreconditionError("epoch_count must be positive");
    if (positive < 2 && spec.self_transition_prob < 1.0)
        throw PreconditionError("no reachable successor state: target_distribution has fewer "
                                "than two positive weights and self_transition_prob < 1");
}

std::vector<BehavioralState> generate_states(const SyntheticSpec& spec)
{
    validate(spec);
    Rng rng(spec.seed);
    const auto& pi = spec.target_distribution;

    std::vector<BehavioralState> states;
    states.reserve(spec.epoch_count);
    std::size_t current = draw_weighted(rng, pi);
    states.emplace_back(static_cast<unsigned>(current));

    StateVector off{};
    for (std::size_t i = 1; i < spec.epoch_count; ++i) {
        if (uniform01(rng) >= spec.self_transition_prob) {
            off = pi;
            off[current] = 0.0;
            current = draw_weighted(rng, off);
        }
        states.emplace_back(static_cast<unsigned>(current));
    }
    return states;
}

namespace {

double place(bool high, double cutoff, double max, const char* field)
{
    double v = high ? 2.0 * cutoff : 0.5 * cutoff;
    if (v > max)
        throw PreconditionError(std::string("cutoff for ") + field +
                                " too large to place a HIGH value in range");
    return v;
}

} // namespace

Trace materialize(const std::vector<BehavioralState>& states, const CutoffSet& cutoffs,
                  std::string name, int epoch_ms)
{
    validate(cutoffs);
    std::vector<EpochRecord> epochs;
    epochs.reserve(states.size());
    for (auto s : states) {
        epochs.push_back(EpochRecord{
            place(s.high(Component::branch), cutoffs.branch_mispredict, 1.0, "branch_mispredict"),
            place(s.high(Component::l1i), cutoffs.l1i_mpki, kMaxL1iMpki, "l1i_mpki"),
            place(s.high(Component::l1d), cutoffs.l1d_miss, 1.0, "l1d_miss"),
            place(s.high(Component::l2), cutoffs.l2_miss, 1.0, "l2_miss"),
        });
    }
    return Trace(std::move(name), epoch_ms, std::move(epochs));
}

Trace generate_trace(const SyntheticSpec& spec, const CutoffSet& cutoffs, std::string name,
                     int epoch_ms)
{
    return materialize(generate_states(spec), cutoffs, std::move(name), epoch_ms);
}

std::vector<BehavioralState> classify_trace(const Trace& trace, const CutoffSet& cutoffs)
{
    std::vector<BehavioralState> out;
    out.reserve(trace.size());
    for (const auto& r : trace.epochs())
        out.push_back(classify(r, cutoffs));
    return out;
}

StateVector empirical_state_fraction(const Trace& trace, const CutoffSet& cutoffs)
{
    std::array<std::size_t, kStateCount> counts{};
    for (const auto& r : trace.epochs())
        ++counts[classify(r, cutoffs).code()];
    StateVector out{};
    for (std::size_t s = 0; s < kStateCount; ++s)
        out[s] = static_cast<double>(counts[s]) / static_cast<double>(trace.size());
    return out;
}

StateVector suite_state_prior()
{
    StateVector prior;
    prior.fill(0.02);
    prior[0] = 0.0;
    prior[0b1000] = 0.20; // L2
    prior[0b1100] = 0.20; // L2+L1D
    prior[0b0001] = 0.12; // Branch
    prior[0b1001] = 0.12; // L2+Branch
    prior[0b1101] = 0.16; // L2+L1D+Branch
    return prior;
}

std::vector<Trace> generate_suite(const SuiteSpec& suite, const CutoffSet& cutoffs, int epoch_ms)
{
    if (suite.count == 0)
        throw PreconditionError("suite count must be positive");
    if (suite.min_epochs == 0 || suite.max_epochs < suite.min_epochs)
        throw PreconditionError("suite epoch range invalid");
    if (!(suite.low_share >= 0.0 && suite.low_share < 1.0))
        throw PreconditionError("suite low_share must lie in [0,1)");

    std::vector<Trace> traces;
    traces.reserve(suite.count);
    for (std::size_t i = 0; i < suite.count; ++i) {
        Rng rng(mix_seed(suite.seed, i));
        // Cubing a uniform draw makes a few states dominate each program.
        StateVector w{};
        double rest = 0.0;
        for (std::size_t s = 1; s < kStateCount; ++s) {
            double u = uniform01(rng);
            w[s] = suite.state_prior[s] * u * u * u;
            rest += w[s];
        }
        SyntheticSpec spec;
        spec.target_distribution[0] = suite.low_share;
        for (std::size_t s = 1; s < kStateCount; ++s)
            spec.target_distribution[s] = (1.0 - suite.low_share) * w[s] / rest;
        double sum = 0.0;
        for (double x : spec.target_distribution)
            sum += x;
        spec.target_distribution[0] += 1.0 - sum;
        spec.self_transition_prob = suite.self_transition_prob;
        auto span = suite.max_epochs - suite.min_epochs + 1;
        spec.epoch_count = suite.min_epochs + static_cast<std::size_t>(rng() % span);
        spec.seed = mix_seed(suite.seed, suite.count + i);

        char name[32];
        std::snprintf(name, sizeof name, "synth%03zu", i);
        traces.push_back(generate_trace(spec, cutoffs, name, epoch_ms));
    }
    return traces;
}

} // namespace sahm
