#include "sahm/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "sahm/format.hpp"

namespace sahm {

PolicyConfig PolicyConfig::make(PolicyKind kind, int inertia)
{
    PolicyConfig p;
    p.kind = kind;
    bool uses_inertia = kind == PolicyKind::greedy_inertia || kind == PolicyKind::oracle_inertia;
    p.inertia_schedulings = uses_inertia ? inertia : 0;
    bool oracle = kind == PolicyKind::oracle_greedy || kind == PolicyKind::oracle_inertia;
    p.state_source = oracle ? StateSource::current_epoch : StateSource::previous_step;
    validate(p);
    return p;
}

void validate(const PolicyConfig& p)
{
    if (p.inertia_schedulings < 0)
        throw PreconditionError("inertia_schedulings must be nonnegative");
    bool uses_inertia =
        p.kind == PolicyKind::greedy_inertia || p.kind == PolicyKind::oracle_inertia;
    if (!uses_inertia && p.inertia_schedulings != 0)
        throw PreconditionError("inertia_schedulings must be 0 for non-inertia policies");
}

PolicyKind parse_policy(std::string_view name)
{
    if (name == "blind")
        return PolicyKind::blind;
    if (name == "greedy")
        return PolicyKind::greedy;
    if (name == "inertia")
        return PolicyKind::greedy_inertia;
    if (name == "oracle")
        return PolicyKind::oracle_greedy;
    if (name == "oracle-inertia")
        return PolicyKind::oracle_inertia;
    throw PreconditionError("unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(PolicyKind kind)
{
    switch (kind) {
    case PolicyKind::blind: return "blind";
    case PolicyKind::greedy: return "greedy";
    case PolicyKind::greedy_inertia: return "inertia";
    case PolicyKind::oracle_greedy: return "oracle";
    case PolicyKind::oracle_inertia: return "oracle-inertia";
    }
    return "?";
}

void ProgramProgress::advance(double work, double trace_length_ms)
{
    last_step_offset_ms = offset_ms;
    work_ms += work;
    offset_ms += work;
    while (offset_ms >= trace_length_ms) {
        offset_ms -= trace_length_ms;
        ++wraps;
    }
}

bool specialty_matches(const CoreSpec& core, BehavioralState state)
{
    auto component = component_of(core.specialization);
    return component && state.high(*component);
}

BehavioralState observed_state(const ProgramProgress& progress,
                               std::span<const BehavioralState> states, int epoch_ms,
                               StateSource source)
{
    const auto n = static_cast<std::int64_t>(states.size());
    if (source == StateSource::current_epoch) {
        auto idx = static_cast<std::int64_t>(std::floor(progress.offset_ms / epoch_ms));
        return states[static_cast<std::size_t>(std::clamp<std::int64_t>(idx, 0, n - 1))];
    }
    if (source == StateSource::previous_step) {
        if (progress.last_step_offset_ms < 0.0)
            return BehavioralState{};
        auto idx = static_cast<std::int64_t>(std::floor(progress.last_step_offset_ms / epoch_ms));
        return states[static_cast<std::size_t>(std::clamp<std::int64_t>(idx, 0, n - 1))];
    }
    auto completed = static_cast<std::int64_t>(std::floor(progress.work_ms / epoch_ms));
    if (completed < 1)
        return BehavioralState{};
    return states[static_cast<std::size_t>((completed - 1) % n)];
}

std::size_t most_idle_core(std::span<const std::size_t> lengths)
{
    if (lengths.empty())
        throw PreconditionError("most_idle_core: no cores");
    std::size_t best = 0;
    for (std::size_t i = 1; i < lengths.size(); ++i)
        if (lengths[i] < lengths[best])
            best = i;
    return best;
}

std::size_t most_idle_core(std::span<const CoreQueue> queues)
{
    std::vector<std::size_t> lengths;
    lengths.reserve(queues.size());
    for (const auto& q : queues)
        lengths.push_back(q.length());
    return most_idle_core(lengths);
}

std::optional<std::size_t> available_core_for(BehavioralState state, const ChipConfig& chip,
                                              std::span<const CoreQueue> queues,
                                              std::span<const ProgramControl> programs,
                                              std::optional<double> min_speedup)
{
    std::optional<std::size_t> best;
    auto better = [&](const CoreSpec& a, const CoreSpec& b) {
        auto la = queues[a.id].length(), lb = queues[b.id].length();
        if (la != lb)
            return la < lb;
        return a.speedup > b.speedup;
    };
    for (const auto& core : chip.cores) {
        if (!specialty_matches(core, state))
            continue;
        const auto& q = queues[core.id].programs;
        if (min_speedup) {
            if (!q.empty() || !(core.speedup > *min_speedup))
                continue;
        } else if (!q.empty()) {
            // A lone settled occupant that does not match the core may be
            // swapped out.
            const auto& occupant = programs[q.front()];
            if (q.size() > 1 || !occupant.settled ||
                specialty_matches(core, occupant.last_state))
                continue;
        }
        if (!best || better(core, chip.cores[*best]))
            best = core.id;
    }
    return best;
}

Decision schedule_core(std::size_t core, SchedulerWorld& world, BehavioralState observed)
{
    auto& queue = world.queues[core];
    if (queue.programs.empty())
        return Decision{Action::idle, 0, core, core, std::nullopt};

    const auto program = queue.programs.front();
    auto& control = world.programs[program];
    Decision stay{Action::stay, program, core, core, std::nullopt};

    if (control.inertia > 0) {
        --control.inertia;
        return stay;
    }
    control.last_state = observed;
    control.settled = true;

    const auto& here = world.chip.cores[core];
    std::optional<std::size_t> target;
    if (world.policy.kind != PolicyKind::blind) {
        if (specialty_matches(here, observed)) {
            // Move only to an idle matching core that is strictly faster.
            target = available_core_for(observed, world.chip, world.queues, world.programs,
                                        here.speedup);
            if (!target)
                return stay;
        } else {
            target = available_core_for(observed, world.chip, world.queues, world.programs);
        }
    }
    const bool balancing = !target;
    if (!target) {
        // Load balance with this program already dequeued; a tie with the
        // current core keeps the program where it is.
        std::vector<std::size_t> lengths;
        lengths.reserve(world.queues.size());
        for (const auto& q : world.queues)
            lengths.push_back(q.length());
        --lengths[core];
        auto idle = most_idle_core(lengths);
        target = lengths[idle] == lengths[core] ? core : idle;
    }
    if (*target == core)
        return stay;

    Decision d{Action::migrate, program, core, *target, std::nullopt};
    queue.programs.pop_front();
    auto& dest = world.queues[*target].programs;
    if (!balancing && !dest.empty()) {
        auto occupant = dest.front();
        dest.pop_front();
        queue.programs.push_back(occupant);
        world.programs[occupant].core = core;
        world.programs[occupant].inertia = world.policy.inertia_schedulings;
        world.programs[occupant].settled = false;
        d.displaced = occupant;
    }
    dest.push_back(program);
    control.core = *target;
    control.inertia = world.policy.inertia_schedulings;
    control.settled = false;
    return d;
}

} // namespace sahm
