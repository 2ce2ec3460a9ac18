#ifndef SAHM_SCHEDULER_HPP
#define SAHM_SCHEDULER_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sahm/chip.hpp"
#include "sahm/state_space.hpp"

namespace sahm {

enum class PolicyKind { blind, greedy, greedy_inertia, oracle_greedy, oracle_inertia };

// previous_epoch: the last fully completed epoch.
// previous_step: where the program was during its last executed timestep.
// current_epoch: the epoch about to execute (oracle knowledge).
enum class StateSource { previous_epoch, previous_step, current_epoch };

inline constexpr int kDefaultInertiaSchedulings = 5;

struct PolicyConfig {
    PolicyKind kind = PolicyKind::greedy;
    int inertia_schedulings = 0;
    StateSource state_source = StateSource::previous_epoch;

    // Fills state_source and zeroes inertia for the non-inertia kinds.
    static PolicyConfig make(PolicyKind kind, int inertia = kDefaultInertiaSchedulings);

    bool operator==(const PolicyConfig&) const = default;
};

void validate(const PolicyConfig& policy);

// CLI names: blind, greedy, inertia, oracle, oracle-inertia.
PolicyKind parse_policy(std::string_view name);
std::string_view to_string(PolicyKind kind);

/// Baseline-equivalent progress of one program through its (restarting) trace.
struct ProgramProgress {
    double work_ms = 0.0;     // total work done
    std::uint64_t wraps = 0;  // completed passes
    double offset_ms = 0.0;   // position within the current pass
    double last_step_offset_ms = -1.0; // offset when the last executed step began

    void advance(double work, double trace_length_ms);
};

struct ProgramControl {
    std::size_t program = 0;
    std::size_t core = 0;
    int inertia = 0;
    BehavioralState last_state{};
    double pending_stall_ms = 0.0;
    // Scheduled on its current core with no inertia left since it last moved.
    bool settled = false;
};

struct CoreQueue {
    std::size_t core = 0;
    std::deque<std::size_t> programs; // front is the running program

    std::size_t length() const { return programs.size(); }
};

/// Everything one scheduler invocation may look at or mutate.
struct SchedulerWorld {
    const ChipConfig& chip;
    std::vector<CoreQueue>& queues;
    std::vector<ProgramControl>& programs;
    const PolicyConfig& policy;
};

enum class Action { idle, stay, migrate };

// A migration onto a core held by a lone mismatched program swaps the two:
// `displaced` then names the occupant, which moved to `from_core`.
struct Decision {
    Action action = Action::idle;
    std::size_t program = 0;
    std::size_t from_core = 0;
    std::size_t to_core = 0;
    std::optional<std::size_t> displaced;
};

// A baseline core never matches; a specialized core matches when its
// component is HIGH in `state`.
bool specialty_matches(const CoreSpec& core, BehavioralState state);

// `states` is the classified trace; `epoch_ms` its epoch length.
BehavioralState observed_state(const ProgramProgress& progress,
                               std::span<const BehavioralState> states, int epoch_ms,
                               StateSource source);

// Minimum length, ties to the lowest id.
std::size_t most_idle_core(std::span<const std::size_t> lengths);
std::size_t most_idle_core(std::span<const CoreQueue> queues);

// A specialized core matching `state` that is idle, or whose only program is
// settled and was last observed in a state the core does not serve. Prefers the shorter
// queue, then the larger speedup, then the lower id. With `min_speedup`,
// only idle cores strictly faster than it qualify.
std::optional<std::size_t> available_core_for(BehavioralState state, const ChipConfig& chip,
                                              std::span<const CoreQueue> queues,
                                              std::span<const ProgramControl> programs,
                                              std::optional<double> min_speedup = {});

// One invocation for the program at the head of `core`'s queue. A migration
// moves the program to the target queue tail and sets its inertia; a swapped
// occupant gets the same treatment on the source core.
Decision schedule_core(std::size_t core, SchedulerWorld& world, BehavioralState observed);

} // namespace sahm

#endif
