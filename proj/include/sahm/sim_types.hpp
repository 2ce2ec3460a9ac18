#ifndef SAHM_SIM_TYPES_HPP
#define SAHM_SIM_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sahm/scheduler.hpp"

namespace sahm {

struct SimParams {
    int timestep_ms = 10;
    int epoch_ms = 100;
    double migration_cost_ms = 0.0;
    std::int64_t horizon_ms = 0; // 0: baseline length of the longest trace
    std::uint64_t seed = 0;
};

void validate(const SimParams& params);

/// One program during one timestep.
struct StepRecord {
    std::int64_t time_ms = 0;
    std::uint32_t program = 0;
    std::uint32_t core = 0;      // core whose queue holds the program
    std::uint8_t state = 0;      // state at the program's offset
    bool running = false;        // head of its queue (otherwise waiting)
    bool matched = false;
    double duration_ms = 0.0;    // wall time covered by the step
    double work_ms = 0.0;        // baseline-equivalent work done
    double stalled_ms = 0.0;     // migration stall consumed
};

struct MigrationRecord {
    std::int64_t time_ms = 0;
    std::uint32_t program = 0;
    std::uint32_t from_core = 0;
    std::uint32_t to_core = 0;
};

struct SimEventLog {
    std::int64_t horizon_ms = 0;
    std::vector<std::string> program_names;
    std::vector<StepRecord> steps;
    std::vector<MigrationRecord> migrations;
    std::vector<ProgramProgress> final_progress;
};

struct ProgramResult {
    std::string name;
    double work_ms = 0.0;
    double speedup = 0.0;
    std::uint64_t migrations = 0;
    double matched_fraction = 0.0; // matched executed steps / executed steps
    double executed_ms = 0.0;
    double stalled_ms = 0.0;
    double waited_ms = 0.0;
};

struct SimResult {
    std::int64_t horizon_ms = 0;
    std::vector<ProgramResult> programs;
    double system_speedup = 0.0;   // sum of work / (N * horizon)
    double mean_app_speedup = 0.0; // arithmetic mean over programs
    std::uint64_t total_migrations = 0;
    double migrations_per_sec = 0.0;
    double epoch_utilization = 0.0;

    bool operator==(const SimResult&) const;
};

} // namespace sahm

#endif
