#ifndef SAHM_SIMULATOR_HPP
#define SAHM_SIMULATOR_HPP

#include <filesystem>
#include <span>

#include "sahm/chip.hpp"
#include "sahm/scheduler.hpp"
#include "sahm/sim_types.hpp"
#include "sahm/trace.hpp"

namespace sahm {

struct SimOutput {
    SimResult result;
    SimEventLog log;
};

// Fixed-timestep, trace-driven run of `workload` on `chip`. Each step runs a
// scheduler pass over the cores in id order, then advances every queue head
// by one timestep. Finished traces restart from their first epoch.
SimOutput simulate(std::span<const Trace> workload, const ChipConfig& chip,
                   const PolicyConfig& policy, const CutoffSet& cutoffs,
                   const SimParams& params);

// Contention- and migration-free bound:
// 1 / sum_s fractions[s] / (1 + best matching speedup for s).
double amdahl_speedup(const StateVector& fractions, const ChipConfig& chip);

void write_events_csv_gz(const std::filesystem::path& path, const SimEventLog& log);

} // namespace sahm

#endif
