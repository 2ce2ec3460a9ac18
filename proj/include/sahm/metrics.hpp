#ifndef SAHM_METRICS_HPP
#define SAHM_METRICS_HPP

#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sahm/chip.hpp"
#include "sahm/scheduler.hpp"
#include "sahm/sim_types.hpp"
#include "sahm/trace.hpp"

namespace sahm {

class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws IntegrityError when a program's executed, stalled and waiting time
// does not add up to the horizon, or when logged work disagrees with the
// final progress.
SimResult compute_metrics(const SimEventLog& log, const SimParams& params,
                          std::size_t n_programs);

struct Distribution {
    double min = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double p75 = 0.0;
    double max = 0.0;
};

// Percentiles interpolate linearly between order statistics.
Distribution summarize(std::vector<double> values);

struct Workload {
    std::string name;
    std::vector<Trace> traces;
};

struct SweepRow {
    std::string workload;
    std::string chip;
    PolicyKind policy = PolicyKind::greedy;
    double migration_cost_ms = 0.0;
    SimResult result;
};

// Worker count from SAHM_THREADS, else the hardware concurrency.
unsigned default_thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// One row per (chip, policy, cost, workload), in that nesting order. The
// output does not depend on the worker count.
std::vector<SweepRow> sweep(std::span<const Workload> workloads,
                            std::span<const ChipConfig> chips,
                            std::span<const PolicyConfig> policies,
                            std::span<const double> costs, const CutoffSet& cutoffs,
                            const SimParams& params, unsigned threads = 0);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_sweep_json(std::ostream& out, std::span<const SweepRow> rows);

std::string result_to_json(const SimResult& result);

} // namespace sahm

#endif
