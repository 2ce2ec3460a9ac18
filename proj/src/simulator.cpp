#include "sahm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <zlib.h>

#include "sahm/format.hpp"
#include "sahm/metrics.hpp"
#include "sahm/synthetic.hpp"

namespace sahm {

void validate(const SimParams& p)
{
    if (p.timestep_ms <= 0)
        throw PreconditionError("timestep_ms must be positive");
    if (p.epoch_ms <= 0 || p.epoch_ms % p.timestep_ms != 0)
        throw PreconditionError("epoch_ms must be a positive multiple of timestep_ms");
    if (!(p.migration_cost_ms >= 0.0) || !std::isfinite(p.migration_cost_ms))
        throw PreconditionError("migration_cost_ms must be nonnegative");
    if (p.horizon_ms < 0)
        throw PreconditionError("horizon_ms must be positive (or 0 for the default)");
}

namespace {

struct Program {
    std::vector<BehavioralState> states;
    double length_ms = 0.0;
    ProgramProgress progress;
};

BehavioralState state_at(const Program& p, int epoch_ms)
{
    auto idx = static_cast<std::size_t>(std::floor(p.progress.offset_ms / epoch_ms));
    return p.states[std::min(idx, p.states.size() - 1)];
}

} // namespace

SimOutput simulate(std::span<const Trace> workload, const ChipConfig& chip,
                   const PolicyConfig& policy, const CutoffSet& cutoffs, const SimParams& params)
{
    if (workload.empty())
        throw PreconditionError("simulate: empty workload");
    validate(chip);
    validate(policy);
    validate(params);
    validate(cutoffs);

    std::vector<Program> programs;
    programs.reserve(workload.size());
    SimEventLog log;
    for (const auto& t : workload) {
        if (t.epoch_ms() != params.epoch_ms)
            throw PreconditionError("trace '" + t.name() + "' has epoch_ms " +
                                    std::to_string(t.epoch_ms()) + ", simulation uses " +
                                    std::to_string(params.epoch_ms));
        programs.push_back(Program{classify_trace(t, cutoffs), t.length_ms(), {}});
        log.program_names.push_back(t.name());
    }

    std::int64_t horizon = params.horizon_ms;
    if (horizon == 0)
        for (const auto& t : workload)
            horizon = std::max(horizon, static_cast<std::int64_t>(t.length_ms()));
    log.horizon_ms = horizon;

    const std::size_t n_cores = chip.cores.size();
    std::vector<CoreQueue> queues(n_cores);
    for (std::size_t c = 0; c < n_cores; ++c)
        queues[c].core = c;
    std::vector<ProgramControl> controls(programs.size());
    for (std::size_t p = 0; p < programs.size(); ++p) {
        controls[p].program = p;
        controls[p].core = p % n_cores;
        queues[p % n_cores].programs.push_back(p);
    }
    SchedulerWorld world{chip, queues, controls, policy};

    const auto steps_expected = static_cast<std::size_t>(
        (horizon + params.timestep_ms - 1) / params.timestep_ms);
    log.steps.reserve(steps_expected * programs.size());

    std::vector<char> scheduled(programs.size());
    std::vector<char> ran(programs.size());
    for (std::int64_t now = 0; now < horizon; now += params.timestep_ms) {
        const double step = static_cast<double>(std::min<std::int64_t>(params.timestep_ms,
                                                                       horizon - now));
        // Scheduler pass; a program is considered at most once per pass.
        std::fill(scheduled.begin(), scheduled.end(), 0);
        for (std::size_t c = 0; c < n_cores; ++c) {
            if (queues[c].programs.empty())
                continue;
            auto p = queues[c].programs.front();
            if (scheduled[p])
                continue;
            scheduled[p] = 1;
            auto observed = observed_state(programs[p].progress, programs[p].states,
                                           params.epoch_ms, policy.state_source);
            auto d = schedule_core(c, world, observed);
            if (d.action == Action::migrate) {
                controls[p].pending_stall_ms += params.migration_cost_ms;
                log.migrations.push_back(MigrationRecord{now, static_cast<std::uint32_t>(p),
                                                         static_cast<std::uint32_t>(d.from_core),
                                                         static_cast<std::uint32_t>(d.to_core)});
                if (d.displaced) {
                    auto o = *d.displaced;
                    scheduled[o] = 1;
                    controls[o].pending_stall_ms += params.migration_cost_ms;
                    log.migrations.push_back(MigrationRecord{
                        now, static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(d.to_core),
                        static_cast<std::uint32_t>(d.from_core)});
                }
            }
        }

        // Execute queue heads, then rotate them to their queue tails.
        std::fill(ran.begin(), ran.end(), 0);
        for (std::size_t c = 0; c < n_cores; ++c) {
            auto& q = queues[c].programs;
            if (q.empty())
                continue;
            auto p = q.front();
            auto& prog = programs[p];
            auto& ctl = controls[p];
            StepRecord rec;
            rec.time_ms = now;
            rec.program = static_cast<std::uint32_t>(p);
            rec.core = static_cast<std::uint32_t>(c);
            rec.running = true;
            rec.duration_ms = step;
            rec.stalled_ms = std::min(ctl.pending_stall_ms, step);
            ctl.pending_stall_ms -= rec.stalled_ms;
            auto state = state_at(prog, params.epoch_ms);
            rec.state = static_cast<std::uint8_t>(state.code());
            rec.matched = specialty_matches(chip.cores[c], state);
            double rate = rec.matched ? 1.0 + chip.cores[c].speedup : 1.0;
            rec.work_ms = (step - rec.stalled_ms) * rate;
            prog.progress.advance(rec.work_ms, prog.length_ms);
            log.steps.push_back(rec);
            ran[p] = 1;
            if (q.size() > 1) {
                q.pop_front();
                q.push_back(p);
            }
        }
        for (std::size_t c = 0; c < n_cores; ++c) {
            for (auto p : queues[c].programs) {
                if (ran[p])
                    continue;
                StepRecord rec;
                rec.time_ms = now;
                rec.program = static_cast<std::uint32_t>(p);
                rec.core = static_cast<std::uint32_t>(c);
                rec.state = static_cast<std::uint8_t>(state_at(programs[p], params.epoch_ms).code());
                rec.duration_ms = step;
                log.steps.push_back(rec);
            }
        }
    }

    for (const auto& p : programs)
        log.final_progress.push_back(p.progress);
    auto result = compute_metrics(log, params, programs.size());
    return SimOutput{std::move(result), std::move(log)};
}

double amdahl_speedup(const StateVector& fractions, const ChipConfig& chip)
{
    double sum = 0.0;
    for (double f : fractions)
        sum += f;
    if (std::abs(sum - 1.0) > 1e-9)
        throw PreconditionError("amdahl_speedup: fractions must sum to 1");
    double time = 0.0;
    for (unsigned s = 0; s < kStateCount; ++s) {
        double best = 0.0;
        for (const auto& core : chip.cores)
            if (specialty_matches(core, BehavioralState(s)))
                best = std::max(best, core.speedup);
        time += fractions[s] / (1.0 + best);
    }
    return 1.0 / time;
}

void write_events_csv_gz(const std::filesystem::path& path, const SimEventLog& log)
{
    gzFile f = gzopen(path.string().c_str(), "wb");
    if (!f)
        throw DataError(path.string() + ": cannot write");
    auto put = [&](const std::string& s) {
        if (gzwrite(f, s.data(), static_cast<unsigned>(s.size())) != static_cast<int>(s.size()))
            throw DataError(path.string() + ": write failed");
    };
    try {
        put("kind,time_ms,program,core,to_core,state,running,matched,duration_ms,work_ms,"
            "stalled_ms\n");
        std::string line;
        for (const auto& r : log.steps) {
            line = "step," + std::to_string(r.time_ms) + ',' + log.program_names[r.program] +
                   ',' + std::to_string(r.core) + ",," + std::to_string(r.state) + ',' +
                   (r.running ? "1" : "0") + ',' + (r.matched ? "1" : "0") + ',' +
                   format_double(r.duration_ms) + ',' + format_double(r.work_ms) + ',' +
                   format_double(r.stalled_ms) + '\n';
            put(line);
        }
        for (const auto& m : log.migrations) {
            line = "migration," + std::to_string(m.time_ms) + ',' +
                   log.program_names[m.program] + ',' + std::to_string(m.from_core) + ',' +
                   std::to_string(m.to_core) + ",,,,,,\n";
            put(line);
        }
    } catch (...) {
        gzclose(f);
        throw;
    }
    if (gzclose(f) != Z_OK)
        throw DataError(path.string() + ": close failed");
}

} // namespace sahm
