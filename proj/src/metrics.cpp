#include "sahm/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "sahm/format.hpp"
#include "sahm/simulator.hpp"

namespace sahm {

bool SimResult::operator==(const SimResult& o) const
{
    auto same = [](const ProgramResult& a, const ProgramResult& b) {
        return a.name == b.name && a.work_ms == b.work_ms && a.speedup == b.speedup &&
               a.migrations == b.migrations && a.matched_fraction == b.matched_fraction &&
               a.executed_ms == b.executed_ms && a.stalled_ms == b.stalled_ms &&
               a.waited_ms == b.waited_ms;
    };
    return horizon_ms == o.horizon_ms && programs.size() == o.programs.size() &&
           std::equal(programs.begin(), programs.end(), o.programs.begin(), same) &&
           system_speedup == o.system_speedup && mean_app_speedup == o.mean_app_speedup &&
           total_migrations == o.total_migrations &&
           migrations_per_sec == o.migrations_per_sec &&
           epoch_utilization == o.epoch_utilization;
}

SimResult compute_metrics(const SimEventLog& log, const SimParams& params,
                          std::size_t n_programs)
{
    (void)params;
    if (n_programs == 0 || log.program_names.size() != n_programs)
        throw IntegrityError("log does not describe " + std::to_string(n_programs) +
                             " programs");
    if (log.horizon_ms <= 0)
        throw IntegrityError("log has no horizon");

    SimResult r;
    r.horizon_ms = log.horizon_ms;
    r.programs.resize(n_programs);
    std::vector<std::uint64_t> executed_steps(n_programs), matched_steps(n_programs);
    for (std::size_t p = 0; p < n_programs; ++p)
        r.programs[p].name = log.program_names[p];

    for (const auto& s : log.steps) {
        if (s.program >= n_programs)
            throw IntegrityError("step record for unknown program");
        auto& pr = r.programs[s.program];
        if (s.running) {
            pr.work_ms += s.work_ms;
            pr.stalled_ms += s.stalled_ms;
            pr.executed_ms += s.duration_ms - s.stalled_ms;
            ++executed_steps[s.program];
            matched_steps[s.program] += s.matched;
        } else {
            pr.waited_ms += s.duration_ms;
        }
    }
    for (const auto& m : log.migrations) {
        if (m.program >= n_programs)
            throw IntegrityError("migration record for unknown program");
        ++r.programs[m.program].migrations;
    }

    const double horizon = static_cast<double>(log.horizon_ms);
    double total_work = 0.0;
    std::uint64_t all_exec = 0, all_matched = 0;
    for (std::size_t p = 0; p < n_programs; ++p) {
        auto& pr = r.programs[p];
        double wall = pr.executed_ms + pr.stalled_ms + pr.waited_ms;
        if (std::abs(wall - horizon) > 1e-6)
            throw IntegrityError("program '" + pr.name + "': executed+stalled+waited = " +
                                 format_double(wall) + " ms, horizon " +
                                 format_double(horizon) + " ms");
        if (p < log.final_progress.size() &&
            std::abs(log.final_progress[p].work_ms - pr.work_ms) > 1e-6 * std::max(1.0, pr.work_ms))
            throw IntegrityError("program '" + pr.name + "': logged work disagrees with progress");
        pr.speedup = pr.work_ms / horizon;
        pr.matched_fraction = executed_steps[p] == 0
                                  ? 0.0
                                  : static_cast<double>(matched_steps[p]) /
                                        static_cast<double>(executed_steps[p]);
        total_work += pr.work_ms;
        all_exec += executed_steps[p];
        all_matched += matched_steps[p];
        r.mean_app_speedup += pr.speedup;
        r.total_migrations += pr.migrations;
    }
    r.mean_app_speedup /= static_cast<double>(n_programs);
    r.system_speedup = total_work / (static_cast<double>(n_programs) * horizon);
    r.migrations_per_sec = static_cast<double>(r.total_migrations) / (horizon / 1000.0);
    r.epoch_utilization =
        all_exec == 0 ? 0.0 : static_cast<double>(all_matched) / static_cast<double>(all_exec);
    return r;
}

namespace {

double percentile_sorted(const std::vector<double>& v, double p)
{
    double rank = p * static_cast<double>(v.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(rank));
    auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (rank - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

} // namespace

Distribution summarize(std::vector<double> values)
{
    if (values.empty())
        throw PreconditionError("summarize: no values");
    std::sort(values.begin(), values.end());
    Distribution d;
    d.min = values.front();
    d.max = values.back();
    d.p25 = percentile_sorted(values, 0.25);
    d.median = percentile_sorted(values, 0.5);
    d.p75 = percentile_sorted(values, 0.75);
    d.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    return d;
}

unsigned default_thread_count()
{
    if (const char* env = std::getenv("SAHM_THREADS")) {
        try {
            auto n = parse_int(env);
            if (n >= 1)
                return static_cast<unsigned>(n);
        } catch (const DataError&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::jthread> pool;
    auto count = std::min<std::size_t>(threads, n);
    for (std::size_t t = 0; t < count; ++t)
        pool.emplace_back(worker);
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

std::vector<SweepRow> sweep(std::span<const Workload> workloads,
                            std::span<const ChipConfig> chips,
                            std::span<const PolicyConfig> policies,
                            std::span<const double> costs, const CutoffSet& cutoffs,
                            const SimParams& params, unsigned threads)
{
    if (workloads.empty() || chips.empty() || policies.empty() || costs.empty())
        throw PreconditionError("sweep: every dimension needs at least one entry");
    if (threads == 0)
        threads = default_thread_count();

    const std::size_t nw = workloads.size(), nk = costs.size(), np = policies.size();
    std::vector<SweepRow> rows(chips.size() * np * nk * nw);
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        std::size_t w = i % nw;
        std::size_t k = (i / nw) % nk;
        std::size_t p = (i / (nw * nk)) % np;
        std::size_t c = i / (nw * nk * np);
        SimParams run = params;
        run.migration_cost_ms = costs[k];
        auto out = simulate(workloads[w].traces, chips[c], policies[p], cutoffs, run);
        rows[i] = SweepRow{workloads[w].name, chips[c].name, policies[p].kind, costs[k],
                           std::move(out.result)};
    });
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << "workload,chip,policy,migration_cost_ms,system_speedup,mean_app_speedup,p25,median,"
           "p75,min,max,migrations_per_sec,epoch_utilization\n";
    for (const auto& row : rows) {
        std::vector<double> speedups;
        for (const auto& p : row.result.programs)
            speedups.push_back(p.speedup);
        auto d = summarize(speedups);
        out << row.workload << ',' << row.chip << ',' << to_string(row.policy) << ','
            << format_double(row.migration_cost_ms) << ','
            << format_double(row.result.system_speedup) << ','
            << format_double(row.result.mean_app_speedup) << ',' << format_double(d.p25) << ','
            << format_double(d.median) << ',' << format_double(d.p75) << ','
            << format_double(d.min) << ',' << format_double(d.max) << ','
            << format_double(row.result.migrations_per_sec) << ','
            << format_double(row.result.epoch_utilization) << '\n';
    }
}

namespace {

nlohmann::ordered_json result_json(const SimResult& r)
{
    nlohmann::ordered_json j;
    j["horizon_ms"] = r.horizon_ms;
    j["system_speedup"] = r.system_speedup;
    j["mean_app_speedup"] = r.mean_app_speedup;
    j["total_migrations"] = r.total_migrations;
    j["migrations_per_sec"] = r.migrations_per_sec;
    j["epoch_utilization"] = r.epoch_utilization;
    auto& programs = j["programs"] = nlohmann::ordered_json::array();
    for (const auto& p : r.programs) {
        nlohmann::ordered_json pj;
        pj["name"] = p.name;
        pj["work_ms"] = p.work_ms;
        pj["speedup"] = p.speedup;
        pj["migrations"] = p.migrations;
        pj["matched_fraction"] = p.matched_fraction;
        pj["executed_ms"] = p.executed_ms;
        pj["stalled_ms"] = p.stalled_ms;
        pj["waited_ms"] = p.waited_ms;
        programs.push_back(std::move(pj));
    }
    return j;
}

} // namespace

std::string result_to_json(const SimResult& result) { return result_json(result).dump(2); }

void write_sweep_json(std::ostream& out, std::span<const SweepRow> rows)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["workload"] = row.workload;
        j["chip"] = row.chip;
        j["policy"] = to_string(row.policy);
        j["migration_cost_ms"] = row.migration_cost_ms;
        j["result"] = result_json(row.result);
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

} // namespace sahm
