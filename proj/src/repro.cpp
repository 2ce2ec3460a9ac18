#include "sahm/repro.hpp"

#include <fstream>
#include <sstream>

#include "sahm/chip.hpp"
#include "sahm/format.hpp"
#include "sahm/simulator.hpp"
#include "sahm/synthetic.hpp"

namespace sahm {

std::vector<LadderStep> realistic_ladder_steps()
{
    return {
        {"Oracle", PolicyKind::oracle_greedy, 0.0},
        {"Ideal", PolicyKind::greedy, 0.0},
        {"Cost", PolicyKind::greedy, 1.0},
        {"Inertia", PolicyKind::greedy_inertia, 1.0},
        {"Inertia+5ms", PolicyKind::greedy_inertia, 5.0},
        {"Inertia+9ms", PolicyKind::greedy_inertia, 9.0},
    };
}

std::vector<std::string> repro_presets()
{
    return {"limit-study", "breadth", "generalist-vs-specialized", "realistic-ladder"};
}

namespace {

std::vector<Workload> one_per_trace(std::span<const Trace> traces)
{
    std::vector<Workload> out;
    for (const auto& t : traces)
        out.push_back(Workload{t.name(), {t}});
    return out;
}

void add_sweep(ReproFiles& files, std::span<const SweepRow> rows, bool json)
{
    std::ostringstream out;
    if (json) {
        write_sweep_json(out, rows);
        files["sweep.json"] = out.str();
    } else {
        write_sweep_csv(out, rows);
        files["sweep.csv"] = out.str();
    }
}

void distribution_row(std::ostream& out, const std::string& key, const Distribution& d)
{
    out << key << ',' << format_double(d.min) << ',' << format_double(d.p25) << ','
        << format_double(d.median) << ',' << format_double(d.mean) << ','
        << format_double(d.p75) << ',' << format_double(d.max) << '\n';
}

constexpr const char* kDistributionHeader = "min,p25,median,mean,p75,max\n";

ReproFiles limit_study(std::span<const Trace> traces, const ReproOptions& opt)
{
    auto chip = canonical_config({0.3, 0.3, 0.3, 0.3});
    auto workloads = one_per_trace(traces);
    std::vector<ChipConfig> chips{chip};
    std::vector<PolicyConfig> policies{PolicyConfig::make(PolicyKind::oracle_greedy)};
    std::vector<double> costs{0.0};
    auto rows = sweep(workloads, chips, policies, costs, opt.cutoffs, opt.params, opt.threads);

    ReproFiles files;
    add_sweep(files, rows, opt.json);
    std::ostringstream out;
    out << "workload,low_share,amdahl_speedup,simulated_speedup\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        auto frac = empirical_state_fraction(traces[i], opt.cutoffs);
        out << traces[i].name() << ',' << format_double(frac[0]) << ','
            << format_double(amdahl_speedup(frac, chip)) << ','
            << format_double(rows[i].result.mean_app_speedup) << '\n';
    }
    files["limit_study.csv"] = out.str();
    return files;
}

ReproFiles breadth(std::span<const Trace> traces, const ReproOptions& opt)
{
    const std::vector<double> levels{0.1, 0.2, 0.3};
    auto space = enumerate_design_space(levels);
    std::vector<ChipConfig> chips(space.begin() + 1, space.end()); // no baseline-only chip
    auto workloads = one_per_trace(traces);
    std::vector<PolicyConfig> policies{PolicyConfig::make(PolicyKind::oracle_greedy)};
    std::vector<double> costs{0.0};
    auto rows = sweep(workloads, chips, policies, costs, opt.cutoffs, opt.params, opt.threads);

    ReproFiles files;
    add_sweep(files, rows, opt.json);
    std::ostringstream out;
    out << "workload," << kDistributionHeader;
    std::vector<double> means;
    for (std::size_t w = 0; w < workloads.size(); ++w) {
        std::vector<double> speedups;
        for (std::size_t c = 0; c < chips.size(); ++c)
            speedups.push_back(rows[c * workloads.size() + w].result.mean_app_speedup);
        auto d = summarize(speedups);
        means.push_back(d.mean);
        distribution_row(out, workloads[w].name, d);
    }
    distribution_row(out, "average", summarize(means));
    files["breadth_summary.csv"] = out.str();
    return files;
}

ReproFiles generalist_vs_specialized(std::span<const Trace> traces, const ReproOptions& opt)
{
    std::vector<ChipConfig> chips{canonical_config({0.3, 0.3, 0.3, 0.3}),
                                  canonical_config({0.1, 0.3, 0.3, 0.3}),
                                  canonical_config({0.0, 0.3, 0.3, 0.3})};
    const std::vector<std::string> labels{"All-30%", "Branch-10%", "Branch-0%"};
    auto workloads = one_per_trace(traces);
    std::vector<PolicyConfig> policies{PolicyConfig::make(PolicyKind::oracle_greedy)};
    std::vector<double> costs{0.0};
    auto rows = sweep(workloads, chips, policies, costs, opt.cutoffs, opt.params, opt.threads);

    ReproFiles files;
    add_sweep(files, rows, opt.json);
    std::ostringstream out;
    out << "config,chip," << kDistributionHeader;
    for (std::size_t c = 0; c < chips.size(); ++c) {
        std::vector<double> speedups;
        for (std::size_t w = 0; w < workloads.size(); ++w)
            speedups.push_back(rows[c * workloads.size() + w].result.mean_app_speedup);
        distribution_row(out, labels[c] + "," + chips[c].name, summarize(speedups));
    }
    // A single core 5% faster on everything: every application gains exactly 5%.
    distribution_row(out, "Generalist-5%,analytic",
                     summarize(std::vector<double>(workloads.size(), 1.05)));
    files["config_summary.csv"] = out.str();
    return files;
}

ReproFiles realistic_ladder(std::span<const Trace> traces, const ReproOptions& opt)
{
    auto chip = realistic_config(8, 7, 0.3);
    auto steps = realistic_ladder_steps();
    std::vector<SweepRow> rows(steps.size());
    unsigned threads = opt.threads == 0 ? default_thread_count() : opt.threads;
    parallel_for(steps.size(), threads, [&](std::size_t i) {
        SimParams params = opt.params;
        params.migration_cost_ms = steps[i].migration_cost_ms;
        auto out = simulate(traces, chip, PolicyConfig::make(steps[i].policy), opt.cutoffs, params);
        rows[i] = SweepRow{"all", chip.name, steps[i].policy, steps[i].migration_cost_ms,
                           std::move(out.result)};
    });

    ReproFiles files;
    add_sweep(files, rows, opt.json);
    std::ostringstream out;
    out << "constraint,policy,migration_cost_ms,mean_app_speedup,system_speedup,"
           "migrations_per_sec,epoch_utilization\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& r = rows[i].result;
        out << steps[i].label << ',' << to_string(steps[i].policy) << ','
            << format_double(steps[i].migration_cost_ms) << ','
            << format_double(r.mean_app_speedup) << ',' << format_double(r.system_speedup) << ','
            << format_double(r.migrations_per_sec) << ',' << format_double(r.epoch_utilization)
            << '\n';
    }
    files["ladder.csv"] = out.str();
    return files;
}

} // namespace

ReproFiles run_repro(std::string_view preset, std::span<const Trace> traces,
                     const ReproOptions& options)
{
    if (traces.empty())
        throw PreconditionError("repro: no traces");
    if (preset == "limit-study")
        return limit_study(traces, options);
    if (preset == "breadth")
        return breadth(traces, options);
    if (preset == "generalist-vs-specialized")
        return generalist_vs_specialized(traces, options);
    if (preset == "realistic-ladder")
        return realistic_ladder(traces, options);
    throw PreconditionError("unknown repro preset '" + std::string(preset) + "'");
}

void write_files(const std::filesystem::path& dir, const ReproFiles& files)
{
    std::filesystem::create_directories(dir);
    for (const auto& [name, contents] : files) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out)
            throw DataError((dir / name).string() + ": cannot write");
        out << contents;
        if (!out)
            throw DataError((dir / name).string() + ": write failed");
    }
}

} // namespace sahm
