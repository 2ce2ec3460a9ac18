// Command-line front end: every subcommand is a thin wrapper over the sahm
// library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sahm/characterization.hpp"
#include "sahm/chip.hpp"
#include "sahm/format.hpp"
#include "sahm/metrics.hpp"
#include "sahm/repro.hpp"
#include "sahm/simulator.hpp"
#include "sahm/state_space.hpp"
#include "sahm/synthetic.hpp"
#include "sahm/trace.hpp"

namespace fs = std::filesystem;
using namespace sahm;

namespace {

struct Common {
    std::vector<std::string> traces;
    std::string cutoffs = "intuitive";
    int epoch_ms = kDefaultEpochMs;
    std::string out;
};

std::vector<Trace> load(const Common& c)
{
    std::vector<fs::path> paths(c.traces.begin(), c.traces.end());
    return load_traces(paths, c.epoch_ms);
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError(path.string() + ": cannot write");
    out << text;
}

std::vector<ChipConfig> resolve_chips(const std::vector<std::string>& specs)
{
    std::vector<ChipConfig> chips;
    for (const auto& spec : specs) {
        if (spec.rfind("space:", 0) == 0) {
            auto levels = parse_double_list(spec.substr(6));
            auto space = enumerate_design_space(levels);
            chips.insert(chips.end(), space.begin(), space.end());
        } else {
            chips.push_back(resolve_chip(spec));
        }
    }
    return chips;
}

void add_traces_option(CLI::App* cmd, Common& c, bool required = true)
{
    auto* opt = cmd->add_option("--traces", c.traces, "Trace CSV files or directories");
    if (required)
        opt->required();
    cmd->add_option("--cutoffs", c.cutoffs, "Cutoff preset (intuitive, p25, p50) or JSON file")
        ->capture_default_str();
    cmd->add_option("--epoch-ms", c.epoch_ms, "Epoch length in milliseconds")
        ->capture_default_str();
}

PolicyConfig make_policy(const std::string& name, int inertia, const std::string& lag)
{
    auto policy = PolicyConfig::make(parse_policy(name), inertia);
    if (lag == "epoch" && policy.state_source == StateSource::previous_step)
        policy.state_source = StateSource::previous_epoch;
    return policy;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"State-aware heterogeneous multicore trace toolkit and simulator"};
    app.require_subcommand(1);

    // gen-trace
    Common gen;
    std::string weights_text;
    double self_prob = 0.84;
    std::size_t epochs = 100;
    std::string name = "synthetic";
    std::uint64_t seed = kDefaultReproSeed;
    std::size_t suite_count = 0;
    SuiteSpec suite;
    auto* gen_cmd = app.add_subcommand("gen-trace", "Generate synthetic traces");
    gen_cmd->add_option("--out", gen.out, "Output CSV file (or directory with --suite)")->required();
    gen_cmd->add_option("--cutoffs", gen.cutoffs, "Cutoffs the states are placed against")
        ->capture_default_str();
    gen_cmd->add_option("--epoch-ms", gen.epoch_ms)->capture_default_str();
    gen_cmd->add_option("--weights", weights_text, "16 comma-separated state weights (default uniform)");
    gen_cmd->add_option("--self-prob", self_prob, "Probability of staying in the same state")
        ->capture_default_str();
    gen_cmd->add_option("--epochs", epochs)->capture_default_str();
    gen_cmd->add_option("--name", name)->capture_default_str();
    gen_cmd->add_option("--seed", seed)->capture_default_str();
    gen_cmd->add_option("--suite", suite_count, "Write this many suite-like traces into --out");
    gen_cmd->add_option("--low-share", suite.low_share, "Suite: target share of state 0")
        ->capture_default_str();
    gen_cmd->add_option("--min-epochs", suite.min_epochs)->capture_default_str();
    gen_cmd->add_option("--max-epochs", suite.max_epochs)->capture_default_str();

    // classify
    Common cls;
    std::string metrics_text;
    auto* cls_cmd = app.add_subcommand("classify", "Classify epochs into behavioral states");
    add_traces_option(cls_cmd, cls, false);
    cls_cmd->add_option("--metrics", metrics_text,
                        "One record: branch_mispredict,l1i_mpki,l1d_miss,l2_miss");

    // derive-cutoffs
    Common der;
    double percentile = 0.5;
    auto* der_cmd = app.add_subcommand("derive-cutoffs", "Pooled percentile cutoffs");
    add_traces_option(der_cmd, der);
    der_cmd->add_option("--percentile", percentile)->capture_default_str();
    der_cmd->add_option("--out", der.out, "Write the cutoff JSON here");

    // characterization
    Common cov, tra, itv;
    bool include_diagonal = false;
    std::string buckets_text = "1,2,5,10,50";
    auto* cov_cmd = app.add_subcommand("coverage", "Share of epochs per state");
    add_traces_option(cov_cmd, cov);
    cov_cmd->add_option("--out", cov.out, "Output directory")->required();
    auto* tra_cmd = app.add_subcommand("transitions", "State transition shares");
    add_traces_option(tra_cmd, tra);
    tra_cmd->add_option("--out", tra.out, "Output directory")->required();
    tra_cmd->add_flag("--include-diagonal", include_diagonal, "Keep same-state transitions");
    auto* itv_cmd = app.add_subcommand("intervals", "Interval-length distributions");
    add_traces_option(itv_cmd, itv);
    itv_cmd->add_option("--out", itv.out, "Output directory")->required();
    itv_cmd->add_option("--buckets", buckets_text, "Bucket lower bounds")->capture_default_str();

    // enumerate-configs
    std::string levels_text = "0.1,0.2,0.3";
    std::string enum_out;
    auto* enum_cmd = app.add_subcommand("enumerate-configs", "List the chip design space");
    enum_cmd->add_option("--levels", levels_text, "Speedup levels")->capture_default_str();
    enum_cmd->add_option("--out", enum_out, "Also write the configs as JSON");

    // simulate / sweep shared parameters
    SimParams params;
    int inertia = kDefaultInertiaSchedulings;
    std::string lag = "step";
    auto add_sim_params = [&](CLI::App* cmd) {
        cmd->add_option("--lag", lag, "What non-oracle policies observe: step or epoch")
            ->check(CLI::IsMember({"step", "epoch"}))
            ->capture_default_str();
        cmd->add_option("--timestep-ms", params.timestep_ms)->capture_default_str();
        cmd->add_option("--horizon-ms", params.horizon_ms, "0 = longest trace")->capture_default_str();
        cmd->add_option("--seed", params.seed)->capture_default_str();
        cmd->add_option("--inertia-schedulings", inertia)->capture_default_str();
    };

    Common sim;
    std::string chip_spec = "canonical30";
    std::string policy_name = "greedy";
    bool log_events = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate one workload on one chip");
    add_traces_option(sim_cmd, sim);
    sim_cmd->add_option("--chip", chip_spec, "canonical30, realistic39 or JSON file")
        ->capture_default_str();
    sim_cmd->add_option("--policy", policy_name, "blind, greedy, inertia, oracle, oracle-inertia")
        ->capture_default_str();
    sim_cmd->add_option("--migration-cost-ms", params.migration_cost_ms)->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Output directory")->required();
    sim_cmd->add_flag("--log-events", log_events, "Write events.csv.gz");
    add_sim_params(sim_cmd);

    Common swp;
    std::vector<std::string> chip_specs{"canonical30"};
    std::vector<std::string> policy_names{"greedy"};
    std::string costs_text = "0";
    std::string format = "csv";
    bool per_trace = false;
    auto* swp_cmd = app.add_subcommand("sweep", "Cartesian sweep of chips, policies and costs");
    add_traces_option(swp_cmd, swp);
    swp_cmd->add_option("--chips", chip_specs, "Presets, JSON files or space:<levels>")
        ->capture_default_str();
    swp_cmd->add_option("--policies", policy_names)->capture_default_str();
    swp_cmd->add_option("--costs", costs_text, "Migration costs in ms")->capture_default_str();
    swp_cmd->add_flag("--per-trace", per_trace, "Run each trace alone instead of all together");
    swp_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    swp_cmd->add_option("--out", swp.out, "Output directory")->required();
    add_sim_params(swp_cmd);

    Common rep;
    std::string preset;
    std::string rep_format = "csv";
    std::uint64_t rep_seed = kDefaultReproSeed;
    auto* rep_cmd = app.add_subcommand("repro", "Run a named experiment preset");
    rep_cmd->add_option("preset", preset)
        ->required()
        ->check(CLI::IsMember(repro_presets()));
    add_traces_option(rep_cmd, rep, false);
    rep_cmd->add_option("--out", rep.out, "Output directory")->required();
    rep_cmd->add_option("--seed", rep_seed, "Seed for the synthetic workload when --traces is absent")
        ->capture_default_str();
    rep_cmd->add_option("--format", rep_format)->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            auto cutoffs = resolve_cutoffs(gen.cutoffs);
            if (suite_count > 0) {
                suite.count = suite_count;
                suite.self_transition_prob = self_prob;
                suite.seed = seed;
                fs::create_directories(gen.out);
                for (const auto& t : generate_suite(suite, cutoffs, gen.epoch_ms))
                    write_trace(fs::path(gen.out) / (t.name() + ".csv"), t);
            } else {
                SyntheticSpec spec;
                if (weights_text.empty()) {
                    spec.target_distribution.fill(1.0 / kStateCount);
                } else {
                    auto w = parse_double_list(weights_text);
                    if (w.size() != kStateCount)
                        throw DataError("--weights needs 16 values");
                    double sum = 0.0;
                    for (double x : w)
                        sum += x;
                    for (std::size_t s = 0; s < kStateCount; ++s)
                        spec.target_distribution[s] = w[s] / sum;
                }
                spec.self_transition_prob = self_prob;
                spec.epoch_count = epochs;
                spec.seed = seed;
                write_trace(fs::path(gen.out), generate_trace(spec, cutoffs, name, gen.epoch_ms));
            }
        } else if (*cls_cmd) {
            auto cutoffs = resolve_cutoffs(cls.cutoffs);
            if (!metrics_text.empty()) {
                auto v = parse_double_list(metrics_text);
                if (v.size() != 4)
                    throw DataError("--metrics needs 4 values");
                EpochRecord r{v[0], v[1], v[2], v[3]};
                validate(r);
                std::cout << label(classify(r, cutoffs)) << '\n';
            } else if (!cls.traces.empty()) {
                std::cout << "name,epoch_index,state,label\n";
                for (const auto& t : load(cls)) {
                    auto states = classify_trace(t, cutoffs);
                    for (std::size_t i = 0; i < states.size(); ++i)
                        std::cout << t.name() << ',' << i << ',' << states[i].code() << ','
                                  << label(states[i]) << '\n';
                }
            } else {
                throw DataError("classify needs --traces or --metrics");
            }
        } else if (*der_cmd) {
            auto json = cutoffs_to_json(derive_percentile_cutoffs(load(der), percentile));
            if (!der.out.empty())
                write_text(der.out, json + "\n");
            std::cout << json << '\n';
        } else if (*cov_cmd) {
            std::ostringstream out;
            write_coverage_csv(out, coverage(load(cov), resolve_cutoffs(cov.cutoffs)));
            write_text(fs::path(cov.out) / "coverage.csv", out.str());
        } else if (*tra_cmd) {
            auto traces = load(tra);
            auto cutoffs = resolve_cutoffs(tra.cutoffs);
            std::vector<std::string> skipped;
            auto m = transitions(traces, cutoffs, &skipped);
            for (const auto& s : skipped)
                std::cerr << "warning: trace '" << s << "' has fewer than 2 epochs; excluded\n";
            std::ostringstream out;
            write_transitions_csv(out, traces, cutoffs, !include_diagonal);
            write_text(fs::path(tra.out) / "transitions.csv", out.str());
            if (m.total() > 0)
                std::cout << "diagonal_share,"
                          << format_double(static_cast<double>(m.diagonal()) /
                                           static_cast<double>(m.total()))
                          << '\n';
        } else if (*itv_cmd) {
            auto traces = load(itv);
            auto cutoffs = resolve_cutoffs(itv.cutoffs);
            IntervalBuckets buckets;
            buckets.lower_bounds.clear();
            for (double b : parse_double_list(buckets_text))
                buckets.lower_bounds.push_back(static_cast<std::size_t>(b));
            std::ostringstream out, means;
            write_intervals_csv(out, traces, cutoffs, buckets);
            write_interval_means_csv(means, traces, cutoffs);
            write_text(fs::path(itv.out) / "intervals.csv", out.str());
            write_text(fs::path(itv.out) / "interval_means.csv", means.str());
        } else if (*enum_cmd) {
            auto levels = parse_double_list(levels_text);
            auto configs = enumerate_design_space(levels);
            for (const auto& c : configs)
                std::cout << c.name << '\n';
            std::cerr << configs.size() << " configurations\n";
            if (!enum_out.empty()) {
                std::string json = "[\n";
                for (std::size_t i = 0; i < configs.size(); ++i)
                    json += "{\"name\": \"" + configs[i].name + "\", \"cores\": " +
                            chip_to_json(configs[i]) + (i + 1 < configs.size() ? "},\n" : "}\n");
                json += "]\n";
                write_text(enum_out, json);
            }
        } else if (*sim_cmd) {
            auto traces = load(sim);
            params.epoch_ms = sim.epoch_ms;
            auto policy = make_policy(policy_name, inertia, lag);
            auto out = simulate(traces, resolve_chip(chip_spec), policy,
                                resolve_cutoffs(sim.cutoffs), params);
            write_text(fs::path(sim.out) / "result.json", result_to_json(out.result) + "\n");
            if (log_events)
                write_events_csv_gz(fs::path(sim.out) / "events.csv.gz", out.log);
            std::cout << "system_speedup," << format_double(out.result.system_speedup) << '\n';
        } else if (*swp_cmd) {
            auto traces = load(swp);
            params.epoch_ms = swp.epoch_ms;
            std::vector<Workload> workloads;
            if (per_trace)
                for (const auto& t : traces)
                    workloads.push_back(Workload{t.name(), {t}});
            else
                workloads.push_back(Workload{"all", traces});
            std::vector<PolicyConfig> policies;
            for (const auto& p : policy_names)
                policies.push_back(make_policy(p, inertia, lag));
            auto costs = parse_double_list(costs_text);
            auto chips = resolve_chips(chip_specs);
            auto rows = sweep(workloads, chips, policies, costs, resolve_cutoffs(swp.cutoffs),
                              params);
            std::ostringstream out;
            if (format == "json")
                write_sweep_json(out, rows);
            else
                write_sweep_csv(out, rows);
            write_text(fs::path(swp.out) / ("sweep." + format), out.str());
        } else if (*rep_cmd) {
            auto cutoffs = resolve_cutoffs(rep.cutoffs);
            std::vector<Trace> traces;
            if (rep.traces.empty()) {
                SuiteSpec s;
                s.seed = rep_seed;
                traces = generate_suite(s, cutoffs, rep.epoch_ms);
            } else {
                traces = load(rep);
            }
            ReproOptions opt;
            opt.cutoffs = cutoffs;
            opt.params.epoch_ms = rep.epoch_ms;
            opt.params.seed = rep_seed;
            opt.json = rep_format == "json";
            write_files(rep.out, run_repro(preset, traces, opt));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
