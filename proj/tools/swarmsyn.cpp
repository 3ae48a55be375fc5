// swarmsyn: run, sweep and report decentralized community-formation runs.
//
//   swarmsyn run    --scenario scenarios/flagship.yaml --seed 7 --out runs
//   swarmsyn sweep  --scenario scenarios/flagship.yaml --sweep specific_area=7.2,20,53.3 --repeats 5
//   swarmsyn report runs/flagship
//   swarmsyn check  --scenario scenarios/lemma_violation.yaml
//
// Exit codes: 0 ok / converged, 2 run hit t_max without converging,
// 1 configuration or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "swarmsyn/analysis.hpp"
#include "swarmsyn/engine.hpp"
#include "swarmsyn/experiment.hpp"
#include "swarmsyn/io.hpp"
#include "swarmsyn/report.hpp"
#include "swarmsyn/scenario.hpp"

namespace fs = std::filesystem;
using namespace swarmsyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNotConverged = 2;

fs::path default_out() {
    if (const char* env = std::getenv("SWARMSYN_OUT"); env && *env) return env;
    return "runs";
}

Scenario load_or_default(const std::string& path) {
    return path.empty() ? default_scenario() : load_scenario(path);
}

// Prints diagnostics; true when any is an error.
bool report_diagnostics(const Scenario& s) {
    const auto diags = check_params(s.params, s.swarm_size);
    for (const auto& d : diags) std::cerr << fmt::format("{} [{}] {}\n", to_string(d.severity), d.code, d.message);
    return has_errors(diags);
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed, const fs::path& out) {
    const Scenario s = load_or_default(scenario_path);
    if (report_diagnostics(s)) return kExitConfig;
    const std::uint64_t used = seed.value_or(s.params.seed);
    const RunRecord record = run_scenario(s, used);
    const fs::path dir = out / s.name / fmt::format("seed{}", used);
    write_run(dir, record, s.name);

    std::cout << fmt::format("{} seed {}: ", s.name, used);
    if (record.converged())
        std::cout << fmt::format("converged at ST {:.1f} s, {} communities {}\n", *record.synergy_time,
                                 record.final_partition.communities.size(), membership_string(record.final_partition));
    else
        std::cout << fmt::format("no synergy by t_max = {:.0f} s ({} communities at stop)\n", record.params.t_max,
                                 record.final_partition.communities.size());
    std::cout << fmt::format("min inter-robot distance {:.3f} m\nwrote {}\n", record.min_interrobot_distance, dir.string());
    return record.converged() ? kExitOk : kExitNotConverged;
}

int cmd_sweep(ExperimentSpec spec, const std::string& scenario_path, const std::string& sweep_text) {
    spec.base = load_or_default(scenario_path);
    if (!sweep_text.empty()) spec.sweep = parse_sweep_axis(sweep_text);
    validate(spec);
    if (report_diagnostics(spec.base)) return kExitConfig;

    const auto rows = run_experiment(spec, [](const SweepRow& r) {
        if (!r.error.empty())
            std::cerr << fmt::format("value {} run {} seed {}: FAILED {}\n", r.param_value, r.run, r.seed, r.error);
        else
            std::cerr << fmt::format("value {} run {} seed {}: {} communities, ST {}\n", r.param_value, r.run, r.seed,
                                     r.n_communities,
                                     r.synergy_time ? fmt::format("{:.1f}", *r.synergy_time) : std::string("-"));
    });
    const fs::path root = spec.out / spec.base.name;
    fs::create_directories(root);
    const std::string stem = spec.sweep ? "sweep_" + spec.sweep->name : std::string("batch");
    {
        std::ofstream f(root / (stem + ".csv"));
        write_sweep_csv(f, rows);
    }
    const auto points = aggregate(rows);
    {
        std::ofstream f(root / (stem + "_summary.csv"));
        write_sweep_summary_csv(f, points);
    }
    write_sweep_summary_csv(std::cout, points);
    std::cerr << fmt::format("wrote {}\n", (root / (stem + ".csv")).string());
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<LoadedRun> runs;
    for (const auto& in : inputs)
        for (const auto& p : find_summaries(in)) runs.push_back(load_run(p, true));
    if (runs.empty()) {
        std::cerr << "report: no summary.json found\n";
        return kExitConfig;
    }
    const json report = build_report(runs);
    const std::string text = report_text(report);
    std::cout << text;
    const fs::path dir = out.empty() ? fs::path(inputs.front()) : fs::path(out);
    if (fs::is_directory(dir) || !out.empty()) {
        fs::create_directories(dir);
        std::ofstream(dir / "report.json") << report.dump(2) << '\n';
        std::ofstream(dir / "report.txt") << text;
    }
    return kExitOk;
}

int cmd_check(const std::string& scenario_path) {
    const Scenario s = load_or_default(scenario_path);
    const auto diags = check_params(s.params, s.swarm_size);
    for (const auto& d : diags) std::cout << fmt::format("{} [{}] {}\n", to_string(d.severity), d.code, d.message);
    if (diags.empty()) std::cout << "no diagnostics\n";
    return has_errors(diags) ? kExitConfig : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized swarm community formation: runs, sweeps and reports"};
    app.require_subcommand(1);

    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out = default_out().string();

    auto* run = app.add_subcommand("run", "one seeded run; writes trajectory.csv and summary.json");
    run->add_option("--scenario", scenario, "scenario YAML (default: flagship)");
    run->add_option("--seed", seed, "seed (default: scenario seed)");
    run->add_option("--out", out, "output root (env SWARMSYN_OUT)");

    ExperimentSpec spec;
    std::string sweep_text;
    std::uint64_t seed_base = 0;
    auto* sweep = app.add_subcommand("sweep", "seeded batch, optionally over one parameter");
    sweep->add_option("--scenario", scenario, "scenario YAML (default: flagship)");
    sweep->add_option("--sweep", sweep_text, "param=v1,v2,...  params: " + [] {
        std::string names;
        for (const auto& n : override_names()) names += (names.empty() ? "" : ", ") + n;
        return names;
    }());
    sweep->add_option("--repeats", spec.repeats, "runs per value")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed_base, "seed of run 0; run k uses seed + k");
    sweep->add_option("--workers", spec.workers, "concurrent runs")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out, "output root (env SWARMSYN_OUT)");
    bool summaries_only = false;
    sweep->add_flag("--no-trajectories", summaries_only, "write summary.json only");

    std::vector<std::string> inputs;
    std::string report_out;
    auto* report = app.add_subcommand("report", "membership, community-size and untraceability tables");
    report->add_option("inputs", inputs, "run directories or summary files")->required();
    report->add_option("--out", report_out, "where report.json/.txt go (default: first input)");

    auto* check = app.add_subcommand("check", "parameter diagnostics only");
    check->add_option("--scenario", scenario, "scenario YAML (default: flagship)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(scenario, seed, out);
        if (*sweep) {
            spec.seed_base = seed_base;
            spec.out = out;
            spec.write_trajectories = !summaries_only;
            return cmd_sweep(spec, scenario, sweep_text);
        }
        if (*report) return cmd_report(inputs, report_out);
        if (*check) return cmd_check(scenario);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
