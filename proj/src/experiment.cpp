#include "swarmsyn/experiment.hpp"

#include <atomic>
#include <algorithm>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "swarmsyn/engine.hpp"
#include "swarmsyn/io.hpp"
#include "swarmsyn/stats.hpp"

namespace swarmsyn {

namespace fs = std::filesystem;

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

RunRecord run_scenario(const Scenario& scenario, std::uint64_t seed) {
    Params params = scenario.params;
    params.seed = seed;
    RunOptions options;
    options.record_stride = scenario.record_stride;
    return run(params, initial_poses(scenario, seed), scenario.spawns, options);
}

SweepAxis parse_sweep_axis(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw std::invalid_argument(fmt::format("sweep '{}': expected name=v1,v2,...", text));
    SweepAxis axis;
    axis.name = std::string(text.substr(0, eq));
    std::string_view rest = text.substr(eq + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string item(rest.substr(0, comma));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw std::invalid_argument(fmt::format("sweep '{}': '{}' is not a number", axis.name, item));
        axis.values.push_back(v);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (axis.values.empty()) throw std::invalid_argument(fmt::format("sweep '{}': no values", axis.name));
    return axis;
}

void validate(const ExperimentSpec& spec) {
    if (spec.repeats == 0) throw std::invalid_argument("repeats must be >= 1");
    if (!spec.sweep) return;
    for (double v : spec.sweep->values) {
        Scenario copy = spec.base;
        apply_override(copy, spec.sweep->name, v);
    }
}

namespace {

std::string value_label(double v) { return fmt::format("{}", v); }

}  // namespace

fs::path run_directory(const ExperimentSpec& spec, std::size_t value_index, std::size_t repeat) {
    fs::path dir = spec.out / spec.base.name;
    if (spec.sweep) dir /= fmt::format("{}={}", spec.sweep->name, value_label(spec.sweep->values.at(value_index)));
    return dir / fmt::format("run{:03d}_seed{}", repeat, spec.seed_base + repeat);
}

std::vector<SweepRow> run_experiment(const ExperimentSpec& spec, const std::function<void(const SweepRow&)>& progress) {
    validate(spec);
    const std::size_t n_values = spec.sweep ? spec.sweep->values.size() : 1;
    std::vector<SweepRow> rows(n_values * spec.repeats);
    std::mutex progress_mutex;

    parallel_for(rows.size(), spec.workers, [&](std::size_t job) {
        const std::size_t vi = job / spec.repeats;
        const std::size_t rep = job % spec.repeats;
        Scenario scenario = spec.base;
        SweepRow& row = rows[job];
        row.run = rep;
        row.seed = spec.seed_base + rep;
        if (spec.sweep) {
            row.param_value = spec.sweep->values[vi];
            apply_override(scenario, spec.sweep->name, row.param_value);
        }
        row.swarm_size = scenario.swarm_size;
        row.min_community_size = scenario.params.min_community_size;
        row.t_max = scenario.params.t_max;
        try {
            const RunRecord record = run_scenario(scenario, row.seed);
            row.synergy_time = record.synergy_time;
            row.n_communities = record.final_partition.communities.size();
            row.min_interrobot_distance = record.min_interrobot_distance;
            if (!spec.out.empty())
                write_run(run_directory(spec, vi, rep), record, scenario.name, spec.write_trajectories);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        if (progress) {
            std::lock_guard lock(progress_mutex);
            progress(row);
        }
    });
    return rows;
}

std::vector<SweepPoint> aggregate(const std::vector<SweepRow>& rows) {
    std::vector<SweepPoint> points;
    std::size_t i = 0;
    while (i < rows.size()) {
        SweepPoint pt;
        pt.param_value = rows[i].param_value;
        std::vector<double> st_all, st_conv, comm;
        for (; i < rows.size() && rows[i].param_value == pt.param_value; ++i) {
            const auto& r = rows[i];
            if (!r.error.empty()) continue;
            ++pt.runs;
            comm.push_back(static_cast<double>(r.n_communities));
            if (r.synergy_time) {
                ++pt.converged;
                st_conv.push_back(*r.synergy_time);
                st_all.push_back(*r.synergy_time);
            } else {
                st_all.push_back(r.t_max);
            }
        }
        if (!st_all.empty()) pt.st_median = median(st_all);
        if (st_conv.size() > 1) pt.st_stddev = stddev(st_conv);
        if (!comm.empty()) pt.communities_median = median(comm);
        if (comm.size() > 1) pt.communities_stddev = stddev(comm);
        points.push_back(pt);
    }
    return points;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param_value,run,seed,synergy_time,n_communities\n";
    for (const auto& r : rows) {
        const std::string st = r.synergy_time ? fmt::format("{:.1f}", *r.synergy_time) : "";
        const std::string nc = r.error.empty() ? fmt::format("{}", r.n_communities) : "";
        out << fmt::format("{},{},{},{},{}\n", r.param_value, r.run, r.seed, st, nc);
    }
}

void write_sweep_summary_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
    out << "param_value,runs,converged,st_median,st_stddev,communities_median,communities_stddev\n";
    for (const auto& p : points)
        out << fmt::format("{},{},{},{:.1f},{:.1f},{},{:.3f}\n", p.param_value, p.runs, p.converged, p.st_median,
                           p.st_stddev, p.communities_median, p.communities_stddev);
}

}  // namespace swarmsyn
