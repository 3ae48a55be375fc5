#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmsyn/record.hpp"
#include "swarmsyn/scenario.hpp"

namespace swarmsyn {

/// Runs fn(0) .. fn(n-1) on up to `workers` threads. The first exception
/// thrown by fn is rethrown after all workers have joined.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// One seeded run of a scenario; `seed` replaces params.seed.
RunRecord run_scenario(const Scenario& scenario, std::uint64_t seed);

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

/// Parses "name=v1,v2,...". Throws std::invalid_argument.
SweepAxis parse_sweep_axis(std::string_view text);

struct ExperimentSpec {
    Scenario base;
    std::optional<SweepAxis> sweep;
    std::size_t repeats = 1;
    std::uint64_t seed_base = 0;
    std::filesystem::path out;  // empty: nothing written
    std::size_t workers = 1;
    bool write_trajectories = true;
};

/// Throws std::invalid_argument when repeats is 0 or a sweep value is not
/// acceptable for its parameter.
void validate(const ExperimentSpec& spec);

/// One row of the sweep CSV.
struct SweepRow {
    double param_value = 0.0;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::optional<double> synergy_time;
    std::size_t n_communities = 0;
    std::size_t swarm_size = 0;
    int min_community_size = 0;
    double t_max = 0.0;
    double min_interrobot_distance = 0.0;
    std::string error;  // non-empty when the run itself failed
};

/// Per-value aggregate. Runs that did not converge enter the ST median at
/// t_max (a lower bound); the deviation uses converged runs only.
struct SweepPoint {
    double param_value = 0.0;
    std::size_t runs = 0;
    std::size_t converged = 0;
    double st_median = 0.0;
    double st_stddev = 0.0;
    double communities_median = 0.0;
    double communities_stddev = 0.0;
};

/// Runs every (value, repeat) pair with seed = seed_base + repeat, writing
/// each run under `out` when set. A run that throws is recorded with its
/// error and the batch continues. Rows come back in (value, repeat) order.
std::vector<SweepRow> run_experiment(const ExperimentSpec& spec,
                                     const std::function<void(const SweepRow&)>& progress = {});

/// Directory of one run below the experiment root.
std::filesystem::path run_directory(const ExperimentSpec& spec, std::size_t value_index, std::size_t repeat);

std::vector<SweepPoint> aggregate(const std::vector<SweepRow>& rows);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_summary_csv(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace swarmsyn
