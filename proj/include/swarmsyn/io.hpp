#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmsyn/params.hpp"
#include "swarmsyn/record.hpp"

namespace swarmsyn {

using json = nlohmann::ordered_json;

inline constexpr const char* kTrajectoryHeader = "t,robot_id,x,y,theta,state,v,omega,goal_x,goal_y";
inline constexpr const char* kTrajectoryFile = "trajectory.csv";
inline constexpr const char* kSummaryFile = "summary.json";

/// Infinite sensing range is written as the string "inf".
json params_json(const Params& params);
Params params_from_json(const json& j);

/// Per-run summary: seed, synergy_time (null when not converged), community
/// counts at linkage R and 2 D_g, members, outliers, min distance, warnings
/// and the full parameter set.
json summary_json(const RunRecord& record, const std::string& scenario);

/// Snapshots as CSV rows, preceded by '#' lines naming scenario, seed and
/// parameters.
void write_trajectory_csv(std::ostream& out, const RunRecord& record, const std::string& scenario);

/// Inverse of write_trajectory_csv for the pose/state/command columns.
/// Throws std::runtime_error on a malformed row.
std::vector<Snapshot> read_trajectory_csv(std::istream& in);

/// Writes trajectory.csv and summary.json into `dir` (created if needed).
void write_run(const std::filesystem::path& dir, const RunRecord& record, const std::string& scenario,
               bool with_trajectory = true);

/// A run read back from disk. Snapshots are empty unless requested and the
/// trajectory file exists.
struct LoadedRun {
    std::filesystem::path dir;
    std::string scenario;
    RunRecord record;
    bool has_trajectory = false;
};

LoadedRun load_run(const std::filesystem::path& summary_path, bool with_trajectory);

/// Every summary.json under `root` (recursively), sorted by path.
std::vector<std::filesystem::path> find_summaries(const std::filesystem::path& root);

}  // namespace swarmsyn
