#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsyn/geometry.hpp"
#include "swarmsyn/params.hpp"
#include "swarmsyn/record.hpp"
#include "swarmsyn/stats.hpp"

namespace swarmsyn {

/// Connected components of stopped robots, linked when their distance is at
/// most `link_distance` (defaults to the sensing range). Components smaller
/// than M and moving robots become outliers.
Partition detect_communities(std::span<const Pose> poses, const std::vector<bool>& stopped,
                             const Params& params);
Partition detect_communities(std::span<const Pose> poses, const std::vector<bool>& stopped,
                             const Params& params, double link_distance);

/// Start of the all-S1 streak that lasts at least hold_window and runs to
/// the end of the record; nullopt if there is none.
std::optional<double> synergy_time(const RunRecord& record);

class UndefinedMetric : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Smallest, over member triples, of the largest distance from a member to
/// the triple's total-least-squares line. 0 means three members are exactly
/// collinear. Throws UndefinedMetric for fewer than three members.
double collinearity_residual(const Community& community, std::span<const Pose> poses);

/// Arena area per robot.
double swarm_specific_area(double env_area, std::size_t swarm_size);

/// FoV sector area (Delta * R^2) as a percentage of the swarm specific area.
double percentage_sensing_area(const Params& params, double env_area, std::size_t swarm_size);

/// One cluster label per robot; outliers get singleton labels.
std::vector<std::size_t> partition_labels(const Partition& partition, std::size_t swarm_size);

/// Rand index between two partitions of the same robot set, in [0, 1].
double rand_index(const Partition& a, const Partition& b, std::size_t swarm_size);

/// Canonical text form, e.g. "{0,2,5} {1,3,4}". Outliers are omitted.
std::string membership_string(const Partition& partition);

/// Robot `id`'s position linearly interpolated at `count` equally spaced
/// instants over [0, t_end].
std::vector<Vec2> resample_track(const RunRecord& record, RobotId id, std::size_t count, double t_end);

struct RobotTraceability {
    RobotId id = 0;
    AnovaResult x;
    AnovaResult y;
    double min_p = 1.0;
};

struct RandPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double index = 1.0;
};

struct UntraceabilityReport {
    std::size_t swarm_size = 0;
    std::size_t runs = 0;
    std::size_t converged_runs = 0;
    bool inconclusive = false;
    std::string notice;
    double horizon = 0.0;  // resampling window [0, horizon]
    std::vector<RobotTraceability> robots;
    std::vector<std::uint64_t> seeds;
    std::vector<Partition> partitions;
    std::vector<RandPair> rand_indices;
    std::size_t distinct_partitions = 0;
};

inline constexpr std::size_t kTrackSamples = 100;

/// Per-robot ANOVA across runs on resampled x and y tracks plus partition
/// variability. Needs >= 2 records of equal swarm size (std::invalid_argument
/// otherwise); fewer than two converged records marks the report inconclusive.
UntraceabilityReport untraceability_report(std::span<const RunRecord> records);

/// p-values below this are shown as 0.00.
inline constexpr double kReportedZeroP = 1e-12;

}  // namespace swarmsyn
