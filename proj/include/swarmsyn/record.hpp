#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarmsyn/controller.hpp"
#include "swarmsyn/geometry.hpp"
#include "swarmsyn/navigation.hpp"
#include "swarmsyn/params.hpp"

namespace swarmsyn {

using RobotId = std::size_t;

/// State of one robot at a control instant: pose before integration, the
/// decision taken from it and the command sent.
struct RobotSample {
    Pose pose;
    StateTag state = StateTag::S3;
    VelocityCommand cmd;
    Vec2 goal;  // current goal expressed in the global frame
};

struct Snapshot {
    double t = 0.0;
    std::vector<RobotSample> robots;
};

struct Community {
    std::vector<RobotId> members;  // ascending
    Vec2 centroid;
    double diameter = 0.0;
};

/// Communities plus everything not in one (undersized groups, moving robots).
struct Partition {
    std::vector<Community> communities;  // ordered by smallest member
    std::vector<RobotId> outliers;       // ascending
};

struct RunRecord {
    Params params;
    std::uint64_t seed = 0;
    std::vector<Snapshot> snapshots;  // strictly increasing t
    std::optional<double> synergy_time;
    double t_end = 0.0;
    std::vector<Pose> final_poses;
    std::vector<bool> final_stopped;
    Partition final_partition;
    double min_interrobot_distance = 0.0;
    bool lemma_violated = false;
    std::vector<std::string> warnings;
    std::vector<std::string> events;

    bool converged() const { return synergy_time.has_value(); }
    std::size_t swarm_size() const { return final_poses.size(); }
};

}  // namespace swarmsyn
