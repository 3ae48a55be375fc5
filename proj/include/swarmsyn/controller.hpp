#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "swarmsyn/geometry.hpp"
#include "swarmsyn/params.hpp"
#include "swarmsyn/rng.hpp"
#include "swarmsyn/sensing.hpp"

namespace swarmsyn {

/// S1: member of a community (stopped). S2: forming a community (has
/// neighbours). S3: wandering (no neighbours).
enum class StateTag { S1, S2, S3 };

std::string_view to_string(StateTag tag);

/// Where the current goal came from.
enum class GoalSource {
    None,
    Wander,    // sampled because nobody is in view
    Centroid,  // centroid of self and neighbours
    Escape,    // sampled because an undersized group reached its centroid
    Hold,      // community formed, goal is the robot itself
};

struct AgentState {
    StateTag state = StateTag::S3;
    Vec2 goal_local;                   // goal in the robot frame
    std::optional<Vec2> wander_goal;   // global point kept by odometry
    GoalSource goal_source = GoalSource::None;
    bool stopped = false;

    // Avoidance bookkeeping for the linear velocity law.
    bool engaged = false;
    double engaged_at = 0.0;
    double v_at_engage = 0.0;
    double last_v = 0.0;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Community-size test on the neighbour count. Returns S3 for an empty set,
/// S2 while |N| + 1 < M and S1 when the size condition holds; S1 is only
/// entered by decide() once the goal-reached test also passes.
StateTag classify_state(std::size_t neighbor_count, int min_community_size);

/// Centroid of the neighbours and the robot itself (the origin of its own
/// frame). Throws std::invalid_argument on an empty set.
Vec2 centroid_goal(const NeighborSet& neighbors);

/// Uniform point in `bounds`.
Vec2 sample_wander_goal(const Rect& bounds, RandomStream& rng);

/// One pass of the per-robot decision loop. `odometry` is the pose used to
/// keep wander goals in a persistent frame; the centroid goal never touches it.
AgentState decide(const AgentState& agent, const NeighborSet& neighbors, const Pose& odometry,
                  const Params& params, RandomStream& rng);

}  // namespace swarmsyn
