#include "swarmsyn/controller.hpp"

#include <stdexcept>

namespace swarmsyn {

std::string_view to_string(StateTag tag) {
    switch (tag) {
        case StateTag::S1: return "S1";
        case StateTag::S2: return "S2";
        case StateTag::S3: return "S3";
    }
    return "?";
}

StateTag classify_state(std::size_t neighbor_count, int min_community_size) {
    if (neighbor_count == 0) return StateTag::S3;
    if (static_cast<long long>(neighbor_count) + 1 >= min_community_size) return StateTag::S1;
    return StateTag::S2;
}

Vec2 centroid_goal(const NeighborSet& neighbors) {
    if (neighbors.empty()) throw std::invalid_argument("centroid_goal: empty neighbor set");
    Vec2 sum;
    for (const auto& o : neighbors) sum = sum + o.local;
    return (1.0 / static_cast<double>(neighbors.size() + 1)) * sum;
}

Vec2 sample_wander_goal(const Rect& bounds, RandomStream& rng) {
    const double x = rng.uniform(bounds.x_min, bounds.x_max);
    const double y = rng.uniform(bounds.y_min, bounds.y_max);
    return {x, y};
}

namespace {

bool wander_goal_reached(const AgentState& a, const Pose& odometry, double goal_radius) {
    return a.wander_goal && distance(*a.wander_goal, odometry.position()) <= goal_radius;
}

void head_for_wander_goal(AgentState& a, const Pose& odometry) {
    a.goal_local = to_local(odometry, *a.wander_goal);
    a.stopped = false;
}

}  // namespace

AgentState decide(const AgentState& agent, const NeighborSet& neighbors, const Pose& odometry,
                  const Params& params, RandomStream& rng) {
    AgentState next = agent;
    const std::size_t n = neighbors.size();
    const StateTag size_class = classify_state(n, params.min_community_size);

    if (n == 0) {
        // Keep the current wander goal (from wandering or an earlier escape)
        // until it is reached.
        if (!agent.wander_goal || wander_goal_reached(agent, odometry, params.goal_radius))
            next.wander_goal = sample_wander_goal(params.goal_bounds, rng);
        next.goal_source = GoalSource::Wander;
        next.state = StateTag::S3;
        head_for_wander_goal(next, odometry);
        return next;
    }

    // A community member stays put while the size condition holds. Centroid
    // drift caused by robots still on the move does not release it.
    if (agent.stopped && size_class == StateTag::S1) {
        next.state = StateTag::S1;
        return next;
    }

    const Vec2 goal = centroid_goal(neighbors);
    if (goal.norm() <= params.goal_radius) {
        if (size_class == StateTag::S1) {
            next.goal_local = {0.0, 0.0};
            next.goal_source = GoalSource::Hold;
            next.state = StateTag::S1;
            next.stopped = true;
            return next;
        }
        // Undersized group at its centroid: leave for a random goal. An escape
        // already under way keeps its goal until it is reached.
        const bool escaping = agent.goal_source == GoalSource::Escape &&
                              !wander_goal_reached(agent, odometry, params.goal_radius);
        if (!escaping) next.wander_goal = sample_wander_goal(params.goal_bounds, rng);
        next.goal_source = GoalSource::Escape;
        next.state = StateTag::S2;
        head_for_wander_goal(next, odometry);
        return next;
    }

    next.goal_local = goal;
    next.goal_source = GoalSource::Centroid;
    next.state = StateTag::S2;
    next.stopped = false;
    return next;
}

}  // namespace swarmsyn
