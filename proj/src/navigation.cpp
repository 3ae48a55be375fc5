#include "swarmsyn/navigation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmsyn {

double linear_velocity(double d_min, bool engaged, double v_at_engage, double t, double t_e,
                       const Params& params) {
    if (d_min > params.safe_distance) return params.v_max;
    const double v0 = engaged ? v_at_engage : params.v_max;
    return std::max(v0 - (t - t_e) * params.decel, 0.0);
}

double angular_velocity(double heading_error, double nearest_bearing, double d_min,
                        const Params& params) {
    if (d_min > params.safe_distance) return params.turn_gain * sgn(heading_error);
    return params.avoid_turn_gain * sgn(heading_error) - params.avoid_gain * sgn(nearest_bearing);
}

Pose integrate_unicycle(const Pose& pose, const VelocityCommand& cmd, double dt) {
    return {pose.x + cmd.v * std::cos(pose.theta) * dt,
            pose.y + cmd.v * std::sin(pose.theta) * dt,
            wrap_angle(pose.theta + cmd.omega * dt)};
}

std::optional<Threat> wall_repulsion(const Pose& pose, const Rect& env, const Params& params) {
    if (!env.contains(pose.position())) throw std::out_of_range("wall_repulsion: pose outside arena");
    // Nearest point on each wall; ties resolve in the order listed.
    const std::array<Vec2, 4> wall_points{{
        {env.x_min, pose.y},
        {env.x_max, pose.y},
        {pose.x, env.y_min},
        {pose.x, env.y_max},
    }};
    const Vec2* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& w : wall_points) {
        const double d = distance(w, pose.position());
        if (d < best_d) {
            best_d = d;
            best = &w;
        }
    }
    if (best_d > params.safe_distance) return std::nullopt;
    const double bearing = wrap_angle(std::atan2(best->y - pose.y, best->x - pose.x) - pose.theta);
    return Threat{best_d, bearing};
}

std::optional<Threat> nearest_threat(const std::optional<PolarReading>& robot, const std::optional<Threat>& wall) {
    std::optional<Threat> best = wall;
    if (robot && (!best || robot->distance < best->distance)) best = Threat{robot->distance, robot->bearing};
    return best;
}

VelocityCommand navigate(AgentState& agent, const std::optional<Threat>& threat, double t,
                         const Params& params) {
    if (agent.stopped) {
        agent.engaged = false;
        agent.last_v = 0.0;
        return {};
    }
    const double d_min = threat ? threat->distance : std::numeric_limits<double>::infinity();
    const double nearest_bearing = threat ? threat->bearing : 0.0;

    if (d_min <= params.safe_distance) {
        if (!agent.engaged) {
            agent.engaged = true;
            agent.engaged_at = t;
            // A robot leaving rest is commanded v_max before braking applies.
            agent.v_at_engage = agent.last_v > 0.0 ? agent.last_v : params.v_max;
        }
    } else {
        agent.engaged = false;
    }

    const double heading_error = std::atan2(agent.goal_local.y, agent.goal_local.x);
    VelocityCommand cmd{
        linear_velocity(d_min, agent.engaged, agent.v_at_engage, t, agent.engaged_at, params),
        angular_velocity(heading_error, nearest_bearing, d_min, params)};
    agent.last_v = cmd.v;
    return cmd;
}

}  // namespace swarmsyn
