#pragma once

#include <optional>

#include "swarmsyn/controller.hpp"
#include "swarmsyn/geometry.hpp"
#include "swarmsyn/params.hpp"
#include "swarmsyn/sensing.hpp"

namespace swarmsyn {

struct VelocityCommand {
    double v = 0.0;
    double omega = 0.0;
    friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

/// Closest thing to avoid, in the robot frame.
struct Threat {
    double distance = 0.0;
    double bearing = 0.0;
};

/// v_max while clear of threats, otherwise a linear decay from the speed
/// held at engagement, floored at zero.
double linear_velocity(double d_min, bool engaged, double v_at_engage, double t, double t_e,
                       const Params& params);

/// Bang-bang steering toward the goal; inside the safe distance the turn away
/// from the threat is superimposed. sgn(0) = 0.
double angular_velocity(double heading_error, double nearest_bearing, double d_min,
                        const Params& params);

/// Explicit Euler step of the unicycle model.
Pose integrate_unicycle(const Pose& pose, const VelocityCommand& cmd, double dt);

/// Nearest wall point as a virtual neighbour when it is within the safe
/// distance. Throws std::out_of_range for a pose outside `env_bounds`.
std::optional<Threat> wall_repulsion(const Pose& pose, const Rect& env_bounds, const Params& params);

/// Nearer of the robot and wall contacts.
std::optional<Threat> nearest_threat(const std::optional<PolarReading>& robot, const std::optional<Threat>& wall);

/// Produces the command for one control step and updates the engagement
/// bookkeeping in `agent`. Stopped robots get (0, 0).
VelocityCommand navigate(AgentState& agent, const std::optional<Threat>& threat, double t,
                         const Params& params);

}  // namespace swarmsyn
