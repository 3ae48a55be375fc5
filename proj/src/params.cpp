#include "swarmsyn/params.hpp"

#include <cmath>
#include <numbers>

namespace swarmsyn {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParams(what);
}

bool positive(double v) { return v > 0.0 && !std::isnan(v); }

}  // namespace

void validate(const Params& p) {
    require(positive(p.sensing_range), "sensing_range must be > 0");
    require(p.fov_half_angle > 0.0 && p.fov_half_angle <= std::numbers::pi,
            "fov_half_angle must lie in (0, pi]");
    require(positive(p.safe_distance), "safe_distance must be > 0");
    require(positive(p.goal_radius), "goal_radius must be > 0");
    require(p.min_community_size >= 2, "min_community_size must be >= 2");
    require(positive(p.v_max), "v_max must be > 0");
    require(p.turn_gain >= 0.0 && p.avoid_turn_gain >= 0.0 && p.avoid_gain >= 0.0,
            "turn gains must be >= 0");
    require(p.decel >= 0.0, "decel must be >= 0");
    require(positive(p.dt) && std::isfinite(p.dt), "dt must be > 0");
    require(positive(p.t_max), "t_max must be > 0");
    require(p.hold_window >= 0.0, "hold_window must be >= 0");
    require(positive(p.body_radius), "body_radius must be > 0");
    require(positive(p.env_bounds.width()) && positive(p.env_bounds.height()),
            "env_bounds must have positive extent");
    require(p.goal_bounds.width() >= 0.0 && p.goal_bounds.height() >= 0.0,
            "goal_bounds must not be inverted");
    require(p.env_bounds.contains(p.goal_bounds), "goal_bounds must lie inside env_bounds");
}

}  // namespace swarmsyn
