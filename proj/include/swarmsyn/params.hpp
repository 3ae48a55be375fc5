#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swarmsyn/geometry.hpp"

namespace swarmsyn {

/// Algorithm, controller and run constants. Defaults are the flagship
/// configuration: 20 robots, 40 x 40 m arena, 24 x 24 m wander box.
struct Params {
    // Sensing. sensing_range may be +inf (known-localization variant).
    double sensing_range = 3.0;
    double fov_half_angle = std::numbers::pi / 3.0;

    // Community formation.
    double safe_distance = 0.775;
    double goal_radius = 0.875;
    int min_community_size = 3;

    // Navigation law gains.
    double v_max = 0.22;
    double turn_gain = 0.3;     // k
    double avoid_turn_gain = 0.3;   // beta
    double avoid_gain = 0.866;  // K
    double decel = 1e-5;        // lambda

    // Run control.
    double dt = 0.1;
    double t_max = 2000.0;
    double hold_window = 5.0;

    Rect env_bounds = Rect::centered(40.0, 40.0);
    Rect goal_bounds = Rect::centered(24.0, 24.0);
    double body_radius = 0.1;
    std::uint64_t seed = 0;

    friend bool operator==(const Params&, const Params&) = default;
};

class InvalidParams : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Throws InvalidParams when a hard invariant is broken (non-positive
/// lengths, FoV outside (0, pi], M < 2, goal box outside the arena).
/// The D_s <= D_g condition is a diagnostic, see check_params().
void validate(const Params& params);

}  // namespace swarmsyn
