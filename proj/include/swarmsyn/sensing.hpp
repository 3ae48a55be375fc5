#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmsyn/geometry.hpp"
#include "swarmsyn/params.hpp"

namespace swarmsyn {

/// One detected robot as seen from the observer's body frame.
struct Observation {
    int local_id = 0;     // per-observer label, not a global id
    double distance = 0.0;
    double bearing = 0.0;  // signed, relative to observer heading
    Vec2 local;           // (d cos bearing, d sin bearing)
};

/// Observations ordered by ascending distance, ties by ascending bearing.
using NeighborSet = std::vector<Observation>;

struct PolarReading {
    double distance = 0.0;
    double bearing = 0.0;
};

class DegenerateGeometry : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Range and signed bearing of `target` from `observer`.
/// Throws DegenerateGeometry when the two positions coincide.
PolarReading relative_polar(const Pose& observer, const Pose& target);

/// True iff some disk of radius `body_radius` centred on a robot in `others`
/// cuts the open segment observer -> target. Callers exclude the endpoints
/// themselves from `others`.
bool is_occluded(Vec2 observer, Vec2 target, std::span<const Pose> others, double body_radius);
bool is_occluded(const Pose& observer, const Pose& target, std::span<const Pose> others,
                 double body_radius);

/// Indices of robots that satisfy range (strict), FoV (inclusive) and
/// line-of-sight conditions, in NeighborSet order. Engine-side helper; the
/// controller only ever receives the anonymised NeighborSet.
std::vector<std::size_t> visible_robots(std::size_t observer, std::span<const Pose> world,
                                        const Params& params);

NeighborSet detect_neighbors(std::size_t observer, std::span<const Pose> world,
                             const Params& params);

/// Nearest other robot within `radius` on the full 360 degree ring (no FoV
/// restriction). Used for collision avoidance only.
std::optional<PolarReading> nearest_proximity(std::size_t observer, std::span<const Pose> world,
                                              double radius);

}  // namespace swarmsyn
