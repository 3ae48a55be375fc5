#include "swarmsyn/sensing.hpp"

#include <algorithm>
#include <cmath>

namespace swarmsyn {

PolarReading relative_polar(const Pose& observer, const Pose& target) {
    const double dx = target.x - observer.x;
    const double dy = target.y - observer.y;
    const double d = std::hypot(dx, dy);
    if (d == 0.0) throw DegenerateGeometry("relative_polar: coincident positions");
    return {d, wrap_angle(std::atan2(dy, dx) - observer.theta)};
}

bool is_occluded(Vec2 observer, Vec2 target, std::span<const Pose> others, double body_radius) {
    return std::ranges::any_of(others, [&](const Pose& o) {
        return point_segment_distance(o.position(), observer, target) < body_radius;
    });
}

bool is_occluded(const Pose& observer, const Pose& target, std::span<const Pose> others,
                 double body_radius) {
    return is_occluded(observer.position(), target.position(), others, body_radius);
}

namespace {

struct Candidate {
    std::size_t index;
    PolarReading reading;
};

bool blocked(std::size_t observer, std::size_t target, std::span<const Pose> world, double r) {
    const Vec2 a = world[observer].position();
    const Vec2 b = world[target].position();
    for (std::size_t k = 0; k < world.size(); ++k) {
        if (k == observer || k == target) continue;
        if (point_segment_distance(world[k].position(), a, b) < r) return true;
    }
    return false;
}

std::vector<Candidate> sense(std::size_t observer, std::span<const Pose> world, const Params& p) {
    std::vector<Candidate> found;
    const Pose& self = world[observer];
    for (std::size_t j = 0; j < world.size(); ++j) {
        if (j == observer) continue;
        const double dx = world[j].x - self.x;
        const double dy = world[j].y - self.y;
        const double d = std::hypot(dx, dy);
        if (d == 0.0 || !(d < p.sensing_range)) continue;
        const double bearing = wrap_angle(std::atan2(dy, dx) - self.theta);
        if (std::abs(bearing) > p.fov_half_angle) continue;
        if (blocked(observer, j, world, p.body_radius)) continue;
        found.push_back({j, {d, bearing}});
    }
    std::ranges::sort(found, [](const Candidate& a, const Candidate& b) {
        if (a.reading.distance != b.reading.distance) return a.reading.distance < b.reading.distance;
        if (a.reading.bearing != b.reading.bearing) return a.reading.bearing < b.reading.bearing;
        return a.index < b.index;
    });
    return found;
}

}  // namespace

std::vector<std::size_t> visible_robots(std::size_t observer, std::span<const Pose> world,
                                        const Params& params) {
    std::vector<std::size_t> out;
    for (const auto& c : sense(observer, world, params)) out.push_back(c.index);
    return out;
}

NeighborSet detect_neighbors(std::size_t observer, std::span<const Pose> world,
                             const Params& params) {
    NeighborSet set;
    int next_id = 0;
    for (const auto& c : sense(observer, world, params)) {
        const double d = c.reading.distance, b = c.reading.bearing;
        set.push_back({next_id++, d, b, {d * std::cos(b), d * std::sin(b)}});
    }
    return set;
}

std::optional<PolarReading> nearest_proximity(std::size_t observer, std::span<const Pose> world,
                                              double radius) {
    std::optional<PolarReading> best;
    const Pose& self = world[observer];
    for (std::size_t j = 0; j < world.size(); ++j) {
        if (j == observer) continue;
        const double d = std::hypot(world[j].x - self.x, world[j].y - self.y);
        if (d == 0.0 || d > radius || (best && d >= best->distance)) continue;
        best = relative_polar(self, world[j]);
    }
    return best;
}

}  // namespace swarmsyn
