#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swarmsyn {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;

    double norm() const { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(a, two_pi);  // [-pi, pi]
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

/// sgn with sgn(0) = 0.
inline double sgn(double v) { return static_cast<double>((0.0 < v) - (v < 0.0)); }

/// Planar pose in the global frame. Only the engine sees these.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Vec2 position() const { return {x, y}; }
    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Expresses a global point in the body frame of `pose`.
inline Vec2 to_local(const Pose& pose, Vec2 global) {
    const Vec2 d = global - pose.position();
    const double c = std::cos(pose.theta), s = std::sin(pose.theta);
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

inline Vec2 to_global(const Pose& pose, Vec2 local) {
    const double c = std::cos(pose.theta), s = std::sin(pose.theta);
    return {pose.x + c * local.x - s * local.y, pose.y + s * local.x + c * local.y};
}

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    static Rect centered(double width, double height) {
        return {-width / 2.0, -height / 2.0, width / 2.0, height / 2.0};
    }

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
    bool contains(const Rect& r) const {
        return r.x_min >= x_min && r.x_max <= x_max && r.y_min >= y_min && r.y_max <= y_max;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Distance from `p` to the closed segment [a, b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

}  // namespace swarmsyn
