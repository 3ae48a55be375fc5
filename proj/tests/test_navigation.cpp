#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "gen.hpp"
#include "swarmsyn/navigation.hpp"

using namespace swarmsyn;
using std::numbers::pi;

TEST_SUITE("navigation") {

TEST_CASE("linear speed: free, decaying and clamped") {
    Params p;
    CHECK(linear_velocity(1.0, false, 0.0, 5.0, 0.0, p) == doctest::Approx(0.22));
    CHECK(linear_velocity(0.5, true, 0.22, 1000.0, 0.0, p) == doctest::Approx(0.21));
    CHECK(linear_velocity(0.5, true, 0.22, 30000.0, 0.0, p) == 0.0);
    // Boundary: d_min == D_s is inside the avoidance branch.
    CHECK(linear_velocity(p.safe_distance, true, 0.1, 0.0, 0.0, p) == doctest::Approx(0.1));
}

TEST_CASE("turn rate: bang-bang toward the goal, away from the threat") {
    Params p;
    CHECK(angular_velocity(0.5, 0.0, 1.0, p) == doctest::Approx(0.3));
    CHECK(angular_velocity(-0.5, 0.0, 1.0, p) == doctest::Approx(-0.3));
    CHECK(angular_velocity(0.5, 0.2, 0.5, p) == doctest::Approx(-0.566));
    CHECK(angular_velocity(0.0, 0.0, 1.0, p) == 0.0);
    CHECK(angular_velocity(0.0, -0.1, 0.5, p) == doctest::Approx(0.866));
}

TEST_CASE("turn rate magnitudes come from a fixed set") {
    Params p;
    const double k = p.turn_gain, b = p.avoid_turn_gain, K = p.avoid_gain;
    const std::set<double> allowed{0.0, k, b, K, std::abs(b - K), b + K};
    gen::Gen g(31);
    for (int i = 0; i < 5000; ++i) {
        const double he = g.coin() ? 0.0 : g.real(-pi, pi);
        const double nb = g.coin() ? 0.0 : g.real(-pi, pi);
        const double w = std::abs(angular_velocity(he, nb, g.real(0.0, 2.0), p));
        bool found = false;
        for (double a : allowed) found = found || std::abs(w - a) < 1e-15;
        CHECK(found);
    }
}

TEST_CASE("unicycle Euler step") {
    auto q = integrate_unicycle({0, 0, 0}, {1, 0}, 0.1);
    CHECK(q.x == doctest::Approx(0.1));
    CHECK(q.y == doctest::Approx(0.0));
    CHECK(q.theta == doctest::Approx(0.0));

    q = integrate_unicycle({0, 0, 0}, {0, pi}, 1.0);
    CHECK(q.x == 0.0);
    CHECK(q.y == 0.0);
    CHECK(q.theta == doctest::Approx(pi));

    q = integrate_unicycle({1, 1, pi / 2}, {2, 0}, 0.1);
    CHECK(q.x == doctest::Approx(1.0));
    CHECK(q.y == doctest::Approx(1.2));
    CHECK(q.theta == doctest::Approx(pi / 2));
}

TEST_CASE("heading stays wrapped and poses stay finite") {
    gen::Gen g(32);
    Pose pose{0, 0, 0};
    for (int i = 0; i < 20000; ++i) {
        pose = integrate_unicycle(pose, {g.real(0, 0.22), g.real(-1.5, 1.5)}, 0.1);
        REQUIRE(std::isfinite(pose.x));
        REQUIRE(std::isfinite(pose.y));
        CHECK(pose.theta > -pi);
        CHECK(pose.theta <= pi);
    }
}

TEST_CASE("halving the step barely moves a 100-step endpoint") {
    const VelocityCommand cmd{0.22, 0.3};
    Pose coarse{0, 0, 0.4}, fine{0, 0, 0.4};
    for (int i = 0; i < 100; ++i) coarse = integrate_unicycle(coarse, cmd, 0.1);
    for (int i = 0; i < 200; ++i) fine = integrate_unicycle(fine, cmd, 0.05);
    CHECK(distance(coarse.position(), fine.position()) < 0.05);
}

TEST_CASE("walls act as a virtual neighbour inside the safe distance") {
    Params p;
    const Rect env = Rect::centered(40, 40);
    CHECK_FALSE(wall_repulsion({0.5, 0, pi}, env, p).has_value());

    auto w = wall_repulsion({-19.5, 0, pi}, env, p);
    REQUIRE(w.has_value());
    CHECK(w->distance == doctest::Approx(0.5));
    CHECK(w->bearing == doctest::Approx(0.0).epsilon(1e-12));

    // Near a corner the closer wall wins.
    w = wall_repulsion({19.6, 19.3, 0}, env, p);
    REQUIRE(w.has_value());
    CHECK(w->distance == doctest::Approx(0.4));
    CHECK(w->bearing == doctest::Approx(0.0).epsilon(1e-12));
    w = wall_repulsion({19.3, 19.6, 0}, env, p);
    REQUIRE(w.has_value());
    CHECK(w->distance == doctest::Approx(0.4));
    CHECK(w->bearing == doctest::Approx(pi / 2));

    CHECK_THROWS_AS(wall_repulsion({21, 0, 0}, env, p), std::out_of_range);
}

TEST_CASE("wall pick matches a brute-force minimum over the four walls") {
    gen::Gen g(33);
    Params p;
    const Rect env = Rect::centered(10, 6);
    for (int i = 0; i < 2000; ++i) {
        const Pose pose{g.real(env.x_min, env.x_max), g.real(env.y_min, env.y_max), g.real(-pi, pi)};
        const double d = std::min({pose.x - env.x_min, env.x_max - pose.x, pose.y - env.y_min, env.y_max - pose.y});
        const auto w = wall_repulsion(pose, env, p);
        CHECK(w.has_value() == (d <= p.safe_distance));
        if (w) CHECK(w->distance == doctest::Approx(d));
    }
}

TEST_CASE("nearest threat picks the closer contact") {
    const auto t = nearest_threat(PolarReading{0.5, 1.0}, Threat{0.7, -1.0});
    REQUIRE(t);
    CHECK(t->bearing == 1.0);
    CHECK(nearest_threat(std::nullopt, std::nullopt) == std::nullopt);
    CHECK(nearest_threat(std::nullopt, Threat{0.3, 0.2})->distance == 0.3);
}

TEST_CASE("speed never rises while avoidance stays engaged") {
    Params p;
    p.decel = 1e-3;
    gen::Gen g(34);
    for (int trial = 0; trial < 50; ++trial) {
        AgentState a;
        a.goal_local = {g.real(-3, 3), g.real(-3, 3)};
        double last = std::numeric_limits<double>::infinity();
        bool engaged_before = false;
        for (int k = 0; k < 300; ++k) {
            const bool threat = g.integer(0, 9) > 1;
            const auto cmd = navigate(a, threat ? std::optional<Threat>(Threat{0.5, g.real(-1, 1)}) : std::nullopt,
                                      k * 0.1, p);
            CHECK(cmd.v >= 0.0);
            CHECK(cmd.v <= p.v_max);
            if (threat && engaged_before) CHECK(cmd.v <= last);
            if (!threat) CHECK(cmd.v == p.v_max);
            engaged_before = threat;
            last = cmd.v;
        }
    }
}

TEST_CASE("engagement freezes the current speed, or v_max from rest") {
    Params p;
    AgentState a;
    a.goal_local = {1, 0};
    auto cmd = navigate(a, Threat{0.5, 0.3}, 10.0, p);
    CHECK(a.engaged);
    CHECK(a.engaged_at == 10.0);
    CHECK(a.v_at_engage == p.v_max);
    CHECK(cmd.v == doctest::Approx(p.v_max));
    CHECK(cmd.omega == doctest::Approx(-p.avoid_gain));  // heading error 0, threat on the left

    cmd = navigate(a, Threat{0.5, 0.3}, 110.0, p);
    CHECK(cmd.v == doctest::Approx(p.v_max - 100 * p.decel));

    cmd = navigate(a, std::nullopt, 111.0, p);
    CHECK_FALSE(a.engaged);
    CHECK(cmd.v == p.v_max);
    CHECK(cmd.omega == 0.0);
}

TEST_CASE("stopped robots do not move") {
    Params p;
    AgentState a;
    a.stopped = true;
    a.goal_local = {1, 1};
    CHECK(navigate(a, Threat{0.1, 0.0}, 3.0, p) == VelocityCommand{0, 0});
    CHECK_FALSE(a.engaged);
}

}
