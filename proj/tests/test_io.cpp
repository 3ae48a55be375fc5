#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "swarmsyn/experiment.hpp"
#include "swarmsyn/io.hpp"
#include "swarmsyn/scenario.hpp"

using namespace swarmsyn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("swarmsyn_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("empty document gives the flagship defaults") {
    const auto s = parse_scenario("");
    CHECK(s.params == Params{});
    CHECK(s.swarm_size == 20);
    CHECK(s.robots.empty());
}

TEST_CASE("full scenario parses") {
    const auto s = parse_scenario(R"(
name: desk
seed: 9
initial_heading: outward
record_stride: 5
params:
  sensing_range: .inf
  fov_half_angle_deg: 90
  min_community_size: 2
  env_size: [5, 6]
  goal_size: [4, 4]
robots:
  - [0, 0, 90]
  - [1, 0, 180]
spawns:
  - {t: 60, pose: [2, 2, -90]}
)");
    CHECK(s.name == "desk");
    CHECK(s.params.seed == 9);
    CHECK(s.heading == HeadingMode::Outward);
    CHECK(s.record_stride == 5);
    CHECK(std::isinf(s.params.sensing_range));
    CHECK(s.params.fov_half_angle == doctest::Approx(std::numbers::pi / 2));
    CHECK(s.params.env_bounds == Rect::centered(5, 6));
    CHECK(s.swarm_size == 2);
    REQUIRE(s.robots.size() == 2);
    CHECK(s.robots[1].theta == doctest::Approx(std::numbers::pi));
    REQUIRE(s.spawns.size() == 1);
    CHECK(s.spawns[0].time == 60.0);
    CHECK(s.spawns[0].pose.theta == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("errors point at the offending line") {
    auto line_of = [](const std::string& text) {
        try {
            parse_scenario(text, "x.yaml");
        } catch (const ScenarioError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("name: a\nparams:\n  sensing_rang: 3\n") == 3);
    CHECK(line_of("name: a\nswarm_size: many\n") == 2);
    CHECK(line_of("name: a\nrobots:\n  - [0, 0]\n") == 3);
    CHECK(line_of("name: a\nparams: {dt: 0.1\n") > 0);
    CHECK(line_of("name: a\nbogus: 1\n") == 2);
    CHECK(line_of("swarm_size: 3\nrobots:\n  - [0, 0, 0]\n") == 1);

    try {
        parse_scenario("params:\n  fov_half_angle_deg: 270\n", "y.yaml");
        FAIL("expected an error");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("y.yaml:") == 0);
        CHECK(std::string(e.what()).find("fov_half_angle") != std::string::npos);
    }
}

TEST_CASE("overrides") {
    auto s = default_scenario();
    apply_override(s, "sensing_range", 4);
    CHECK(s.params.sensing_range == 4);
    apply_override(s, "specific_area", 20);
    CHECK(s.params.env_bounds.area() == doctest::Approx(400.0));
    CHECK(s.params.goal_bounds.width() == doctest::Approx(0.6 * 20));
    apply_override(s, "min_community_size", 11);
    CHECK(s.params.min_community_size == 11);
    CHECK_THROWS_AS(apply_override(s, "min_community_size", 2.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(s, "nonsense", 1), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(s, "sensing_range", -1), std::invalid_argument);
}

TEST_CASE("sampled initial layouts are seeded") {
    auto s = default_scenario();
    CHECK(initial_poses(s, 3) == initial_poses(s, 3));
    CHECK(initial_poses(s, 3) != initial_poses(s, 4));
    s.robots = {{1, 1, 0}};
    CHECK(initial_poses(s, 3) == s.robots);
}

}

TEST_SUITE("io") {

TEST_CASE("parameters survive a JSON round trip, infinite range included") {
    Params p;
    p.sensing_range = std::numeric_limits<double>::infinity();
    p.env_bounds = Rect::centered(7, 9);
    p.seed = 123;
    CHECK(params_from_json(params_json(p)) == p);
    CHECK(params_json(p)["sensing_range"] == "inf");
}

TEST_CASE("trajectory and summary files round trip") {
    auto s = default_scenario();
    s.swarm_size = 6;
    s.params.t_max = 60;
    s.record_stride = 10;
    const auto rec = run_scenario(s, 17);
    const fs::path dir = scratch_dir("roundtrip");
    write_run(dir, rec, s.name);

    const std::string csv = slurp(dir / kTrajectoryFile);
    CHECK(csv.rfind("# scenario=flagship seed=17", 0) == 0);
    CHECK(csv.find("\n# params={") != std::string::npos);
    CHECK(csv.find(std::string("\n") + kTrajectoryHeader + "\n") != std::string::npos);

    const auto loaded = load_run(dir / kSummaryFile, true);
    CHECK(loaded.has_trajectory);
    CHECK(loaded.scenario == "flagship");
    CHECK(loaded.record.seed == 17);
    CHECK(loaded.record.params == rec.params);
    CHECK(loaded.record.synergy_time == rec.synergy_time);
    CHECK(loaded.record.final_poses == rec.final_poses);
    CHECK(loaded.record.final_stopped == rec.final_stopped);
    REQUIRE(loaded.record.snapshots.size() == rec.snapshots.size());
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
        CHECK(loaded.record.snapshots[k].t == doctest::Approx(rec.snapshots[k].t));
        for (std::size_t i = 0; i < rec.snapshots[k].robots.size(); ++i) {
            CHECK(loaded.record.snapshots[k].robots[i].pose.x ==
                  doctest::Approx(rec.snapshots[k].robots[i].pose.x).epsilon(1e-6));
            CHECK(loaded.record.snapshots[k].robots[i].state == rec.snapshots[k].robots[i].state);
        }
    }

    const auto j = summary_json(rec, s.name);
    for (const char* key : {"seed", "synergy_time", "n_communities", "communities", "min_interrobot_distance",
                            "warnings", "params", "outliers", "n_communities_2dg"})
        CHECK(j.contains(key));
    CHECK(j["synergy_time"].is_null() == !rec.converged());
    fs::remove_all(dir);
}

TEST_CASE("malformed trajectory rows are reported with their line") {
    std::istringstream bad(std::string("# x\n") + kTrajectoryHeader + "\n0.0,0,1,2,3,S1,0,0,0\n");
    CHECK_THROWS_WITH_AS(read_trajectory_csv(bad), doctest::Contains("line 3"), std::runtime_error);
    std::istringstream state(std::string(kTrajectoryHeader) + "\n0.0,0,1,2,3,S9,0,0,0,0\n");
    CHECK_THROWS_AS(read_trajectory_csv(state), std::runtime_error);
}

}

TEST_SUITE("experiment") {

TEST_CASE("sweep axis parsing") {
    const auto a = parse_sweep_axis("sensing_range=1,2,3.5");
    CHECK(a.name == "sensing_range");
    CHECK(a.values == std::vector<double>{1, 2, 3.5});
    CHECK_THROWS_AS(parse_sweep_axis("sensing_range"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep_axis("=1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep_axis("r=1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep_axis("r="), std::invalid_argument);
}

TEST_CASE("parallel_for visits every index once and forwards errors") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::ranges::all_of(hits, [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
                    std::runtime_error);
}

TEST_CASE("batch runs use seed_base + index and match single runs regardless of workers") {
    ExperimentSpec spec;
    spec.base = default_scenario();
    spec.base.swarm_size = 6;
    spec.base.params.env_bounds = Rect::centered(6, 6);
    spec.base.params.goal_bounds = Rect::centered(5, 5);
    spec.base.params.t_max = 200;
    spec.sweep = SweepAxis{"sensing_range", {1.5, 2.5}};
    spec.repeats = 3;
    spec.seed_base = 100;
    spec.workers = 1;
    const auto serial = run_experiment(spec);
    spec.workers = 3;
    const auto parallel = run_experiment(spec);
    REQUIRE(serial.size() == 6);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].seed == 100 + i % 3);
        CHECK(serial[i].param_value == (i < 3 ? 1.5 : 2.5));
        CHECK(serial[i].synergy_time == parallel[i].synergy_time);
        CHECK(serial[i].n_communities == parallel[i].n_communities);
        CHECK(serial[i].error.empty());
    }
    Scenario direct = spec.base;
    direct.params.sensing_range = 2.5;
    const auto rec = run_scenario(direct, 101);
    CHECK(rec.synergy_time == serial[4].synergy_time);

    const auto points = aggregate(serial);
    REQUIRE(points.size() == 2);
    CHECK(points[0].runs == 3);

    std::ostringstream csv;
    write_sweep_csv(csv, serial);
    CHECK(csv.str().rfind("param_value,run,seed,synergy_time,n_communities\n", 0) == 0);
}

TEST_CASE("a failing run is recorded and the batch continues") {
    ExperimentSpec spec;
    spec.base = default_scenario();
    spec.base.swarm_size = 400;  // cannot be placed with clearance in a tiny box
    spec.base.params.env_bounds = Rect::centered(2, 2);
    spec.base.params.goal_bounds = Rect::centered(2, 2);
    spec.base.params.t_max = 1;
    spec.repeats = 2;
    const auto rows = run_experiment(spec);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].error.empty());
    CHECK_FALSE(rows[1].error.empty());
    spec.repeats = 0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
}

TEST_CASE("aggregate counts non-converged runs at t_max in the median") {
    std::vector<SweepRow> rows(3);
    for (auto& r : rows) r.t_max = 2000;
    rows[0].synergy_time = 100;
    rows[1].synergy_time = 300;
    const auto pts = aggregate(rows);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].converged == 2);
    CHECK(pts[0].st_median == 300);
    CHECK(pts[0].st_stddev == doctest::Approx(std::sqrt(20000.0)));
}

}
