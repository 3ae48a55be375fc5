#include "swarmsyn/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "swarmsyn/analysis.hpp"

namespace swarmsyn {

namespace fs = std::filesystem;

namespace {

json range_json(double r) { return std::isinf(r) ? json("inf") : json(r); }

double range_from(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw std::runtime_error("sensing_range: expected a number or \"inf\"");
    }
    return j.get<double>();
}

json rect_json(const Rect& r) { return json::array({r.x_min, r.y_min, r.x_max, r.y_max}); }

Rect rect_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>()}; }

json community_json(const Community& c) {
    return {{"members", c.members},
            {"centroid", json::array({c.centroid.x, c.centroid.y})},
            {"diameter", c.diameter}};
}

StateTag state_from(std::string_view s) {
    if (s == "S1") return StateTag::S1;
    if (s == "S2") return StateTag::S2;
    if (s == "S3") return StateTag::S3;
    throw std::runtime_error(fmt::format("unknown state '{}'", s));
}

}  // namespace

json params_json(const Params& p) {
    return {{"sensing_range", range_json(p.sensing_range)},
            {"fov_half_angle_deg", p.fov_half_angle * 180.0 / std::numbers::pi},
            {"safe_distance", p.safe_distance},
            {"goal_radius", p.goal_radius},
            {"min_community_size", p.min_community_size},
            {"v_max", p.v_max},
            {"turn_gain", p.turn_gain},
            {"avoid_turn_gain", p.avoid_turn_gain},
            {"avoid_gain", p.avoid_gain},
            {"decel", p.decel},
            {"dt", p.dt},
            {"t_max", p.t_max},
            {"hold_window", p.hold_window},
            {"env_bounds", rect_json(p.env_bounds)},
            {"goal_bounds", rect_json(p.goal_bounds)},
            {"body_radius", p.body_radius},
            {"seed", p.seed}};
}

Params params_from_json(const json& j) {
    Params p;
    p.sensing_range = range_from(j.at("sensing_range"));
    p.fov_half_angle = j.at("fov_half_angle_deg").get<double>() * std::numbers::pi / 180.0;
    p.safe_distance = j.at("safe_distance").get<double>();
    p.goal_radius = j.at("goal_radius").get<double>();
    p.min_community_size = j.at("min_community_size").get<int>();
    p.v_max = j.at("v_max").get<double>();
    p.turn_gain = j.at("turn_gain").get<double>();
    p.avoid_turn_gain = j.at("avoid_turn_gain").get<double>();
    p.avoid_gain = j.at("avoid_gain").get<double>();
    p.decel = j.at("decel").get<double>();
    p.dt = j.at("dt").get<double>();
    p.t_max = j.at("t_max").get<double>();
    p.hold_window = j.at("hold_window").get<double>();
    p.env_bounds = rect_from(j.at("env_bounds"));
    p.goal_bounds = rect_from(j.at("goal_bounds"));
    p.body_radius = j.at("body_radius").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

json summary_json(const RunRecord& r, const std::string& scenario) {
    const auto& part = r.final_partition;
    const Partition tight =
        detect_communities(r.final_poses, r.final_stopped, r.params, 2.0 * r.params.goal_radius);

    json communities = json::array();
    for (const auto& c : part.communities) communities.push_back(community_json(c));
    json poses = json::array();
    for (const auto& p : r.final_poses) poses.push_back(json::array({p.x, p.y, p.theta}));

    std::vector<int> stopped;
    for (bool b : r.final_stopped) stopped.push_back(b ? 1 : 0);

    return {{"scenario", scenario},
            {"seed", r.seed},
            {"swarm_size", r.swarm_size()},
            {"converged", r.converged()},
            {"synergy_time", r.synergy_time ? json(*r.synergy_time) : json(nullptr)},
            {"t_end", r.t_end},
            {"n_communities", part.communities.size()},
            {"membership", membership_string(part)},
            {"communities", communities},
            {"outliers", part.outliers},
            {"n_communities_2dg", tight.communities.size()},
            {"membership_2dg", membership_string(tight)},
            {"min_interrobot_distance", std::isinf(r.min_interrobot_distance) ? json(nullptr)
                                                                              : json(r.min_interrobot_distance)},
            {"lemma_violated", r.lemma_violated},
            {"warnings", r.warnings},
            {"events", r.events},
            {"final_poses", poses},
            {"final_stopped", stopped},
            {"params", params_json(r.params)}};
}

void write_trajectory_csv(std::ostream& out, const RunRecord& r, const std::string& scenario) {
    out << fmt::format("# scenario={} seed={} swarm_size={}\n", scenario, r.seed, r.swarm_size());
    out << "# params=" << params_json(r.params).dump() << '\n';
    out << kTrajectoryHeader << '\n';
    for (const auto& snap : r.snapshots) {
        for (std::size_t i = 0; i < snap.robots.size(); ++i) {
            const auto& s = snap.robots[i];
            out << fmt::format("{:.4f},{},{:.6f},{:.6f},{:.6f},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", snap.t, i,
                               s.pose.x, s.pose.y, s.pose.theta, to_string(s.state), s.cmd.v, s.cmd.omega,
                               s.goal.x, s.goal.y);
        }
    }
}

std::vector<Snapshot> read_trajectory_csv(std::istream& in) {
    std::vector<Snapshot> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != kTrajectoryHeader) throw std::runtime_error(fmt::format("line {}: unexpected header", line_no));
            header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 10) throw std::runtime_error(fmt::format("line {}: expected 10 columns", line_no));
        try {
            const double t = std::stod(cells[0]);
            const auto id = static_cast<std::size_t>(std::stoull(cells[1]));
            if (out.empty() || out.back().t != t) out.push_back({t, {}});
            auto& robots = out.back().robots;
            if (id != robots.size()) throw std::runtime_error("robot ids out of order");
            RobotSample s;
            s.pose = {std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])};
            s.state = state_from(cells[5]);
            s.cmd = {std::stod(cells[6]), std::stod(cells[7])};
            s.goal = {std::stod(cells[8]), std::stod(cells[9])};
            robots.push_back(s);
        } catch (const std::logic_error& e) {
            throw std::runtime_error(fmt::format("line {}: {}", line_no, e.what()));
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return out;
}

void write_run(const fs::path& dir, const RunRecord& record, const std::string& scenario, bool with_trajectory) {
    fs::create_directories(dir);
    if (with_trajectory) {
        std::ofstream csv(dir / kTrajectoryFile);
        write_trajectory_csv(csv, record, scenario);
        if (!csv) throw std::runtime_error(fmt::format("cannot write {}", (dir / kTrajectoryFile).string()));
    }
    std::ofstream js(dir / kSummaryFile);
    js << summary_json(record, scenario).dump(2) << '\n';
    if (!js) throw std::runtime_error(fmt::format("cannot write {}", (dir / kSummaryFile).string()));
}

LoadedRun load_run(const fs::path& summary_path, bool with_trajectory) {
    std::ifstream in(summary_path);
    if (!in) throw std::runtime_error(fmt::format("cannot open {}", summary_path.string()));
    const json j = json::parse(in);

    LoadedRun run;
    run.dir = summary_path.parent_path();
    run.scenario = j.value("scenario", "");
    RunRecord& r = run.record;
    r.params = params_from_json(j.at("params"));
    r.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("synergy_time").is_null()) r.synergy_time = j.at("synergy_time").get<double>();
    r.t_end = j.at("t_end").get<double>();
    for (const auto& p : j.at("final_poses"))
        r.final_poses.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    for (const auto& s : j.at("final_stopped")) r.final_stopped.push_back(s.get<int>() != 0);
    for (const auto& c : j.at("communities")) {
        Community com;
        com.members = c.at("members").get<std::vector<RobotId>>();
        com.centroid = {c.at("centroid").at(0).get<double>(), c.at("centroid").at(1).get<double>()};
        com.diameter = c.at("diameter").get<double>();
        r.final_partition.communities.push_back(std::move(com));
    }
    r.final_partition.outliers = j.at("outliers").get<std::vector<RobotId>>();
    const auto& md = j.at("min_interrobot_distance");
    r.min_interrobot_distance = md.is_null() ? std::numeric_limits<double>::infinity() : md.get<double>();
    r.lemma_violated = j.value("lemma_violated", false);
    r.warnings = j.value("warnings", std::vector<std::string>{});

    const fs::path csv = run.dir / kTrajectoryFile;
    if (with_trajectory && fs::exists(csv)) {
        std::ifstream t(csv);
        try {
            r.snapshots = read_trajectory_csv(t);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(fmt::format("{}: {}", csv.string(), e.what()));
        }
        run.has_trajectory = true;
    }
    return run;
}

std::vector<fs::path> find_summaries(const fs::path& root) {
    std::vector<fs::path> out;
    if (fs::is_regular_file(root)) {
        out.push_back(root);
        return out;
    }
    if (!fs::is_directory(root)) return out;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file() && e.path().filename() == kSummaryFile) out.push_back(e.path());
    std::ranges::sort(out);
    return out;
}

}  // namespace swarmsyn
