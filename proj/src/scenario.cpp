#include "swarmsyn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "swarmsyn/rng.hpp"

namespace swarmsyn {

ScenarioError::ScenarioError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(fmt::format("{}:{}:{}: {}", source, line, column, message)),
      line_(line),
      column_(column) {}

ScenarioError::ScenarioError(const std::string& message) : std::runtime_error(message) {}

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

class Reader {
  public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
        const YAML::Mark mark = node.Mark();
        if (mark.is_null()) throw ScenarioError(fmt::format("{}: {}", source_, message));
        throw ScenarioError(source_, mark.line + 1, mark.column + 1, message);
    }

    double number(const YAML::Node& node, const std::string& key) const {
        if (!node.IsScalar()) fail(node, fmt::format("'{}' must be a number", key));
        try {
            return node.as<double>();
        } catch (const YAML::Exception&) {
            fail(node, fmt::format("'{}' must be a number, got '{}'", key, node.Scalar()));
        }
    }

    std::int64_t integer(const YAML::Node& node, const std::string& key) const {
        const double v = number(node, key);
        if (std::floor(v) != v || std::abs(v) > 9e15) fail(node, fmt::format("'{}' must be an integer", key));
        return static_cast<std::int64_t>(v);
    }

    std::size_t count(const YAML::Node& node, const std::string& key) const {
        const auto v = integer(node, key);
        if (v < 0) fail(node, fmt::format("'{}' must be >= 0", key));
        return static_cast<std::size_t>(v);
    }

    std::pair<double, double> size2(const YAML::Node& node, const std::string& key) const {
        if (!node.IsSequence() || node.size() != 2) fail(node, fmt::format("'{}' must be [width, height]", key));
        return {number(node[0], key), number(node[1], key)};
    }

    Pose pose(const YAML::Node& node, const std::string& key) const {
        if (!node.IsSequence() || node.size() != 3) fail(node, fmt::format("'{}' must be [x, y, heading_deg]", key));
        return {number(node[0], key), number(node[1], key), wrap_angle(number(node[2], key) * kDeg)};
    }

    void params(const YAML::Node& node, Params& p) const {
        if (!node.IsMap()) fail(node, "'params' must be a mapping");
        for (const auto& kv : node) {
            const auto key = kv.first.as<std::string>();
            const YAML::Node& v = kv.second;
            if (key == "sensing_range") p.sensing_range = number(v, key);
            else if (key == "fov_half_angle_deg") p.fov_half_angle = number(v, key) * kDeg;
            else if (key == "safe_distance") p.safe_distance = number(v, key);
            else if (key == "goal_radius") p.goal_radius = number(v, key);
            else if (key == "min_community_size") p.min_community_size = static_cast<int>(integer(v, key));
            else if (key == "v_max") p.v_max = number(v, key);
            else if (key == "turn_gain") p.turn_gain = number(v, key);
            else if (key == "avoid_turn_gain") p.avoid_turn_gain = number(v, key);
            else if (key == "avoid_gain") p.avoid_gain = number(v, key);
            else if (key == "decel") p.decel = number(v, key);
            else if (key == "dt") p.dt = number(v, key);
            else if (key == "t_max") p.t_max = number(v, key);
            else if (key == "hold_window") p.hold_window = number(v, key);
            else if (key == "body_radius") p.body_radius = number(v, key);
            else if (key == "env_size") {
                const auto [w, h] = size2(v, key);
                p.env_bounds = Rect::centered(w, h);
            } else if (key == "goal_size") {
                const auto [w, h] = size2(v, key);
                p.goal_bounds = Rect::centered(w, h);
            } else {
                fail(kv.first, fmt::format("unknown parameter '{}'", key));
            }
        }
    }

    Scenario scenario(const YAML::Node& root) const {
        Scenario s;
        if (root.IsNull()) return s;
        if (!root.IsMap()) fail(root, "scenario must be a mapping");
        std::optional<std::size_t> declared_size;
        YAML::Node size_node;
        YAML::Node robots_node;
        for (const auto& kv : root) {
            const auto key = kv.first.as<std::string>();
            const YAML::Node& v = kv.second;
            if (key == "name") s.name = v.as<std::string>();
            else if (key == "params") params(v, s.params);
            else if (key == "swarm_size") {
                declared_size = count(v, key);
                size_node = v;
            } else if (key == "seed") s.params.seed = static_cast<std::uint64_t>(count(v, key));
            else if (key == "record_stride") {
                s.record_stride = count(v, key);
                if (s.record_stride == 0) fail(v, "'record_stride' must be >= 1");
            } else if (key == "initial_heading") {
                const auto mode = v.as<std::string>();
                if (mode == "random") s.heading = HeadingMode::Random;
                else if (mode == "outward") s.heading = HeadingMode::Outward;
                else fail(v, fmt::format("initial_heading must be 'random' or 'outward', got '{}'", mode));
            } else if (key == "robots") {
                if (!v.IsSequence()) fail(v, "'robots' must be a list of [x, y, heading_deg]");
                robots_node = v;
                for (const auto& r : v) s.robots.push_back(pose(r, "robots"));
            } else if (key == "spawns") {
                if (!v.IsSequence()) fail(v, "'spawns' must be a list");
                for (const auto& e : v) {
                    if (!e.IsMap() || !e["t"] || !e["pose"]) fail(e, "spawn needs 't' and 'pose'");
                    s.spawns.push_back({number(e["t"], "t"), pose(e["pose"], "pose")});
                }
            } else {
                fail(kv.first, fmt::format("unknown key '{}'", key));
            }
        }
        if (!s.robots.empty()) {
            if (declared_size && *declared_size != s.robots.size())
                fail(size_node, fmt::format("swarm_size {} disagrees with {} listed robots", *declared_size,
                                            s.robots.size()));
            s.swarm_size = s.robots.size();
        } else if (declared_size) {
            s.swarm_size = *declared_size;
        }
        try {
            validate(s.params);
        } catch (const InvalidParams& e) {
            fail(root["params"] ? root["params"] : root, e.what());
        }
        for (const auto& r : s.robots)
            if (!s.params.env_bounds.contains(r.position())) fail(robots_node, "robot pose outside env_size");
        return s;
    }

  private:
    std::string source_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
    }
    try {
        return Reader(source).scenario(root);
    } catch (const YAML::Exception& e) {
        if (e.mark.is_null()) throw ScenarioError(fmt::format("{}: {}", source, e.msg));
        throw ScenarioError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(fmt::format("{}: cannot open", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    Scenario s = parse_scenario(text.str(), path.string());
    if (s.name == "scenario") s.name = path.stem().string();
    return s;
}

Scenario default_scenario() {
    Scenario s;
    s.name = "flagship";
    return s;
}

std::vector<Pose> initial_poses(const Scenario& scenario, std::uint64_t seed) {
    if (!scenario.robots.empty()) return scenario.robots;
    RandomStream rng(derive_seed(seed, kLayoutStream));
    return sample_initial_poses(scenario.params, scenario.swarm_size, scenario.heading, rng,
                                2.0 * scenario.params.body_radius);
}

const std::vector<std::string>& override_names() {
    static const std::vector<std::string> names = {
        "sensing_range", "fov_half_angle_deg", "safe_distance", "goal_radius", "min_community_size",
        "swarm_size",    "specific_area",      "v_max",         "decel",       "t_max"};
    return names;
}

void apply_override(Scenario& s, std::string_view name, double value) {
    auto whole = [&](double v) {
        if (std::floor(v) != v || v < 0) throw std::invalid_argument(fmt::format("{} needs a whole number", name));
        return static_cast<std::size_t>(v);
    };
    Params& p = s.params;
    if (name == "sensing_range") p.sensing_range = value;
    else if (name == "fov_half_angle_deg") p.fov_half_angle = value * kDeg;
    else if (name == "safe_distance") p.safe_distance = value;
    else if (name == "goal_radius") p.goal_radius = value;
    else if (name == "min_community_size") p.min_community_size = static_cast<int>(whole(value));
    else if (name == "v_max") p.v_max = value;
    else if (name == "decel") p.decel = value;
    else if (name == "t_max") p.t_max = value;
    else if (name == "swarm_size") {
        if (!s.robots.empty()) throw std::invalid_argument("swarm_size cannot be swept with explicit robots");
        s.swarm_size = whole(value);
    } else if (name == "specific_area") {
        if (!(value > 0.0)) throw std::invalid_argument("specific_area must be > 0");
        if (!s.robots.empty()) throw std::invalid_argument("specific_area cannot be swept with explicit robots");
        const double frac = p.goal_bounds.width() / p.env_bounds.width();
        const double side = std::sqrt(value * static_cast<double>(s.swarm_size));
        p.env_bounds = Rect::centered(side, side);
        p.goal_bounds = Rect::centered(frac * side, frac * side);
    } else {
        throw std::invalid_argument(fmt::format("unknown parameter '{}'", name));
    }
    try {
        validate(p);
    } catch (const InvalidParams& e) {
        throw std::invalid_argument(fmt::format("{}={}: {}", name, value, e.what()));
    }
}

}  // namespace swarmsyn
