#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swarmsyn/engine.hpp"
#include "swarmsyn/params.hpp"

namespace swarmsyn {

/// Everything needed to start a run apart from the seed.
struct Scenario {
    std::string name = "scenario";
    Params params;
    std::size_t swarm_size = 20;
    HeadingMode heading = HeadingMode::Random;
    std::vector<Pose> robots;  // explicit initial poses; empty means sampled
    std::vector<SpawnEvent> spawns;
    std::size_t record_stride = 10;
};

/// Malformed scenario. what() carries "source:line:column: message" when
/// the position is known.
class ScenarioError : public std::runtime_error {
  public:
    ScenarioError(const std::string& source, int line, int column, const std::string& message);
    explicit ScenarioError(const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_ = 0;
    int column_ = 0;
};

Scenario parse_scenario(std::string_view text, const std::string& source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

/// Flagship defaults: 20 robots, Params{} (40 x 40 m arena, 24 x 24 m box).
Scenario default_scenario();

/// Stream index reserved for initial layouts; robot streams use 0..S-1.
inline constexpr std::uint64_t kLayoutStream = 0xFFFF'FFFFull;

/// Explicit robots, or a seeded draw in goal_bounds with pairwise clearance
/// of two body radii.
std::vector<Pose> initial_poses(const Scenario& scenario, std::uint64_t seed);

/// Names accepted by apply_override(), in documentation order.
const std::vector<std::string>& override_names();

/// Sets one scenario quantity by name. `specific_area` (m^2 per robot)
/// rescales the square arena to side sqrt(area * S) and keeps the goal box at
/// the same fraction of it; `fov_half_angle_deg` takes degrees. Throws
/// std::invalid_argument for unknown names or values the name cannot take.
void apply_override(Scenario& scenario, std::string_view name, double value);

}  // namespace swarmsyn
