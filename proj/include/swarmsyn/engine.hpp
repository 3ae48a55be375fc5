#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "swarmsyn/controller.hpp"
#include "swarmsyn/navigation.hpp"
#include "swarmsyn/params.hpp"
#include "swarmsyn/record.hpp"
#include "swarmsyn/rng.hpp"

namespace swarmsyn {

/// A robot entering the arena at `time`.
struct SpawnEvent {
    double time = 0.0;
    Pose pose;
};

/// Lock-step world: every robot decides from the same pose snapshot, then
/// all poses are integrated together.
class World {
  public:
    World(Params params, std::vector<Pose> initial, std::vector<SpawnEvent> spawns = {});

    void step();

    double time() const { return static_cast<double>(steps_) * params_.dt; }
    std::uint64_t steps() const { return steps_; }
    const Params& params() const { return params_; }
    const std::vector<Pose>& poses() const { return poses_; }
    const std::vector<AgentState>& agents() const { return agents_; }
    std::size_t size() const { return poses_.size(); }
    bool all_stopped() const;
    bool has_pending_spawns() const { return !pending_.empty(); }

    /// Sample taken during the last step() (decision time and pre-step poses).
    const Snapshot& last_sample() const { return last_sample_; }

    /// Log lines produced since the last call (deferred spawns, resumes).
    std::vector<std::string> take_events();

  private:
    void add_robot(const Pose& pose);
    void process_spawns();

    Params params_;
    std::vector<Pose> poses_;
    std::vector<AgentState> agents_;
    std::vector<RandomStream> streams_;
    std::deque<SpawnEvent> pending_;
    std::uint64_t steps_ = 0;
    Snapshot last_sample_;
    std::vector<std::string> events_;
};

/// Value-style single step.
World step(World world);

struct RunOptions {
    std::size_t record_stride = 1;  // keep every n-th control sample
};

/// Steps until every robot has held S1 for hold_window seconds (with no
/// spawns pending) or t_max is reached.
RunRecord run(const Params& params, std::vector<Pose> initial, std::vector<SpawnEvent> spawns = {},
              const RunOptions& options = {});

enum class Severity { Info, Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Info;
    std::string code;
    std::string message;
};

std::string_view to_string(Severity severity);

/// Parameter-regime diagnostics: ERROR when D_s > D_g, INFO when
/// R < 4 D_g (compactness not guaranteed) and INFO for the single-community
/// regime M >= S/2 + 1. Pass swarm_size = 0 to skip the last check.
std::vector<Diagnostic> check_params(const Params& params, std::size_t swarm_size);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

enum class HeadingMode { Random, Outward };

/// Uniform positions in goal_bounds with pairwise clearance `min_separation`
/// (rejection sampling), headings uniform in (-pi, pi] or pointing away from
/// the arena centre.
std::vector<Pose> sample_initial_poses(const Params& params, std::size_t count, HeadingMode heading,
                                       RandomStream& rng, double min_separation);

}  // namespace swarmsyn
