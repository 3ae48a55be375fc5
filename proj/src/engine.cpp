#include "swarmsyn/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "swarmsyn/analysis.hpp"
#include "swarmsyn/sensing.hpp"

namespace swarmsyn {

namespace {

Pose clamp_to(const Rect& r, Pose p) {
    p.x = std::clamp(p.x, r.x_min, r.x_max);
    p.y = std::clamp(p.y, r.y_min, r.y_max);
    return p;
}

double min_pairwise_distance(const std::vector<Pose>& poses) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poses.size(); ++i)
        for (std::size_t j = i + 1; j < poses.size(); ++j)
            best = std::min(best, distance(poses[i].position(), poses[j].position()));
    return best;
}

}  // namespace

World::World(Params params, std::vector<Pose> initial, std::vector<SpawnEvent> spawns)
    : params_(std::move(params)) {
    validate(params_);
    for (const auto& p : initial) {
        if (!params_.env_bounds.contains(p.position()))
            throw std::invalid_argument("World: initial pose outside env_bounds");
        add_robot(p);
    }
    std::ranges::stable_sort(spawns, {}, &SpawnEvent::time);
    pending_.assign(spawns.begin(), spawns.end());
}

void World::add_robot(const Pose& pose) {
    const std::size_t id = poses_.size();
    poses_.push_back({pose.x, pose.y, wrap_angle(pose.theta)});
    agents_.emplace_back();
    streams_.emplace_back(derive_seed(params_.seed, id));
}

bool World::all_stopped() const {
    return !agents_.empty() && std::ranges::all_of(agents_, &AgentState::stopped);
}

std::vector<std::string> World::take_events() {
    std::vector<std::string> out;
    out.swap(events_);
    return out;
}

void World::step() {
    const double t = time();
    const std::vector<Pose> snapshot = poses_;

    last_sample_.t = t;
    last_sample_.robots.resize(snapshot.size());

    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        const NeighborSet neighbors = detect_neighbors(i, snapshot, params_);
        const bool was_stopped = agents_[i].stopped;
        agents_[i] = decide(agents_[i], neighbors, snapshot[i], params_, streams_[i]);
        if (was_stopped && !agents_[i].stopped)
            events_.push_back(fmt::format("t={:.1f} robot {} resumed ({} neighbours)", t, i, neighbors.size()));

        const auto wall = wall_repulsion(snapshot[i], params_.env_bounds, params_);
        const auto close = nearest_proximity(i, snapshot, params_.safe_distance);
        const VelocityCommand cmd = navigate(agents_[i], nearest_threat(close, wall), t, params_);

        auto& sample = last_sample_.robots[i];
        sample.pose = snapshot[i];
        sample.state = agents_[i].state;
        sample.cmd = cmd;
        sample.goal = to_global(snapshot[i], agents_[i].goal_local);

        Pose next = integrate_unicycle(snapshot[i], cmd, params_.dt);
        if (!params_.env_bounds.contains(next.position())) {
            events_.push_back(fmt::format("t={:.1f} robot {} clamped at arena wall", t, i));
            next = clamp_to(params_.env_bounds, next);
        }
        poses_[i] = next;
    }

    ++steps_;
    process_spawns();
}

void World::process_spawns() {
    const double now = time();
    const double slack = 1e-9 * params_.dt;
    while (!pending_.empty() && pending_.front().time <= now + slack) {
        const Pose& p = pending_.front().pose;
        const bool blocked = std::ranges::any_of(poses_, [&](const Pose& q) {
            return distance(p.position(), q.position()) < 2.0 * params_.body_radius;
        });
        if (blocked) {
            events_.push_back(fmt::format("t={:.1f} spawn at ({:.3f}, {:.3f}) deferred: site occupied", now, p.x, p.y));
            break;  // retried next step, later spawns wait behind it
        }
        events_.push_back(fmt::format("t={:.1f} robot {} spawned at ({:.3f}, {:.3f})", now, poses_.size(), p.x, p.y));
        add_robot(p);
        pending_.pop_front();
    }
}

World step(World world) {
    world.step();
    return world;
}

RunRecord run(const Params& params, std::vector<Pose> initial, std::vector<SpawnEvent> spawns,
              const RunOptions& options) {
    for (std::size_t i = 0; i < initial.size(); ++i)
        for (std::size_t j = i + 1; j < initial.size(); ++j)
            if (distance(initial[i].position(), initial[j].position()) < 2.0 * params.body_radius)
                throw std::invalid_argument(fmt::format("run: robots {} and {} overlap at start", i, j));

    World world(params, std::move(initial), std::move(spawns));
    RunRecord rec;
    rec.params = params;
    rec.seed = params.seed;
    rec.min_interrobot_distance = min_pairwise_distance(world.poses());

    for (const auto& d : check_params(params, world.size())) {
        if (d.severity == Severity::Error) {
            rec.lemma_violated = rec.lemma_violated || d.code == "lemma1";
            rec.warnings.push_back(d.message);
        }
    }

    const std::size_t stride = std::max<std::size_t>(options.record_stride, 1);
    const auto max_steps = static_cast<std::uint64_t>(std::llround(params.t_max / params.dt));
    std::optional<double> streak_start;
    bool recorded_last = false;

    while (world.steps() < max_steps) {
        const std::uint64_t index = world.steps();
        world.step();
        const Snapshot& sample = world.last_sample();
        recorded_last = index % stride == 0;
        if (recorded_last) rec.snapshots.push_back(sample);
        for (auto& e : world.take_events()) rec.events.push_back(std::move(e));
        rec.min_interrobot_distance = std::min(rec.min_interrobot_distance, min_pairwise_distance(world.poses()));

        const bool all_s1 = std::ranges::all_of(sample.robots, [](const RobotSample& r) { return r.state == StateTag::S1; });
        if (all_s1 && !sample.robots.empty() && !world.has_pending_spawns()) {
            if (!streak_start) streak_start = sample.t;
            if (sample.t - *streak_start + 1e-9 >= params.hold_window) {
                rec.synergy_time = streak_start;
                break;
            }
        } else {
            streak_start.reset();
        }
    }
    if (!recorded_last && world.steps() > 0) rec.snapshots.push_back(world.last_sample());

    rec.t_end = world.time();
    rec.final_poses = world.poses();
    rec.final_stopped.reserve(world.size());
    for (const auto& a : world.agents()) rec.final_stopped.push_back(a.stopped);
    rec.final_partition = detect_communities(rec.final_poses, rec.final_stopped, params);
    if (rec.final_poses.size() < 2) rec.min_interrobot_distance = std::numeric_limits<double>::infinity();
    return rec;
}

std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::Info: return "INFO";
        case Severity::Warning: return "WARNING";
        case Severity::Error: return "ERROR";
    }
    return "?";
}

std::vector<Diagnostic> check_params(const Params& p, std::size_t swarm_size) {
    std::vector<Diagnostic> out;
    if (p.safe_distance > p.goal_radius)
        out.push_back({Severity::Error, "lemma1",
                       fmt::format("safe distance {} exceeds goal radius {}: synergy cannot be reached",
                                   p.safe_distance, p.goal_radius)});
    if (p.sensing_range < 4.0 * p.goal_radius)
        out.push_back({Severity::Info, "compactness",
                       fmt::format("sensing range {} < 4 x goal radius = {}: non-collinear communities not guaranteed",
                                   p.sensing_range, 4.0 * p.goal_radius)});
    if (swarm_size > 0 && 2.0 * p.min_community_size >= static_cast<double>(swarm_size) + 2.0)
        out.push_back({Severity::Info, "single_community",
                       fmt::format("M = {} >= S/2 + 1 with S = {}: at most one community can form",
                                   p.min_community_size, swarm_size)});
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::ranges::any_of(diagnostics, [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::vector<Pose> sample_initial_poses(const Params& params, std::size_t count, HeadingMode heading,
                                       RandomStream& rng, double min_separation) {
    const Rect& box = params.goal_bounds;
    const Vec2 centre{0.5 * (params.env_bounds.x_min + params.env_bounds.x_max),
                      0.5 * (params.env_bounds.y_min + params.env_bounds.y_max)};
    constexpr int max_attempts = 100000;
    std::vector<Pose> poses;
    poses.reserve(count);
    int attempts = 0;
    while (poses.size() < count) {
        if (++attempts > max_attempts)
            throw std::runtime_error("sample_initial_poses: could not place robots with the requested clearance");
        const Vec2 p{rng.uniform(box.x_min, box.x_max), rng.uniform(box.y_min, box.y_max)};
        // Heading is drawn for every candidate so rejections do not shift later headings.
        double theta = wrap_angle(rng.uniform(-std::numbers::pi, std::numbers::pi));
        if (std::ranges::any_of(poses, [&](const Pose& q) { return distance(p, q.position()) < min_separation; }))
            continue;
        if (heading == HeadingMode::Outward) {
            const Vec2 d = p - centre;
            theta = d.norm() > 0.0 ? std::atan2(d.y, d.x) : theta;
        }
        poses.push_back({p.x, p.y, theta});
    }
    return poses;
}

}  // namespace swarmsyn
