#include "swarmsyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace swarmsyn {

namespace {

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

  private:
    std::vector<std::size_t> parent_;
};

Community make_community(std::vector<RobotId> members, std::span<const Pose> poses) {
    Community c;
    Vec2 sum;
    for (RobotId id : members) sum = sum + poses[id].position();
    c.centroid = (1.0 / static_cast<double>(members.size())) * sum;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            c.diameter = std::max(c.diameter, distance(poses[members[i]].position(), poses[members[j]].position()));
    c.members = std::move(members);
    return c;
}

}  // namespace

Partition detect_communities(std::span<const Pose> poses, const std::vector<bool>& stopped,
                             const Params& params) {
    return detect_communities(poses, stopped, params, params.sensing_range);
}

Partition detect_communities(std::span<const Pose> poses, const std::vector<bool>& stopped,
                             const Params& params, double link_distance) {
    if (stopped.size() != poses.size())
        throw std::invalid_argument("detect_communities: poses and stopped flags differ in length");
    const std::size_t n = poses.size();
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!stopped[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
            if (stopped[j] && distance(poses[i].position(), poses[j].position()) <= link_distance)
                sets.unite(i, j);
    }

    // Roots are the smallest member, so iterating ids in order yields
    // components ordered by their smallest member.
    std::vector<std::vector<RobotId>> groups(n);
    for (std::size_t i = 0; i < n; ++i)
        if (stopped[i]) groups[sets.find(i)].push_back(i);

    Partition out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!stopped[i]) {
            out.outliers.push_back(i);
            continue;
        }
        if (sets.find(i) != i) continue;
        auto& g = groups[i];
        if (g.size() >= static_cast<std::size_t>(params.min_community_size)) {
            out.communities.push_back(make_community(std::move(g), poses));
        } else {
            out.outliers.insert(out.outliers.end(), g.begin(), g.end());
        }
    }
    std::ranges::sort(out.outliers);
    return out;
}

std::optional<double> synergy_time(const RunRecord& record) {
    const auto& snaps = record.snapshots;
    auto all_s1 = [](const Snapshot& s) {
        return !s.robots.empty() &&
               std::ranges::all_of(s.robots, [](const RobotSample& r) { return r.state == StateTag::S1; });
    };
    if (snaps.empty() || !all_s1(snaps.back())) return std::nullopt;
    std::size_t start = snaps.size() - 1;
    while (start > 0 && all_s1(snaps[start - 1])) --start;
    const double t0 = snaps[start].t;
    // Small slack so a window of exactly hold_window survives float rounding.
    if (snaps.back().t - t0 + 1e-9 < record.params.hold_window) return std::nullopt;
    return t0;
}

namespace {

double triple_residual(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 m = (1.0 / 3.0) * (a + b + c);
    const Vec2 pts[3] = {a - m, b - m, c - m};
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        sxx += p.x * p.x;
        syy += p.y * p.y;
        sxy += p.x * p.y;
    }
    // Principal axis of the scatter matrix; atan2(0, 0) = 0 picks the x axis
    // when the scatter is isotropic.
    const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const Vec2 normal{-std::sin(phi), std::cos(phi)};
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(dot(p, normal)));
    return worst;
}

}  // namespace

double collinearity_residual(const Community& community, std::span<const Pose> poses) {
    const auto& m = community.members;
    if (m.size() < 3) throw UndefinedMetric("collinearity_residual: fewer than three members");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            for (std::size_t k = j + 1; k < m.size(); ++k)
                best = std::min(best, triple_residual(poses[m[i]].position(), poses[m[j]].position(),
                                                      poses[m[k]].position()));
    return best;
}

double swarm_specific_area(double env_area, std::size_t swarm_size) {
    if (swarm_size == 0) throw std::invalid_argument("swarm_specific_area: empty swarm");
    return env_area / static_cast<double>(swarm_size);
}

double percentage_sensing_area(const Params& params, double env_area, std::size_t swarm_size) {
    const double sector = params.fov_half_angle * params.sensing_range * params.sensing_range;
    return 100.0 * sector / swarm_specific_area(env_area, swarm_size);
}

std::vector<std::size_t> partition_labels(const Partition& partition, std::size_t swarm_size) {
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> labels(swarm_size, unset);
    std::size_t next = 0;
    for (const auto& c : partition.communities) {
        for (RobotId id : c.members) labels.at(id) = next;
        ++next;
    }
    for (auto& l : labels)
        if (l == unset) l = next++;
    return labels;
}

double rand_index(const Partition& a, const Partition& b, std::size_t swarm_size) {
    if (swarm_size < 2) return 1.0;
    const auto la = partition_labels(a, swarm_size);
    const auto lb = partition_labels(b, swarm_size);
    std::size_t agree = 0, pairs = 0;
    for (std::size_t i = 0; i < swarm_size; ++i)
        for (std::size_t j = i + 1; j < swarm_size; ++j) {
            ++pairs;
            if ((la[i] == la[j]) == (lb[i] == lb[j])) ++agree;
        }
    return static_cast<double>(agree) / static_cast<double>(pairs);
}

std::string membership_string(const Partition& partition) {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : partition.communities) {
        if (!first) os << ' ';
        first = false;
        os << '{';
        for (std::size_t i = 0; i < c.members.size(); ++i) os << (i ? "," : "") << c.members[i];
        os << '}';
    }
    return os.str();
}

std::vector<Vec2> resample_track(const RunRecord& record, RobotId id, std::size_t count, double t_end) {
    const auto& snaps = record.snapshots;
    if (snaps.empty()) throw std::invalid_argument("resample_track: empty record");
    if (count < 2) throw std::invalid_argument("resample_track: need at least two samples");
    auto position = [&](std::size_t s) {
        const auto& robots = snaps[s].robots;
        if (id >= robots.size()) throw std::out_of_range("resample_track: robot missing from snapshot");
        return robots[id].pose.position();
    };
    std::vector<Vec2> out;
    out.reserve(count);
    std::size_t s = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = t_end * static_cast<double>(k) / static_cast<double>(count - 1);
        while (s + 1 < snaps.size() && snaps[s + 1].t <= t) ++s;
        if (s + 1 >= snaps.size() || t <= snaps[s].t) {
            out.push_back(position(s));
            continue;
        }
        const double w = (t - snaps[s].t) / (snaps[s + 1].t - snaps[s].t);
        const Vec2 a = position(s), b = position(s + 1);
        out.push_back(a + w * (b - a));
    }
    return out;
}

UntraceabilityReport untraceability_report(std::span<const RunRecord> records) {
    if (records.size() < 2) throw std::invalid_argument("untraceability_report: need at least two records");
    UntraceabilityReport rep;
    rep.swarm_size = records.front().swarm_size();
    for (const auto& r : records) {
        if (r.swarm_size() != rep.swarm_size)
            throw std::invalid_argument("untraceability_report: swarm sizes differ");
        if (r.snapshots.empty()) throw std::invalid_argument("untraceability_report: record without samples");
    }
    rep.runs = records.size();
    rep.converged_runs = static_cast<std::size_t>(
        std::ranges::count_if(records, [](const RunRecord& r) { return r.converged(); }));
    if (rep.converged_runs < 2) {
        rep.inconclusive = true;
        rep.notice = "fewer than two converged runs";
    }

    rep.horizon = std::numeric_limits<double>::infinity();
    std::size_t tracked = rep.swarm_size;
    for (const auto& r : records) {
        rep.horizon = std::min(rep.horizon, r.snapshots.back().t);
        tracked = std::min(tracked, r.snapshots.front().robots.size());
        rep.seeds.push_back(r.seed);
        rep.partitions.push_back(r.final_partition);
    }

    for (RobotId id = 0; id < tracked; ++id) {
        std::vector<std::vector<double>> xs, ys;
        for (const auto& r : records) {
            const auto track = resample_track(r, id, kTrackSamples, rep.horizon);
            auto& gx = xs.emplace_back();
            auto& gy = ys.emplace_back();
            for (const auto& p : track) {
                gx.push_back(p.x);
                gy.push_back(p.y);
            }
        }
        RobotTraceability t;
        t.id = id;
        t.x = anova_one_way(xs);
        t.y = anova_one_way(ys);
        t.min_p = std::min(t.x.p_value, t.y.p_value);
        rep.robots.push_back(t);
    }

    std::set<std::string> distinct;
    for (const auto& p : rep.partitions) distinct.insert(membership_string(p));
    rep.distinct_partitions = distinct.size();
    for (std::size_t a = 0; a < rep.partitions.size(); ++a)
        for (std::size_t b = a + 1; b < rep.partitions.size(); ++b)
            rep.rand_indices.push_back({a, b, rand_index(rep.partitions[a], rep.partitions[b], rep.swarm_size)});
    return rep;
}

}  // namespace swarmsyn
