#include "swarmsyn/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "swarmsyn/analysis.hpp"

namespace swarmsyn {

namespace {

json f_json(double f) { return std::isfinite(f) ? json(f) : json("inf"); }

std::string f_text(const json& f) { return f.is_string() ? f.get<std::string>() : fmt::format("{:.3f}", f.get<double>()); }

json p_json(double p) { return p < kReportedZeroP ? json(0.0) : json(p); }

std::string p_text(double p) { return p < kReportedZeroP ? "0.00" : fmt::format("{:.4g}", p); }

json untraceability_json(std::span<const LoadedRun> group) {
    std::vector<RunRecord> records;
    for (const auto& r : group)
        if (r.has_trajectory && !r.record.snapshots.empty()) records.push_back(r.record);
    if (records.size() < 2) return {{"skipped", "needs at least two runs with trajectories"}};

    UntraceabilityReport rep;
    try {
        rep = untraceability_report(records);
    } catch (const std::exception& e) {
        return {{"skipped", e.what()}};
    }
    json robots = json::array();
    for (const auto& t : rep.robots)
        robots.push_back({{"robot", t.id},
                          {"F_x", f_json(t.x.F)},
                          {"p_x", p_json(t.x.p_value)},
                          {"F_y", f_json(t.y.F)},
                          {"p_y", p_json(t.y.p_value)},
                          {"df", json::array({t.x.df_between, t.x.df_within})}});
    json pairs = json::array();
    for (const auto& rp : rep.rand_indices)
        pairs.push_back({{"a", rep.seeds[rp.a]}, {"b", rep.seeds[rp.b]}, {"rand_index", rp.index}});
    return {{"runs", rep.runs},
            {"converged_runs", rep.converged_runs},
            {"inconclusive", rep.inconclusive},
            {"notice", rep.notice},
            {"horizon", rep.horizon},
            {"samples_per_track", kTrackSamples},
            {"distinct_partitions", rep.distinct_partitions},
            {"robots", robots},
            {"rand_indices", pairs}};
}

}  // namespace

json build_report(std::span<const LoadedRun> runs) {
    std::map<std::size_t, std::vector<LoadedRun>> by_size;
    for (const auto& r : runs) by_size[r.record.swarm_size()].push_back(r);

    json report;
    report["notice"] = by_size.size() > 1 ? json(fmt::format("{} swarm sizes present; grouped per size", by_size.size()))
                                          : json(nullptr);
    json groups = json::array();
    for (const auto& [size, group] : by_size) {
        json membership = json::array();
        std::map<int, std::vector<const LoadedRun*>> by_m;
        for (const auto& r : group) {
            const auto& rec = r.record;
            membership.push_back({{"run", r.dir.string()},
                                  {"seed", rec.seed},
                                  {"M", rec.params.min_community_size},
                                  {"converged", rec.converged()},
                                  {"synergy_time", rec.synergy_time ? json(*rec.synergy_time) : json(nullptr)},
                                  {"n_communities", rec.final_partition.communities.size()},
                                  {"membership", membership_string(rec.final_partition)}});
            by_m[rec.params.min_community_size].push_back(&r);
        }
        json by_min_size = json::array();
        for (const auto& [m, list] : by_m) {
            double comm = 0.0, st = 0.0;
            std::size_t conv = 0;
            for (const auto* r : list) {
                if (!r->record.converged()) continue;
                ++conv;
                comm += static_cast<double>(r->record.final_partition.communities.size());
                st += *r->record.synergy_time;
            }
            by_min_size.push_back({{"M", m},
                                   {"runs", list.size()},
                                   {"converged", conv},
                                   {"mean_communities", conv ? json(comm / conv) : json(nullptr)},
                                   {"mean_synergy_time", conv ? json(st / conv) : json(nullptr)}});
        }
        groups.push_back({{"swarm_size", size},
                          {"membership", membership},
                          {"by_min_community_size", by_min_size},
                          {"untraceability", untraceability_json(group)}});
    }
    report["groups"] = groups;
    return report;
}

std::string report_text(const json& report) {
    std::string out;
    auto line = [&](const std::string& s) { out += s + '\n'; };
    if (!report["notice"].is_null()) line("notice: " + report["notice"].get<std::string>());
    for (const auto& g : report["groups"]) {
        line(fmt::format("== swarm size {} ==", g["swarm_size"].get<std::size_t>()));
        line("");
        line(fmt::format("{:>10} {:>3} {:>9} {:>11}  {}", "seed", "M", "ST [s]", "communities", "membership"));
        for (const auto& r : g["membership"]) {
            const std::string st = r["synergy_time"].is_null() ? "-" : fmt::format("{:.1f}", r["synergy_time"].get<double>());
            line(fmt::format("{:>10} {:>3} {:>9} {:>11}  {}", r["seed"].get<std::uint64_t>(), r["M"].get<int>(), st,
                             r["n_communities"].get<std::size_t>(), r["membership"].get<std::string>()));
        }
        line("");
        line(fmt::format("{:>3} {:>5} {:>9} {:>16} {:>10}", "M", "runs", "converged", "mean communities", "mean ST"));
        for (const auto& m : g["by_min_community_size"]) {
            const auto num = [](const json& v, const char* f) {
                return v.is_null() ? std::string("-") : fmt::format(fmt::runtime(f), v.get<double>());
            };
            line(fmt::format("{:>3} {:>5} {:>9} {:>16} {:>10}", m["M"].get<int>(), m["runs"].get<std::size_t>(),
                             m["converged"].get<std::size_t>(), num(m["mean_communities"], "{:.2f}"),
                             num(m["mean_synergy_time"], "{:.1f}")));
        }
        line("");
        const auto& u = g["untraceability"];
        if (u.contains("skipped")) {
            line("untraceability: skipped (" + u["skipped"].get<std::string>() + ")");
        } else {
            line(fmt::format("untraceability: {} runs ({} converged), horizon {:.1f} s, {} distinct partitions{}",
                             u["runs"].get<std::size_t>(), u["converged_runs"].get<std::size_t>(),
                             u["horizon"].get<double>(), u["distinct_partitions"].get<std::size_t>(),
                             u["inconclusive"].get<bool>() ? " [inconclusive: " + u["notice"].get<std::string>() + "]" : ""));
            line(fmt::format("{:>6} {:>10} {:>10} {:>10} {:>10}", "robot", "F(x)", "p(x)", "F(y)", "p(y)"));
            for (const auto& r : u["robots"])
                line(fmt::format("{:>6} {:>10} {:>10} {:>10} {:>10}", r["robot"].get<std::size_t>(),
                                 f_text(r["F_x"]), p_text(r["p_x"].get<double>()), f_text(r["F_y"]),
                                 p_text(r["p_y"].get<double>())));
            double lo = 1.0;
            for (const auto& p : u["rand_indices"]) lo = std::min(lo, p["rand_index"].get<double>());
            line(fmt::format("lowest pairwise Rand index: {:.3f}", lo));
        }
        line("");
    }
    return out;
}

}  // namespace swarmsyn
