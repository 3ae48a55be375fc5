#pragma once

#include <span>
#include <string>

#include "swarmsyn/io.hpp"

namespace swarmsyn {

/// Membership table per run, community count and ST per (S, M), and one
/// untraceability block per swarm size that has at least two runs with
/// trajectories. Runs are grouped by swarm size; a notice is attached when
/// more than one size is present.
json build_report(std::span<const LoadedRun> runs);

/// Aligned plain-text rendering of build_report(). p-values below
/// kReportedZeroP print as 0.00.
std::string report_text(const json& report);

}  // namespace swarmsyn
