#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frog/bounds.hpp"
#include "frog/coupling.hpp"
#include "frog/fm.hpp"
#include "frog/sweep.hpp"

namespace frog {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Comment header carried by every output file: artifact version plus
/// the fully resolved configuration, so identical headers guarantee
/// identical bodies.
std::string header_comment(const ConfigEcho& echo);

std::string format_number(double x);

std::string trials_csv(const ConfigEcho& echo, const SimConfig& cfg,
                       const std::vector<TrialOutcome>& outcomes, bool rfm_columns,
                       int sleeper_t = -1);

std::string couple_csv(const ConfigEcho& echo, const std::string& kind,
                       const std::vector<CoupledOutcome>& outcomes);

/// JSON report for the first invariant violation of a coupled batch
/// (schema frogsim/violation/v1); replayable from the recorded seed.
std::string violation_json(const std::string& kind_label,
                           const std::vector<CoupledOutcome>& outcomes);

std::string threshold_json(const ThresholdResult& res);

std::string moments_csv(const ConfigEcho& echo, const MomentSequences& m);

std::string sweep_csv(const ConfigEcho& echo, const SweepReport& rep);

std::string summary_footer(const RunSummary& s);

} // namespace frog
