#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frog {

struct SweepCell {
    double p = 0.0;
    int depth = 0;
    long long trials = 0;
    double mean = 0.0;
    double se = 0.0;
};

struct SweepDiagnostic {
    double p = 0.0;
    double growth_ratio = 0.0; // deepest mean over shallowest mean
    bool growth_consistent = false;
    std::string label; // "consistent with recurrence" / "consistent with transience"
};

/// Truncated root-visit means over a (p, depth-cap) grid, with a
/// qualitative growth diagnostic per p.  The diagnostic is a labeled
/// heuristic: finite truncation cannot decide recurrence, it only
/// separates visit counts that keep growing with depth from ones that
/// saturate.
struct SweepReport {
    int d = 2;
    long long trials = 0;
    std::vector<SweepCell> cells;
    std::vector<SweepDiagnostic> diagnostics;
};

SweepReport run_sweep(int d, const std::vector<double>& p_grid,
                      const std::vector<int>& depth_grid, long long trials,
                      long long step_cap, std::uint64_t master_seed, int workers = 1);

} // namespace frog
