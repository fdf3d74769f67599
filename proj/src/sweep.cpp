#include "frog/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frog/fm.hpp"

namespace frog {

SweepReport run_sweep(int d, const std::vector<double>& p_grid,
                      const std::vector<int>& depth_grid, long long trials,
                      long long step_cap, std::uint64_t master_seed, int workers) {
    if (p_grid.empty() || depth_grid.empty())
        throw std::invalid_argument("run_sweep: empty grid");
    std::vector<int> depths = depth_grid;
    std::sort(depths.begin(), depths.end());

    SweepReport rep;
    rep.d = d;
    rep.trials = trials;
    std::uint64_t cell_tag = 0;
    for (double p : p_grid) {
        double shallow_mean = 0.0, deep_mean = 0.0, shallow_se = 0.0, deep_se = 0.0;
        for (std::size_t di = 0; di < depths.size(); ++di) {
            SimConfig cfg;
            cfg.params = ModelParams::from_p(d, p);
            cfg.depth_cap = depths[di];
            cfg.step_cap = step_cap;
            RunSummary s = estimate_root_visits(cfg, trials, fold(master_seed, ++cell_tag),
                                                false, workers);
            SweepCell cell;
            cell.p = p;
            cell.depth = depths[di];
            cell.trials = trials;
            cell.mean = s.mean;
            cell.se = std::sqrt(s.variance / static_cast<double>(trials));
            rep.cells.push_back(cell);
            if (di == 0) {
                shallow_mean = cell.mean;
                shallow_se = cell.se;
            }
            if (di + 1 == depths.size()) {
                deep_mean = cell.mean;
                deep_se = cell.se;
            }
        }
        SweepDiagnostic diag;
        diag.p = p;
        double base = std::max(shallow_mean, 1e-9);
        diag.growth_ratio = deep_mean / base;
        double pooled = std::sqrt(shallow_se * shallow_se + deep_se * deep_se);
        diag.growth_consistent =
            deep_mean - shallow_mean > 3.0 * pooled && diag.growth_ratio >= 1.25;
        diag.label = diag.growth_consistent ? "consistent with recurrence"
                                            : "consistent with transience";
        rep.diagnostics.push_back(diag);
    }
    return rep;
}

} // namespace frog
