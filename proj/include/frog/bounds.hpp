#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frog/params.hpp"
#include "frog/rng.hpp"
#include "frog/sim.hpp"

namespace frog {

/// Lower bound on P(A_t), the probability that the sibling subtree of
/// the first-visited grandchild of the root is ever entered when
/// sleepers reach depth t:
///
///   P(A_t) >= 1 - prod_{i=0}^{t-1} (1 - rho^i (1-rho)/2).
///
/// Each factor is the chance that the awake frog at distance i+1 on a
/// woken ray fails to climb i levels and then step into the sibling.
/// Factors lie in (0,1], so the direct product is numerically benign.
double pa_lower_bound(int t, double rho);

/// Limit of pa_lower_bound(t, rho) as t grows (the factors' deviations
/// are summable, so the product converges).
double pa_lower_bound_limit(double rho);

struct ThresholdResult {
    int T = 0;
    bool found = false;
    double rho_star = 0.0;
    double p_star = 0.0;
    double tol = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int crossings = 0; // sign changes seen by the coarse scan
};

/// Smallest rho in (0,1) with rho * (1 + pa_lower_bound(T, rho)) > 1,
/// located by a coarse 1e-3 scan (monotonicity of the map is not taken
/// for granted; multiple crossings would be reported) and bisection.
ThresholdResult critical_rho(int T, double tol);

enum class MomentBase { Zero, Bernoulli };

/// Rigorous per-t bounds derived from the visit-count recursion
///   V_{t+1} = Bin(V^x_t + 1, rho) + 1{A_{t+1}} Bin(V^y_t, rho),
/// with every remainder kept explicit.  x_hi entries are undefined
/// until the mean lower bound is positive.
struct MomentSequences {
    double rho = 0.0;
    MomentBase base = MomentBase::Bernoulli;
    std::vector<double> pa_lb;  // pa_lb[t], t >= 1 (entry 0 is 0)
    std::vector<double> ev_lo;  // lower bound on E V_t
    std::vector<double> ev_hi;  // upper bound on E V_t
    std::vector<double> ev2_hi; // upper bound on E V_t^2
    std::vector<std::optional<double>> x_hi;  // upper bound on E V_t^2 / (E V_t)^2
    std::vector<std::optional<double>> pz_lb; // lower bound on P(V_t > E V_t / 2)

    int horizon() const { return static_cast<int>(ev_lo.size()) - 1; }
};

MomentSequences compute_moment_sequences(double rho, int T, MomentBase base);

/// (2 - sqrt 2)/4, the drift below which the dominating branching
/// random walk dies out toward the root.
double q_star();

/// min over theta of p e^theta + 2(1-p) e^{-theta} = 2 sqrt(2 p (1-p)),
/// the per-step growth of the dominating branching random walk (no
/// branching toward the root, binary split away).
double brw_min_growth(double p);

struct PzReport {
    int t = 0;
    double rho = 0.0;
    long long trials = 0;
    double pz_bound = 0.0;     // 1 / (4 x_hi(t))
    double empirical = 0.0;    // fraction of trials with V_t > mean/2
    double empirical_mean = 0.0;
    double se = 0.0;
    bool pass = false;
};

/// Monte Carlo check of the second-moment tail bound at small t:
/// P(V_t > E^ V_t / 2) >= pz_lb(t) - 3 SE, with E^ the empirical mean.
PzReport pz_empirical_check(int t, double rho, long long trials, std::uint64_t seed,
                            RootFrogMode mode = RootFrogMode::BernoulliReturn);

/// Sample the visit-count recursion directly, with 1{A} replaced by a
/// Bernoulli(pa_lower_bound(t)) surrogate -- a documented lower-bound
/// proxy, not the exact law.
long long sample_rde(int t, double rho, MomentBase base, Stream& rng);

} // namespace frog
