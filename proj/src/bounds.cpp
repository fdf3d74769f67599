#include "frog/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "frog/rfm.hpp"

namespace frog {

double pa_lower_bound(int t, double rho) {
    if (t < 1) throw std::domain_error("pa_lower_bound: t must be >= 1");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("pa_lower_bound: rho outside [0,1]");
    double prod = 1.0;
    double rpow = 1.0;
    double half = (1.0 - rho) / 2.0;
    for (int i = 0; i < t; ++i) {
        prod *= 1.0 - rpow * half;
        rpow *= rho;
    }
    return 1.0 - prod;
}

double pa_lower_bound_limit(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::domain_error("pa_lower_bound_limit: rho outside [0,1]");
    double prod = 1.0;
    double rpow = 1.0;
    double half = (1.0 - rho) / 2.0;
    for (int i = 0; i < 100000; ++i) {
        double f = rpow * half;
        if (f < 1e-18) break;
        prod *= 1.0 - f;
        rpow *= rho;
    }
    return 1.0 - prod;
}

namespace {
double threshold_map(double rho, int T) { return rho * (1.0 + pa_lower_bound(T, rho)); }
} // namespace

ThresholdResult critical_rho(int T, double tol) {
    if (T < 1) throw std::domain_error("critical_rho: T must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("critical_rho: tol must be positive");
    ThresholdResult res;
    res.T = T;
    res.tol = tol;

    const double grid = 1e-3;
    double prev_rho = grid;
    double prev_val = threshold_map(prev_rho, T);
    double first_lo = 0.0, first_hi = 0.0;
    for (int k = 2; k * grid < 1.0; ++k) {
        double rho = k * grid;
        double val = threshold_map(rho, T);
        if ((prev_val - 1.0) * (val - 1.0) < 0.0) {
            if (res.crossings == 0) {
                first_lo = prev_rho;
                first_hi = rho;
            }
            ++res.crossings;
        }
        prev_rho = rho;
        prev_val = val;
    }
    if (res.crossings == 0) return res; // no crossing in (0,1); possible for tiny T

    double lo = first_lo, hi = first_hi; // map is below 1 at lo, above at hi
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (threshold_map(mid, T) > 1.0)
            hi = mid;
        else
            lo = mid;
    }
    res.found = true;
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.rho_star = 0.5 * (lo + hi);
    res.p_star = p_of_rho(res.rho_star);
    return res;
}

MomentSequences compute_moment_sequences(double rho, int T, MomentBase base) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("compute_moment_sequences: rho outside (0,1)");
    if (T < 1) throw std::domain_error("compute_moment_sequences: T must be >= 1");

    MomentSequences m;
    m.rho = rho;
    m.base = base;
    m.pa_lb.resize(T + 1, 0.0);
    m.ev_lo.resize(T + 1, 0.0);
    m.ev_hi.resize(T + 1, 0.0);
    m.ev2_hi.resize(T + 1, 0.0);
    m.x_hi.resize(T + 1);
    m.pz_lb.resize(T + 1);

    if (base == MomentBase::Bernoulli) {
        // V_0 ~ Bernoulli(rho): both first and second moment equal rho
        m.ev_lo[0] = rho;
        m.ev_hi[0] = rho;
        m.ev2_hi[0] = rho;
        m.x_hi[0] = 1.0 / rho;
    }
    if (m.x_hi[0]) m.pz_lb[0] = 1.0 / (4.0 * *m.x_hi[0]);

    // running product keeps the recursion linear in T; the factor
    // order matches pa_lower_bound exactly
    double prod = 1.0;
    double rpow = 1.0;
    double half = (1.0 - rho) / 2.0;
    for (int t = 0; t < T; ++t) {
        prod *= 1.0 - rpow * half;
        rpow *= rho;
        double pa = 1.0 - prod;
        m.pa_lb[t + 1] = pa;

        // E V_{t+1} = rho (1 + P(A_{t+1})) E V_t + rho, exact in the true
        // P(A) and increasing in it, so the lower bound propagates.
        m.ev_lo[t + 1] = rho * (1.0 + pa) * m.ev_lo[t] + rho;
        // P(A) <= 1 gives the mean upper bound.
        m.ev_hi[t + 1] = 2.0 * rho * m.ev_hi[t] + rho;

        // Second moment, every term explicit.  With X = Bin(V+1, rho),
        // Y = Bin(V', rho) and the random-sum identity
        // E Bin(N,rho)^2 = rho(1-rho) E N + rho^2 E N^2:
        //   E V_{t+1}^2 <= rho^2 (1+P(A)) E V^2 + 2 rho^2 (E V)^2
        //                  + [rho(1-rho)(1+P(A)) + 4 rho^2] E V + rho.
        // For the standalone upper bound, P(A) <= 1 throughout.
        m.ev2_hi[t + 1] = 2.0 * rho * rho * m.ev2_hi[t] +
                          2.0 * rho * rho * m.ev_hi[t] * m.ev_hi[t] +
                          (2.0 * rho * (1.0 - rho) + 4.0 * rho * rho) * m.ev_hi[t] + rho;

        // Ratio bound.  Dividing the expansion by
        // (E V_{t+1})^2 >= (rho (1+P(A)) E V_t)^2 leaves every term
        // decreasing in P(A) and in E V_t where they appear in a
        // denominator, so substituting pa_lb and ev_lo keeps the upper
        // bound rigorous.
        if (m.x_hi[t] && m.ev_lo[t] > 0.0) {
            double opa = 1.0 + pa;
            double r = ((1.0 - rho) / (rho * opa) + 4.0 / (opa * opa)) / m.ev_lo[t] +
                       1.0 / (rho * opa * opa * m.ev_lo[t] * m.ev_lo[t]);
            m.x_hi[t + 1] = *m.x_hi[t] / opa + 2.0 / (opa * opa) + r;
        } else if (!m.x_hi[t] && m.ev_lo[t + 1] > 0.0) {
            // first step out of the zero base: V_{t+1} is exactly
            // Bin(1, rho) there, and the direct quotient of the two
            // bounds is itself a valid ratio bound
            m.x_hi[t + 1] = m.ev2_hi[t + 1] / (m.ev_lo[t + 1] * m.ev_lo[t + 1]);
        }
        if (m.x_hi[t + 1]) m.pz_lb[t + 1] = 1.0 / (4.0 * *m.x_hi[t + 1]);
    }
    return m;
}

double q_star() { return (2.0 - std::sqrt(2.0)) / 4.0; }

double brw_min_growth(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("brw_min_growth: p outside (0,1)");
    return 2.0 * std::sqrt(2.0 * p * (1.0 - p));
}

PzReport pz_empirical_check(int t, double rho, long long trials, std::uint64_t seed,
                            RootFrogMode mode) {
    if (trials < 1) throw std::invalid_argument("pz_empirical_check: trials must be >= 1");
    ModelParams params = ModelParams::from_rho(2, rho);
    std::vector<long long> vs(trials);
    double mean = 0.0;
    for (long long i = 0; i < trials; ++i) {
        vs[i] = sample_vt(t, params, 1'000'000, trial_key(seed, i), mode).v;
        mean += static_cast<double>(vs[i]);
    }
    mean /= static_cast<double>(trials);

    long long over = 0;
    for (long long v : vs)
        if (static_cast<double>(v) > mean / 2.0) ++over;

    PzReport rep;
    rep.t = t;
    rep.rho = rho;
    rep.trials = trials;
    rep.empirical_mean = mean;
    rep.empirical = static_cast<double>(over) / static_cast<double>(trials);
    rep.se = std::sqrt(rep.empirical * (1.0 - rep.empirical) / static_cast<double>(trials));
    MomentSequences m = compute_moment_sequences(rho, std::max(t, 1), MomentBase::Bernoulli);
    rep.pz_bound = m.pz_lb[t] ? *m.pz_lb[t] : 0.0;
    rep.pass = rep.empirical >= rep.pz_bound - 3.0 * rep.se;
    return rep;
}

namespace {
long long binomial_draw(long long n, double prob, Stream& rng) {
    long long s = 0;
    for (long long i = 0; i < n; ++i)
        if (rng.next_unit() < prob) ++s;
    return s;
}
} // namespace

long long sample_rde(int t, double rho, MomentBase base, Stream& rng) {
    if (t == 0) {
        if (base == MomentBase::Zero) return 0;
        return rng.next_unit() < rho ? 1 : 0;
    }
    long long vx = sample_rde(t - 1, rho, base, rng);
    long long vy = sample_rde(t - 1, rho, base, rng);
    long long v = binomial_draw(vx + 1, rho, rng);
    if (rng.next_unit() < pa_lower_bound(t, rho)) v += binomial_draw(vy, rho, rng);
    return v;
}

} // namespace frog
