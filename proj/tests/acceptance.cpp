// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "frog/bounds.hpp"
#include "frog/coupling.hpp"
#include "frog/fm.hpp"
#include "frog/rfm.hpp"
#include "frog/sweep.hpp"
#include "frog/util.hpp"
#include "frog/walk.hpp"

using namespace frog;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  C%d  %s  (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.6g", x);
    return b;
}

// -- C1: threshold reproduction ---------------------------------------------
void c1() {
    auto t0 = std::chrono::steady_clock::now();
    ThresholdResult res = critical_rho(51, 1e-5);
    double secs = seconds_since(t0);
    bool pass = res.found && res.rho_star >= 0.7106 && res.rho_star <= 0.7108 &&
                res.p_star >= 0.4154 && res.p_star <= 0.4156 && secs < 1.0;
    report(1, pass, "threshold rho_star/p_star from the T=51 product bound",
           "rho_star=" + fmt(res.rho_star) + " p_star=" + fmt(res.p_star) + " time=" +
               fmt(secs) + "s");
}

// -- C2: branching-walk constant --------------------------------------------
void c2() {
    auto t0 = std::chrono::steady_clock::now();
    double qs = q_star();
    bool pass = std::abs(qs - (2.0 - std::sqrt(2.0)) / 4.0) <= 1e-12 &&
                std::abs(qs - 0.14644660940672624) <= 1e-12 &&
                std::abs(brw_min_growth(qs) - 1.0) <= 1e-6;
    for (int i = 1; i < 5000 && pass; ++i) {
        double p = i * 1e-4;
        if (std::abs(p - qs) < 1e-9) continue;
        double g = brw_min_growth(p);
        if ((p < qs && g >= 1.0) || (p > qs && g <= 1.0)) pass = false;
    }
    double secs = seconds_since(t0);
    pass = pass && secs < 1.0;
    report(2, pass, "q_star exact and growth crossing 1 there",
           "q_star=" + fmt(qs) + " growth(q_star)=" + fmt(brw_min_growth(qs)) + " time=" +
               fmt(secs) + "s");
}

// -- C3: coupling property suites -------------------------------------------
void c3() {
    auto t0 = std::chrono::steady_clock::now();
    const long long trials = 1000;
    long long violations = 0;
    long long runs = 0;
    int workers = default_worker_count();

    for (double p : {0.2, 0.3, 0.4}) {
        std::vector<long long> v(trials, 0);
        parallel_for_trials(trials, workers, [&](long long t) {
            CoupledOutcome o =
                run_coupled_fm(2, 2, p, 10, 2'000'000, trial_key(31000 + int(p * 100), t), true);
            v[t] = long(o.log.violations.size()) + (o.small.root_visits != o.large.root_visits);
        });
        for (long long x : v) violations += x;
        runs += trials;
    }
    for (int d : {2, 3})
        for (double p : {0.3, 0.4}) {
            std::vector<long long> v(trials, 0);
            parallel_for_trials(trials, workers, [&](long long t) {
                CoupledOutcome o = run_coupled_rfm(
                    d, p, 12, 2'000'000, trial_key(32000 + d * 100 + int(p * 100), t), true);
                v[t] =
                    long(o.log.violations.size()) + (o.small.root_visits != o.large.root_visits);
            });
            for (long long x : v) violations += x;
            runs += trials;
        }
    double secs = seconds_since(t0);
    bool pass = violations == 0 && secs < 300.0;
    report(3, pass, "coupled property suites run clean",
           std::to_string(runs) + " coupled trials, violations=" + std::to_string(violations) +
               ", time=" + fmt(secs) + "s");
}

// -- C4: extra-kill law -------------------------------------------------------
void c4() {
    const int d = 2;
    std::vector<ExtraKillCell> tally(d + 2);
    long long events = 0;
    long long trial = 0;
    while (events < 120000 && trial < 20000) {
        CoupledOutcome o = run_coupled_rfm(d, 0.4, 12, 2'000'000, trial_key(333, trial), false);
        for (int s = 0; s <= d + 1; ++s) {
            tally[s].events += o.extra_kill_by_s[s].events;
            tally[s].kills += o.extra_kill_by_s[s].kills;
        }
        events = 0;
        for (int s = 1; s <= d + 1; ++s) events += tally[s].events;
        ++trial;
    }
    bool pass = events >= 100000;
    std::string detail = "events=" + std::to_string(events);
    for (int s = 1; s <= d + 1; ++s) {
        double n = double(tally[s].events);
        if (n < 100) {
            pass = false;
            continue;
        }
        double hat = tally[s].kills / n;
        double early = hat - double(d + 1 - s) / (d + 1);
        double expect = effective_extra_kill(d, s);
        double se = std::sqrt(std::max(hat * (1 - hat), 1e-9) / n);
        if (std::abs(early - expect) > 3 * se) pass = false;
        detail += " S'=" + std::to_string(s) + ":" + fmt(early) + "/" + fmt(expect);
    }
    report(4, pass, "follower extra-removal law (d+1-S')/(d(d+1))", detail);
}

// -- C5: rho-return law -------------------------------------------------------
void c5() {
    bool pass = true;
    std::string detail;
    for (double p : {0.2, 0.3, 0.4}) {
        ModelParams m = ModelParams::from_p(2, p);
        const int n = 100000;
        double hat = estimate_parent_return(m, n, 60, 55001 + int(p * 1000));
        double se = std::sqrt(m.rho * (1 - m.rho) / n);
        if (std::abs(hat - m.rho) > 3 * se) pass = false;
        detail += "p=" + fmt(p) + ":" + fmt(hat) + "~" + fmt(m.rho) + " ";
    }
    report(5, pass, "parent-return probability equals rho", detail);
}

// -- C6: moment recursion behavior -------------------------------------------
void c6() {
    auto t0 = std::chrono::steady_clock::now();
    MomentSequences hi = compute_moment_sequences(0.72, 2000, MomentBase::Bernoulli);
    MomentSequences zero = compute_moment_sequences(0.72, 300, MomentBase::Zero);
    MomentSequences mid = compute_moment_sequences(0.5, 400, MomentBase::Zero);

    bool diverges = false;
    for (int t = 0; t <= 300; ++t)
        if (zero.ev_lo[t] > 1e3) {
            diverges = true;
            break;
        }

    bool x_ok = true;
    double sup = 0.0;
    int argmax = -1;
    for (int t = 0; t <= 2000; ++t) {
        if (!hi.x_hi[t]) {
            x_ok = false;
            break;
        }
        if (*hi.x_hi[t] > sup) {
            sup = *hi.x_hi[t];
            argmax = t;
        }
    }
    int stable_from = 2001;
    if (x_ok) {
        stable_from = 1;
        for (int t = 2000 - 1; t >= 1; --t)
            if (std::abs(*hi.x_hi[t + 1] - *hi.x_hi[t]) >= 1e-9) {
                stable_from = t + 1;
                break;
            }
    }
    bool stabilizes = x_ok && std::isfinite(sup) && argmax < 500 && stable_from < 2000;

    double fp = 0.5 / (1.0 - 0.5 * (1.0 + pa_lower_bound_limit(0.5)));
    bool converges = std::abs(mid.ev_lo[400] - fp) < 1e-9;

    double secs = seconds_since(t0);
    bool pass = diverges && stabilizes && converges && secs < 1.0;
    report(6, pass, "moment recursions: divergence, ratio sup, fixed point",
           "ev_lo(300)=" + fmt(zero.ev_lo[300]) + " sup_x=" + fmt(sup) + "@t" +
               std::to_string(argmax) + " stable_from=" + std::to_string(stable_from) +
               " |ev-fp|=" + fmt(std::abs(mid.ev_lo[400] - fp)) + " time=" + fmt(secs) + "s");
}

// -- C7: small-instance oracles ----------------------------------------------
void c7() {
    bool pass = true;
    std::string detail;
    const int n = 100000;
    for (double rho : {0.5, 0.72}) {
        ModelParams params = ModelParams::from_rho(2, rho);
        // V0 against Bernoulli(rho)
        long long ones = 0;
        for (int i = 0; i < n; ++i) {
            long long v = sample_vt(0, params, 100000, trial_key(61000 + int(rho * 100), i)).v;
            if (v < 0 || v > 1) pass = false;
            ones += v;
        }
        double se0 = std::sqrt(rho * (1 - rho) / n);
        if (std::abs(ones / double(n) - rho) > 3 * se0) pass = false;
        detail += "V0(" + fmt(rho) + ")=" + fmt(ones / double(n)) + " ";

        // V1 against the exact enumeration of the depth-2 outcome tree:
        // two independent stage-1 frogs at depth 1, each ascending with
        // probability rho; depth-2 collisions never add root visits
        double mean_exact = 0.0, m2_exact = 0.0;
        double probs[3] = {rho, (1 - rho) / 2, (1 - rho) / 2};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                int visits = (a == 0) + (b == 0);
                mean_exact += probs[a] * probs[b] * visits;
                m2_exact += probs[a] * probs[b] * visits * visits;
            }
        double var_exact = m2_exact - mean_exact * mean_exact;
        double mean = 0.0;
        for (int i = 0; i < n; ++i)
            mean += double(sample_vt(1, params, 100000, trial_key(62000 + int(rho * 100), i)).v);
        mean /= n;
        double se1 = std::sqrt(var_exact / n);
        if (std::abs(mean - mean_exact) > 3 * se1) pass = false;
        detail += "V1(" + fmt(rho) + ")=" + fmt(mean) + "~" + fmt(mean_exact) + " ";
    }
    report(7, pass, "V0 and V1 match exact small-instance enumeration", detail);
}

// -- C8: dominance directions --------------------------------------------------
void c8() {
    auto t0 = std::chrono::steady_clock::now();
    const long long trials = 1000;
    int workers = default_worker_count();
    SimConfig cfg;
    cfg.params = ModelParams::from_p(2, 0.4);
    cfg.depth_cap = 10;
    cfg.step_cap = 4'000'000;
    std::vector<int> bad(trials, 0);
    parallel_for_trials(trials, workers, [&](long long t) {
        ChainOutcome o = run_chain_trial(cfg, trial_key(71000, t));
        bad[t] = !(o.extinct && o.visits_ordered && o.woken_nested);
    });
    long long violations = 0;
    for (int b : bad) violations += b;

    // truncated visit means nondecreasing in the sleeper depth
    ModelParams params = ModelParams::from_p(2, 0.42);
    const int n = 20000;
    bool monotone = true;
    double prev_mean = -1.0, prev_var = 0.0;
    std::string vt_detail;
    for (int t = 0; t <= 6; ++t) {
        double m = 0.0, m2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double v = double(sample_vt(t, params, 400000, trial_key(72000 + t, i)).v);
            m += v;
            m2 += v * v;
        }
        m /= n;
        double var = m2 / n - m * m;
        if (prev_mean >= 0.0) {
            double se = std::sqrt((var + prev_var) / n);
            if (m < prev_mean - 3 * se) monotone = false;
        }
        prev_mean = m;
        prev_var = var;
        vt_detail += fmt(m) + (t < 6 ? "<" : "");
    }
    double secs = seconds_since(t0);
    bool pass = violations == 0 && monotone;
    report(8, pass, "pathwise chain rfm<=fmprime<=fm and V_t monotone in t",
           "chain violations=" + std::to_string(violations) + " means " + vt_detail +
               " time=" + fmt(secs) + "s");
}

// -- C9: sweep heuristic ---------------------------------------------------------
void c9() {
    auto t0 = std::chrono::steady_clock::now();
    int workers = default_worker_count();
    SweepReport grid = run_sweep(2, {0.30, 0.35, 0.40, 0.45}, {4, 8, 12}, 400, 200000,
                                 81000, workers);
    bool monotone = true;
    std::string detail = "ratios ";
    for (std::size_t i = 0; i < grid.diagnostics.size(); ++i) {
        detail += fmt(grid.diagnostics[i].growth_ratio) + " ";
        if (i > 0) {
            double prev = grid.diagnostics[i - 1].growth_ratio;
            double cur = grid.diagnostics[i].growth_ratio;
            if (cur < prev * 0.9) monotone = false; // nondecreasing, small slack
        }
    }
    bool flags_monotone = true;
    for (std::size_t i = 1; i < grid.diagnostics.size(); ++i)
        if (grid.diagnostics[i - 1].growth_consistent && !grid.diagnostics[i].growth_consistent)
            flags_monotone = false;

    SweepReport low = run_sweep(2, {0.05, 0.12}, {4, 8, 12}, 400, 200000, 82000, workers);
    bool low_negative = true;
    for (auto& d : low.diagnostics) {
        if (d.growth_consistent) low_negative = false;
        detail += "low(" + fmt(d.p) + ")=" + fmt(d.growth_ratio) + " ";
    }
    double secs = seconds_since(t0);
    bool pass = monotone && flags_monotone && low_negative;
    report(9, pass, "recurrence sweep heuristic: growth monotone in p, negative below q*",
           detail + "time=" + fmt(secs) + "s");
}

} // namespace

int main() {
    std::printf("acceptance: frog-model simulation lab and bounds engine\n");
    c1();
    c2();
    c3();
    c4();
    c5();
    c6();
    c7();
    c8();
    c9();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
