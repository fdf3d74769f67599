#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frog/bounds.hpp"
#include "frog/rfm.hpp"

using namespace frog;

TEST_CASE("pa_lower_bound closed forms") {
    CHECK(pa_lower_bound(1, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    for (double rho : {0.1, 0.3, 0.7, 0.9})
        CHECK(pa_lower_bound(1, rho) == doctest::Approx((1.0 - rho) / 2.0).epsilon(1e-14));
    CHECK(pa_lower_bound(10, 1.0) == 0.0); // degenerate: every factor is 1
    CHECK(pa_lower_bound(5, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(pa_lower_bound(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(pa_lower_bound(5, -0.2), std::domain_error);
    CHECK_THROWS_AS(pa_lower_bound(5, 1.2), std::domain_error);
}

TEST_CASE("pa_lower_bound is nondecreasing in t with a limit") {
    double prev = 0.0;
    for (int t = 1; t <= 80; ++t) {
        double v = pa_lower_bound(t, 0.7);
        CHECK(v >= prev);
        CHECK(v < 1.0);
        prev = v;
    }
    CHECK(pa_lower_bound_limit(0.7) == doctest::Approx(pa_lower_bound(2000, 0.7)).epsilon(1e-13));
    CHECK(pa_lower_bound_limit(0.7) >= prev);
}

TEST_CASE("pa bound at the published operating point") {
    double v = pa_lower_bound(51, 0.7107);
    CHECK(std::abs(0.7107 * (1.0 + v) - 1.0) <= 1e-3);
}

TEST_CASE("critical rho at T = 51") {
    ThresholdResult res = critical_rho(51, 1e-5);
    REQUIRE(res.found);
    CHECK(res.crossings == 1);
    CHECK(res.rho_star >= 0.7106);
    CHECK(res.rho_star <= 0.7108);
    CHECK(res.p_star >= 0.4154);
    CHECK(res.p_star <= 0.4156);
    CHECK(res.bracket_hi - res.bracket_lo <= 1e-5);
}

TEST_CASE("critical rho edge and monotonicity cases") {
    CHECK_FALSE(critical_rho(1, 1e-5).found); // rho(1 + (1-rho)/2) stays below 1
    double r51 = critical_rho(51, 1e-6).rho_star;
    double r200 = critical_rho(200, 1e-6).rho_star;
    CHECK(r200 <= r51 + 1e-6);
    for (int T : {20, 51}) {
        double a = critical_rho(T, 1e-6).rho_star;
        double b = critical_rho(T + 10, 1e-6).rho_star;
        CHECK(b <= a + 1e-6);
    }
    CHECK_THROWS_AS(critical_rho(0, 1e-5), std::domain_error);
    CHECK_THROWS_AS(critical_rho(51, 0.0), std::domain_error);
}

TEST_CASE("moment sequences diverge above the threshold") {
    MomentSequences m = compute_moment_sequences(0.72, 300, MomentBase::Zero);
    CHECK(m.ev_lo[300] > 1e3);
    // zero base: ratio undefined at t = 0, exact at t = 1
    CHECK_FALSE(m.x_hi[0].has_value());
    REQUIRE(m.x_hi[1].has_value());
    CHECK(*m.x_hi[1] == doctest::Approx(1.0 / 0.72).epsilon(1e-12));
}

TEST_CASE("moment sequences converge at rho = 0.5") {
    MomentSequences m = compute_moment_sequences(0.5, 400, MomentBase::Zero);
    double fp = 0.5 / (1.0 - 0.5 * (1.0 + pa_lower_bound_limit(0.5)));
    CHECK(std::abs(m.ev_lo[400] - fp) < 1e-9);
}

TEST_CASE("ratio bound stabilizes to a finite sup above threshold") {
    MomentSequences m = compute_moment_sequences(0.72, 2000, MomentBase::Bernoulli);
    REQUIRE(m.x_hi[0].has_value());
    CHECK(*m.x_hi[0] == doctest::Approx(1.0 / 0.72).epsilon(1e-12));
    double sup = 0.0;
    int argmax = -1;
    for (int t = 0; t <= 500; ++t) {
        REQUIRE(m.x_hi[t].has_value());
        if (*m.x_hi[t] > sup) {
            sup = *m.x_hi[t];
            argmax = t;
        }
    }
    CHECK(std::isfinite(sup));
    CHECK(argmax < 500);
    // increments eventually fall below 1e-9 and stay there
    int stable_from = -1;
    for (int t = 2000 - 1; t >= 1; --t) {
        if (std::abs(*m.x_hi[t + 1] - *m.x_hi[t]) >= 1e-9) {
            stable_from = t + 1;
            break;
        }
    }
    CHECK(stable_from < 2000);
    // whole-range sup equals the early sup
    for (int t = 0; t <= 2000; ++t) CHECK(*m.x_hi[t] <= sup + 1e-12);
}

TEST_CASE("moment sequence invariants") {
    MomentSequences m = compute_moment_sequences(0.6, 60, MomentBase::Bernoulli);
    for (int t = 0; t <= 60; ++t) {
        CHECK(m.pa_lb[t] >= 0.0);
        CHECK(m.pa_lb[t] < 1.0);
        if (t >= 1) CHECK(m.pa_lb[t] >= m.pa_lb[t - 1]);
        CHECK(m.ev_lo[t] <= m.ev_hi[t] + 1e-12);
        REQUIRE(m.x_hi[t].has_value());
        CHECK(*m.x_hi[t] >= 1.0);
        REQUIRE(m.pz_lb[t].has_value());
        CHECK(*m.pz_lb[t] > 0.0);
        CHECK(*m.pz_lb[t] <= 0.25);
        CHECK(*m.pz_lb[t] == doctest::Approx(1.0 / (4.0 * *m.x_hi[t])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(compute_moment_sequences(0.0, 10, MomentBase::Zero), std::domain_error);
    CHECK_THROWS_AS(compute_moment_sequences(1.0, 10, MomentBase::Zero), std::domain_error);
}

TEST_CASE("above the threshold the mean bound diverges and the ratio settles") {
    double rho_star = critical_rho(51, 1e-6).rho_star;
    for (double rho : {rho_star + 1e-3, 0.75, 0.85, 0.95}) {
        int T = rho < 0.72 ? 8000 : 3000;
        MomentSequences m = compute_moment_sequences(rho, T, MomentBase::Bernoulli);
        CHECK(m.ev_lo[T] > 1e3); // grows past any fixed bound
        double sup = 0.0;
        for (int t = 0; t <= T; ++t) {
            REQUIRE(m.x_hi[t].has_value());
            sup = std::max(sup, *m.x_hi[t]);
        }
        CHECK(std::isfinite(sup));
        // no late growth: the tail sits at or below the early peak
        double early_peak = 0.0;
        for (int t = 0; t <= std::min(T, 500); ++t) early_peak = std::max(early_peak, *m.x_hi[t]);
        for (int t = T - 100; t <= T; ++t) CHECK(*m.x_hi[t] <= early_peak + 1e-9);
    }
}

TEST_CASE("bound-mode recursion sampling stays below the empirical law") {
    // the Bernoulli(pa_lb) surrogate for the sibling-entry indicator
    // only under-feeds the recursion; the comparable simulation is the
    // pure-descent chain over the zero base at the same index
    double rho = 0.72;
    ModelParams params = ModelParams::from_rho(2, rho);
    const int n = 8000;
    for (int t : {1, 2, 3}) {
        double mb = 0.0, vb = 0.0, me = 0.0, ve = 0.0;
        for (int i = 0; i < n; ++i) {
            Stream rng(fold(trial_key(9100 + t, i), kTagExperiment));
            double b = double(sample_rde(t, rho, MomentBase::Zero, rng));
            mb += b;
            vb += b * b;
            double e = double(
                sample_vt(t, params, 200000, trial_key(9200 + t, i), RootFrogMode::PureDescent)
                    .v);
            me += e;
            ve += e * e;
        }
        mb /= n;
        me /= n;
        vb = vb / n - mb * mb;
        ve = ve / n - me * me;
        double pooled = std::sqrt((vb + ve) / n);
        CHECK(mb <= me + 3 * pooled);
    }
}

TEST_CASE("q_star and the branching walk growth") {
    CHECK(std::abs(q_star() - 0.14644660940672624) < 1e-12);
    CHECK(std::abs(q_star() - (2.0 - std::sqrt(2.0)) / 4.0) == 0.0);
    CHECK(std::abs(brw_min_growth(q_star()) - 1.0) < 1e-9);
    CHECK(brw_min_growth(0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(brw_min_growth(0.0), std::domain_error);
    CHECK_THROWS_AS(brw_min_growth(1.0), std::domain_error);
}

TEST_CASE("growth crosses one exactly at q_star") {
    double qs = q_star();
    for (int i = 1; i < 5000; ++i) {
        double p = i * 1e-4;
        if (std::abs(p - qs) < 1e-9) continue;
        double g = brw_min_growth(p);
        if (p < qs)
            CHECK(g < 1.0);
        else
            CHECK(g > 1.0);
    }
}

TEST_CASE("rde sampler base cases") {
    Stream rng(fold(trial_key(5, 0), kTagExperiment));
    const int n = 20000;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        long long v = sample_rde(0, 0.6, MomentBase::Bernoulli, rng);
        CHECK(v >= 0);
        CHECK(v <= 1);
        mean += double(v);
    }
    mean /= n;
    double se = std::sqrt(0.6 * 0.4 / n);
    CHECK(std::abs(mean - 0.6) < 3 * se);
    for (int i = 0; i < 100; ++i) CHECK(sample_rde(0, 0.6, MomentBase::Zero, rng) == 0);
}

TEST_CASE("tail bound holds empirically at small t") {
    PzReport r0 = pz_empirical_check(0, 0.6, 20000, 21);
    CHECK(r0.pass);
    CHECK(r0.empirical == doctest::Approx(r0.empirical_mean).epsilon(1e-12)); // Bernoulli case
    PzReport r1 = pz_empirical_check(1, 0.5, 20000, 22);
    CHECK(r1.pass);
    PzReport r3 = pz_empirical_check(3, 0.72, 20000, 23);
    CHECK(r3.pass);
    CHECK(r3.pz_bound > 0.0);
}

TEST_CASE("second-moment bound dominates direct simulation") {
    // the recursion over the Bernoulli base tracks the pure-descent
    // chain shifted by one level, and the truncated counts are
    // stochastically increasing in the sleeper depth, so ev2_hi(t)
    // bounds the simulated second moment at the same index
    MomentSequences m = compute_moment_sequences(0.72, 5, MomentBase::Bernoulli);
    ModelParams params = ModelParams::from_rho(2, 0.72);
    const int n = 10000;
    for (int t : {1, 2, 3}) {
        double m2 = 0.0;
        for (int i = 0; i < n; ++i) {
            long long v =
                sample_vt(t, params, 1'000'000, trial_key(31 + t, i), RootFrogMode::PureDescent)
                    .v;
            m2 += double(v) * double(v);
        }
        m2 /= n;
        double se = 3.0 * std::sqrt(m2 * m2 / n); // generous scale for the one-sided check
        CHECK(m2 <= m.ev2_hi[t] + se);
    }
}
