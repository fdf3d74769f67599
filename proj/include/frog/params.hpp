#pragma once

#include <stdexcept>

namespace frog {

/// Upward-return probability of a p-biased walk: p/(1-p) for p < 1/2,
/// and 1 beyond.
inline double rho_of_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("rho_of_p: p outside [0,1]");
    if (p >= 0.5) return 1.0;
    return p / (1.0 - p);
}

/// Inverse of rho_of_p on [0, 1/2).
inline double p_of_rho(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("p_of_rho: rho outside [0,1]");
    return rho / (1.0 + rho);
}

/// Tree degree and drift shared by every simulator.
struct ModelParams {
    int d = 2;        // tree degree, >= 2
    double p = 0.0;   // drift toward the root
    double rho = 0.0; // derived upward probability

    static ModelParams from_p(int d, double p) {
        check_degree(d);
        ModelParams m;
        m.d = d;
        m.p = p;
        m.rho = rho_of_p(p);
        return m;
    }
    static ModelParams from_rho(int d, double rho) {
        check_degree(d);
        ModelParams m;
        m.d = d;
        m.rho = rho;
        m.p = p_of_rho(rho);
        return m;
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    static void check_degree(int d) {
        if (d < 2) throw std::invalid_argument("ModelParams: degree must be >= 2");
        if (d > 250) throw std::invalid_argument("ModelParams: degree too large");
    }
};

} // namespace frog
