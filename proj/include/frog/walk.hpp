#pragma once

#include "frog/params.hpp"
#include "frog/rng.hpp"
#include "frog/vertex.hpp"

namespace frog {

/// One step of the drifted walk from a unit draw, in place.  At the
/// root the move is a uniform child; elsewhere the parent with
/// probability p, otherwise a uniform child (possibly the one just
/// stepped from).  Returns true when the move went toward the root.
inline bool fm_apply_step(Vertex& v, const ModelParams& m, double u) {
    if (v.is_root()) {
        int k = 1 + static_cast<int>(u * m.d);
        if (k > m.d) k = m.d;
        v.descend(k);
        return false;
    }
    if (u < m.p) {
        v.ascend();
        return true;
    }
    double w = (u - m.p) / (1.0 - m.p);
    int k = 1 + static_cast<int>(w * m.d);
    if (k > m.d) k = m.d;
    v.descend(k);
    return false;
}

inline void fm_step_inplace(Vertex& v, const ModelParams& m, Stream& rng) {
    fm_apply_step(v, m, rng.next_unit());
}

inline Vertex sample_fm_step(const Vertex& v, const ModelParams& m, Stream& rng) {
    Vertex next = v;
    fm_step_inplace(next, m, rng);
    return next;
}

/// Empirical check of the rho-return law: walk a p-biased frog from one
/// level below a marked vertex and report the fraction of trials that
/// ever reach it before wandering `escape_depth` levels down.
inline double estimate_parent_return(const ModelParams& m, int trials, int escape_depth,
                                     std::uint64_t seed) {
    long long hits = 0;
    for (int t = 0; t < trials; ++t) {
        Stream s(fold(trial_key(seed, static_cast<std::uint64_t>(t)), kTagFrogPath));
        int depth = 1;
        while (depth > 0 && depth <= escape_depth) {
            depth += (s.next_unit() < m.p) ? -1 : +1;
        }
        if (depth == 0) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

} // namespace frog
