#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frog/sim.hpp"

namespace frog {

/// Block embedding of the d-ary tree into the kd-ary tree: child i of
/// the small tree owns the index block G(i) = {k(i-1)+1, ..., ki}, and
/// a small-tree vertex v corresponds to the product tree over the
/// blocks of its coordinates.
struct Embedding {
    int d = 2;
    int k = 1;

    int block_lo(int i) const { return k * (i - 1) + 1; }
    int block_hi(int i) const { return k * i; }
    bool in_block(int big_index, int i) const {
        return big_index >= block_lo(i) && big_index <= block_hi(i);
    }
    int block_of(int big_index) const { return (big_index - 1) / k + 1; }

    /// Is u a vertex of the product tree attached to the root path of v?
    bool in_path_tree(const Vertex& u, const Vertex& v) const {
        if (u.depth() > v.depth()) return false;
        for (int i = 0; i < u.depth(); ++i)
            if (!in_block(u.path()[i], v.path()[i])) return false;
        return true;
    }

    /// Is u a leaf of the product tree of v (same depth, blockwise match)?
    bool is_leaf_of(const Vertex& u, const Vertex& v) const {
        return u.depth() == v.depth() && in_path_tree(u, v);
    }
};

struct Violation {
    long long tick = 0;
    std::string kind;
    std::string detail;
};

/// Online record of checked coupling invariants; any entry means an
/// implementation bug somewhere, never statistical noise.  A violation
/// aborts the run, leaving the seed for replay.
struct InvariantLog {
    std::uint64_t trial_seed = 0;
    long long ticks = 0;
    long long checks = 0;
    bool aborted = false;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void record(long long tick, std::string kind, std::string detail) {
        if (violations.size() < 16)
            violations.push_back({tick, std::move(kind), std::move(detail)});
        else
            ++overflow_;
    }
    long long dropped() const { return overflow_; }

private:
    long long overflow_ = 0;
};

struct ExtraKillCell {
    long long events = 0;
    long long kills = 0;
};

struct CoupledOutcome {
    TrialOutcome small;
    TrialOutcome large;
    InvariantLog log;
    // rfm-plus1 only: down-move events of the follower binned by its
    // sleeping-children count S' at the move
    std::vector<ExtraKillCell> extra_kill_by_s;
};

/// Lock-step pair FM(d,p) / modified FM(kd,p).  The follower mirrors
/// up-moves, resolves down-moves uniformly inside the leader's block,
/// and wakes only when the leader wakes.  Checked invariants: awake
/// bijection, blockwise coordinates (hence equal displacement), and
/// first-visit correspondence between a vertex and its product-tree
/// leaves (which is what guarantees a sleeper is available whenever
/// the leader wakes one).
CoupledOutcome run_coupled_fm(int d, int k, double p, int depth_cap, long long step_cap,
                              std::uint64_t trial_seed, bool check_invariants = true);

/// Lock-step pair RFM(d,p) / RFM'(d+1,p).  The follower mirrors
/// up-moves and removals and, on a waking down-move, moves to a
/// uniformly chosen sleeper child.  Checked invariants: bijection,
/// paired frogs on paired vertices at equal depth, and the
/// sleeping-children ledgers S(f)+1 = S(f') and S(v)+1 = S(v')
/// (checked for depths strictly above the truncation boundary, where
/// both trees still have live child sets).
CoupledOutcome run_coupled_rfm(int d, double p, int depth_cap, long long step_cap,
                               std::uint64_t trial_seed, bool check_invariants = true,
                               RootFrogMode mode = RootFrogMode::BernoulliReturn);

/// Marginal extra-removal probability (d+1-S')/(d(d+1)) that turns the
/// follower of the rfm coupling into a modified RFM(d+1,p).
double effective_extra_kill(int d, int s_prime);

struct DominanceReport {
    bool pass = false;
    double worst_gap = 0.0;      // max over thresholds of ECDF_large - ECDF_small
    long long worst_threshold = 0;
    double margin = 0.0;
};

/// One-sided empirical-CDF comparison: flags any threshold where the
/// larger model's ECDF exceeds the smaller model's by more than
/// margin standard errors (domination means ECDF_large <= ECDF_small).
DominanceReport check_dominance(const std::vector<long long>& samples_small,
                                const std::vector<long long>& samples_large, double margin);

/// Erase every loop that starts with a step away from the root.
/// Consecutive path entries must differ in depth by exactly one.
std::vector<Vertex> downward_loop_erase(const std::vector<Vertex>& path);

/// One trial of FM, FM' and the recursive model driven by the same
/// per-frog step draws, the recursive frogs following the downward
/// loop erasure of their FM walk.  On this shared randomness the three
/// processes nest pathwise.
struct ChainOutcome {
    long long fm_visits = 0;
    long long fmp_visits = 0;
    long long rfm_visits = 0;
    bool visits_ordered = false; // rfm <= fmp <= fm
    bool woken_nested = false;   // woken sets nest the same way
    bool extinct = false;        // no run was cut off by the step cap
};

ChainOutcome run_chain_trial(const SimConfig& config, std::uint64_t trial_seed,
                             long long per_frog_step_guard = 1'000'000);

} // namespace frog
