#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_set>
#include <vector>

#include "frog/instructions.hpp"
#include "frog/sim.hpp"

namespace frog {

/// Extra removals layered on top of the recursive model's own killing
/// rules.  Every mode only removes frogs earlier, so per-site visit
/// counts under any policy are dominated by the NONE-policy run on the
/// same instruction stacks.
struct EarlyRemovalPolicy {
    enum class Mode { None, RandomBernoulli, SiteList, ExtraKill };

    Mode mode = Mode::None;
    double q = 0.0;                                    // RandomBernoulli
    std::unordered_set<Vertex, VertexHash> sites;      // SiteList: removed on wake
    std::function<double(int)> extra_kill_of_s;        // ExtraKill: S -> probability

    static EarlyRemovalPolicy none() { return {}; }
    static EarlyRemovalPolicy random_bernoulli(double q) {
        EarlyRemovalPolicy p;
        p.mode = Mode::RandomBernoulli;
        p.q = q;
        return p;
    }
    static EarlyRemovalPolicy site_list(std::vector<Vertex> vs) {
        EarlyRemovalPolicy p;
        p.mode = Mode::SiteList;
        p.sites.insert(vs.begin(), vs.end());
        return p;
    }
    static EarlyRemovalPolicy extra_kill(std::function<double(int)> f) {
        EarlyRemovalPolicy p;
        p.mode = Mode::ExtraKill;
        p.extra_kill_of_s = std::move(f);
        return p;
    }
};

/// All vertices of the subtree under the root's child `child`, down to
/// `depth` levels, for SiteList experiments.
std::vector<Vertex> subtree_vertices(int d, int child, int depth);

/// RFM(d,p), driven by per-vertex instruction stacks.  Stage-1 frogs
/// read the up-stack of their vertex (0: toward the root, k: switch
/// down to child k); stage-2 frogs read the down-stack.  A frog
/// reaching the root is counted and removed; a stage-2 frog landing on
/// a visited site is removed without waking anyone.
TrialOutcome run_rfm(const SimConfig& config, const EarlyRemovalPolicy& policy,
                     std::uint64_t trial_seed);

struct VtSample {
    int t = 0;
    long long v = 0;
    bool a_event = false;
    std::vector<std::uint8_t> sibling_entered;
    TrialOutcome outcome;
};

/// Truncated visit count V_t: sleepers exactly at depths 1..t, the
/// rest of the tree empty.  Records whether any frog entered a sibling
/// subtree of the first-visited grandchild of the root (the event A_t;
/// the classical comparison applies to d = 2, for larger d the
/// per-sibling flags are reported as data).
VtSample sample_vt(int t, const ModelParams& params, long long step_cap,
                   std::uint64_t trial_seed,
                   RootFrogMode mode = RootFrogMode::BernoulliReturn);

/// Mean per-site visit counts over seeded trials.
std::map<Vertex, double> visits_profile(const SimConfig& config,
                                        const EarlyRemovalPolicy& policy, long long trials,
                                        std::uint64_t master_seed);

} // namespace frog
