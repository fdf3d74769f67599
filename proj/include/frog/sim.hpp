#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "frog/params.hpp"
#include "frog/scheduler.hpp"
#include "frog/vertex.hpp"

namespace frog {

enum class Truncation { StepCap, DepthExtinct, AllRemoved };

inline const char* to_string(Truncation t) {
    switch (t) {
        case Truncation::StepCap: return "step_cap";
        case Truncation::DepthExtinct: return "depth_extinct";
        default: return "all_removed";
    }
}

enum class Phase : std::uint8_t { Asleep, Awake, AwakeUp, AwakeDown, Removed };

enum class KillReason : std::uint8_t { HitRoot, HitVisited, EarlyRemoval, DepthCap };

/// Convention for the initially awake frog in the recursive model.
///
/// BernoulliReturn: after its forced first step to a child, the frog
/// behaves like a freshly woken frog (returns to the root with
/// probability rho), which makes the t=0 root-visit law exactly
/// Bernoulli(rho).  PureDescent: the forced step counts as the frog's
/// move away from the root, so it descends forever; this is the
/// variant whose woken set always contains a full ray below the first
/// child, as the product bound on P(A_t) requires.
enum class RootFrogMode { BernoulliReturn, PureDescent };

struct KillHistogram {
    long long hit_root = 0;
    long long hit_visited = 0;
    long long early = 0;
    long long depth_cap = 0; // includes frogs culled below the sleeper region

    friend bool operator==(const KillHistogram&, const KillHistogram&) = default;
};

struct SimConfig {
    ModelParams params;
    int depth_cap = 10;
    long long step_cap = 10'000'000;
    SchedulerPolicy policy = SchedulerPolicy::UniformRandom;
    int sleeper_depth = -1; // -1: sleepers at every site to depth_cap
    bool record_site_visits = false;
    bool record_woken_sites = false;
    RootFrogMode root_mode = RootFrogMode::BernoulliReturn;
    bool cull_below_sleepers = true;

    int effective_sleeper_depth() const { return sleeper_depth < 0 ? depth_cap : sleeper_depth; }

    void validate() const {
        if (params.d < 2) throw std::invalid_argument("SimConfig: d must be >= 2");
        if (!(params.p >= 0.0 && params.p <= 1.0))
            throw std::invalid_argument("SimConfig: p outside [0,1]");
        if (depth_cap < 0) throw std::invalid_argument("SimConfig: negative depth cap");
        if (step_cap < 1) throw std::invalid_argument("SimConfig: step cap must be >= 1");
        if (sleeper_depth > depth_cap)
            throw std::invalid_argument("SimConfig: sleeper depth exceeds depth cap");
    }
};

/// What one simulation run produced.  The per-site map and woken-site
/// list are filled only when requested in the config; the rfm-specific
/// fields stay defaulted for the plain frog model.
struct TrialOutcome {
    long long root_visits = 0;
    long long frogs_woken = 0;
    long long steps_used = 0;
    long long sleepers_materialized = 0;
    long long sleepers_remaining = 0;
    Truncation truncation = Truncation::AllRemoved;

    // ordered so that serialization is deterministic
    std::map<Vertex, long long> per_site_visits;
    std::vector<Vertex> woken_sites;

    // recursive-model extras
    KillHistogram kills;
    bool a_event = false;
    std::vector<std::uint8_t> sibling_entered; // per child of parent(x), 1-based, 0 = x slot

    friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

/// Lazily materialized site states, keyed by path.  Only touched sites
/// exist; a non-root site within the sleeper region is born holding a
/// sleeper.
struct SiteState {
    long long visit_count = 0;
    bool visited = false;
    bool has_sleeper = false;
    std::int16_t sleeping_children = -1; // -1: not yet initialized
};

class SiteTable {
public:
    SiteTable(int d, int sleeper_depth) : d_(d), sleeper_depth_(sleeper_depth) {
        SiteState& r = map_[Vertex::root()];
        r.visited = true;
        r.sleeping_children = static_cast<std::int16_t>(sleeper_depth_ >= 1 ? d_ : 0);
    }

    /// Fetch the state for v, materializing it on first touch.
    SiteState& touch(const Vertex& v) {
        auto [it, inserted] = map_.try_emplace(v);
        SiteState& s = it->second;
        if (inserted) {
            int depth = v.depth();
            if (!v.is_root() && depth <= sleeper_depth_) {
                s.has_sleeper = true;
                ++sleepers_seen_;
            }
            s.sleeping_children =
                static_cast<std::int16_t>(depth < sleeper_depth_ ? d_ : 0);
        }
        return s;
    }

    SiteState* find(const Vertex& v) {
        auto it = map_.find(v);
        return it == map_.end() ? nullptr : &it->second;
    }
    const SiteState* find(const Vertex& v) const {
        auto it = map_.find(v);
        return it == map_.end() ? nullptr : &it->second;
    }

    long long sleepers_materialized() const { return sleepers_seen_; }

    const std::unordered_map<Vertex, SiteState, VertexHash>& raw() const { return map_; }

private:
    int d_;
    int sleeper_depth_;
    long long sleepers_seen_ = 0;
    std::unordered_map<Vertex, SiteState, VertexHash> map_;
};

} // namespace frog
