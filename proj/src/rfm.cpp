#include "frog/rfm.hpp"

#include <algorithm>
#include <stdexcept>

namespace frog {
namespace {

struct RfmFrog {
    Vertex pos;
    Vertex birth;
    Phase phase = Phase::AwakeUp;
    int up_steps = 0;
};

class RfmEngine {
public:
    RfmEngine(const SimConfig& config, const EarlyRemovalPolicy& policy,
              std::uint64_t trial_seed)
        : cfg_(config),
          policy_(policy),
          sleeper_depth_(config.effective_sleeper_depth()),
          sites_(config.params.d, sleeper_depth_),
          stacks_(fold(trial_seed, kTagStacks), config.params),
          sched_(fold(trial_seed, kTagScheduler)),
          policy_rng_(fold(trial_seed, kTagPolicy)) {
        cfg_.validate();
        cull_threshold_ = cfg_.cull_below_sleepers ? std::max(sleeper_depth_, 2)
                                                   : cfg_.depth_cap + 1;
        // the initially awake frog; its first move is the forced
        // down-step from the root
        RfmFrog f;
        f.pos = Vertex::root();
        f.birth = Vertex::root();
        f.phase = Phase::AwakeDown;
        frogs_.push_back(f);
        awake_.insert(0);
    }

    TrialOutcome run() {
        while (out_.steps_used < cfg_.step_cap && !awake_.empty()) {
            std::uint32_t id = awake_.pick(cfg_.policy, sched_);
            step(id);
        }
        out_.truncation = awake_.empty()
                              ? (cap_removed_ ? Truncation::DepthExtinct : Truncation::AllRemoved)
                              : Truncation::StepCap;
        finalize();
        return std::move(out_);
    }

private:
    void kill(std::uint32_t id, KillReason why) {
        RfmFrog& f = frogs_[id];
        f.phase = Phase::Removed;
        awake_.erase(id);
        switch (why) {
            case KillReason::HitRoot: ++out_.kills.hit_root; break;
            case KillReason::HitVisited: ++out_.kills.hit_visited; break;
            case KillReason::EarlyRemoval: ++out_.kills.early; break;
            case KillReason::DepthCap: ++out_.kills.depth_cap; break;
        }
    }

    void step(std::uint32_t id) {
        RfmFrog& f = frogs_[id];
        if (f.phase == Phase::AwakeUp) {
            int instr = stacks_.next_up(f.pos);
            if (instr == 0) {
                f.pos.ascend();
                ++f.up_steps;
                ++out_.steps_used;
                if (f.pos.is_root()) {
                    ++out_.root_visits;
                    kill(id, KillReason::HitRoot);
                    return;
                }
                SiteState& s = sites_.touch(f.pos);
                if (!s.visited)
                    throw std::logic_error("RFM: stage-1 frog ascended onto an unvisited site");
                ++s.visit_count;
                return;
            }
            f.phase = Phase::AwakeDown;
            down_move(id, instr);
            return;
        }
        // stage 2; the initial frog at the root takes its forced step here
        int k = stacks_.next_down(f.pos);
        down_move(id, k);
    }

    void down_move(std::uint32_t id, int k) {
        RfmFrog& f = frogs_[id];
        bool from_root = f.pos.is_root();
        SiteState* src = sites_.find(f.pos);
        int s_before = src ? src->sleeping_children : 0;
        f.pos.descend(k);
        ++out_.steps_used;

        if (from_root)
            f.phase = cfg_.root_mode == RootFrogMode::BernoulliReturn ? Phase::AwakeUp
                                                                      : Phase::AwakeDown;

        if (f.pos.depth() > cfg_.depth_cap) {
            cap_removed_ = true;
            kill(id, KillReason::DepthCap);
            return;
        }
        SiteState& s = sites_.touch(f.pos);
        ++s.visit_count;
        if (s.visited) {
            kill(id, KillReason::HitVisited);
            return;
        }
        s.visited = true;
        if (f.pos.depth() == 2) note_grandchild_entry(f.pos);
        // spawning below may grow the frog vector; nothing taken from f
        // is touched afterwards
        bool cull_after = f.phase == Phase::AwakeDown && f.pos.depth() >= cull_threshold_;
        if (s.has_sleeper) {
            s.has_sleeper = false;
            if (src == nullptr || src->sleeping_children < 1)
                throw std::logic_error("RFM: sleeping-children ledger out of sync");
            --src->sleeping_children;
            ++out_.frogs_woken;
            if (cfg_.record_woken_sites) out_.woken_sites.push_back(f.pos);
            std::uint32_t gid = static_cast<std::uint32_t>(frogs_.size());
            RfmFrog g;
            g.pos = f.pos;
            g.birth = f.pos;
            g.phase = Phase::AwakeUp;
            frogs_.push_back(g);
            awake_.insert(gid);
            if (wake_removed(g.birth)) kill(gid, KillReason::EarlyRemoval);
        }
        // extra kill on any down-move onto an unvisited site
        if (policy_.mode == EarlyRemovalPolicy::Mode::ExtraKill &&
            policy_rng_.next_unit() < policy_.extra_kill_of_s(s_before)) {
            kill(id, KillReason::EarlyRemoval);
            return;
        }
        // a stage-2 frog this deep can no longer wake anyone, revisit
        // the root, or touch the grandchild flags: drop it
        if (cull_after) {
            cap_removed_ = true;
            kill(id, KillReason::DepthCap);
        }
    }

    bool wake_removed(const Vertex& birth) {
        switch (policy_.mode) {
            case EarlyRemovalPolicy::Mode::RandomBernoulli:
                return policy_rng_.next_unit() < policy_.q;
            case EarlyRemovalPolicy::Mode::SiteList:
                return policy_.sites.count(birth) > 0;
            default:
                return false;
        }
    }

    void note_grandchild_entry(const Vertex& v) {
        if (!have_x_) {
            have_x_ = true;
            x_ = v;
            sibling_entered_.assign(cfg_.params.d, 0);
            return;
        }
        if (v.depth() == 2 && v.parent() == x_.parent() && !(v == x_)) {
            sibling_entered_[v.last_index() - 1] = 1;
            out_.a_event = true;
        }
    }

    void finalize() {
        long long remaining = 0;
        for (auto& [v, s] : sites_.raw()) {
            if (s.has_sleeper) ++remaining;
            if (cfg_.record_site_visits && s.visit_count > 0)
                out_.per_site_visits[v] = s.visit_count;
        }
        out_.sleepers_materialized = sites_.sleepers_materialized();
        out_.sleepers_remaining = remaining;
        if (out_.frogs_woken + remaining != sites_.sleepers_materialized())
            throw std::logic_error("RFM: sleeper conservation violated");
        out_.sibling_entered = sibling_entered_;
    }

    SimConfig cfg_;
    EarlyRemovalPolicy policy_;
    int sleeper_depth_;
    int cull_threshold_;
    SiteTable sites_;
    InstructionStacks stacks_;
    Stream sched_;
    Stream policy_rng_;
    std::vector<RfmFrog> frogs_;
    AwakeSet awake_;
    TrialOutcome out_;
    bool cap_removed_ = false;
    bool have_x_ = false;
    Vertex x_;
    std::vector<std::uint8_t> sibling_entered_;
};

} // namespace

std::vector<Vertex> subtree_vertices(int d, int child, int depth) {
    std::vector<Vertex> out;
    std::vector<Vertex> frontier{Vertex::root().child(child)};
    for (int lvl = 1; lvl <= depth && !frontier.empty(); ++lvl) {
        std::vector<Vertex> next;
        for (auto& v : frontier) {
            out.push_back(v);
            if (lvl < depth)
                for (int k = 1; k <= d; ++k) next.push_back(v.child(k));
        }
        frontier = std::move(next);
    }
    return out;
}

TrialOutcome run_rfm(const SimConfig& config, const EarlyRemovalPolicy& policy,
                     std::uint64_t trial_seed) {
    return RfmEngine(config, policy, trial_seed).run();
}

VtSample sample_vt(int t, const ModelParams& params, long long step_cap,
                   std::uint64_t trial_seed, RootFrogMode mode) {
    if (t < 0) throw std::invalid_argument("sample_vt: t must be >= 0");
    SimConfig cfg;
    cfg.params = params;
    cfg.sleeper_depth = t;
    cfg.depth_cap = std::max(t, 2) + 1;
    cfg.step_cap = step_cap;
    cfg.root_mode = mode;
    TrialOutcome out = run_rfm(cfg, EarlyRemovalPolicy::none(), trial_seed);
    VtSample s;
    s.t = t;
    s.v = out.root_visits;
    s.a_event = out.a_event;
    s.sibling_entered = out.sibling_entered;
    s.outcome = std::move(out);
    return s;
}

std::map<Vertex, double> visits_profile(const SimConfig& config,
                                        const EarlyRemovalPolicy& policy, long long trials,
                                        std::uint64_t master_seed) {
    SimConfig cfg = config;
    cfg.record_site_visits = true;
    std::map<Vertex, double> acc;
    for (long long t = 0; t < trials; ++t) {
        TrialOutcome out = run_rfm(cfg, policy, trial_key(master_seed, t));
        for (auto& [v, c] : out.per_site_visits) acc[v] += static_cast<double>(c);
    }
    for (auto& [v, c] : acc) c /= static_cast<double>(trials);
    return acc;
}

} // namespace frog
