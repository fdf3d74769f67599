#include "frog/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "frog/fm.hpp"
#include "frog/instructions.hpp"
#include "frog/scheduler.hpp"
#include "frog/walk.hpp"

namespace frog {

double effective_extra_kill(int d, int s_prime) {
    if (d < 2) throw std::domain_error("effective_extra_kill: d must be >= 2");
    if (s_prime < 1 || s_prime > d + 1)
        throw std::domain_error("effective_extra_kill: S' outside [1, d+1]");
    return static_cast<double>(d + 1 - s_prime) / (static_cast<double>(d) * (d + 1));
}

// ---------------------------------------------------------------------------
// FM(d,p) coupled to the modified FM(kd,p)

namespace {

struct FmPair {
    Vertex pos_s;
    Vertex pos_l;
    Stream path;
    bool alive = true;
};

class CoupledFmEngine {
public:
    CoupledFmEngine(int d, int k, double p, int depth_cap, long long step_cap,
                    std::uint64_t trial_seed, bool check)
        : emb_{d, k},
          params_(ModelParams::from_p(d, p)),
          depth_cap_(depth_cap),
          step_cap_(step_cap),
          check_(check),
          sites_s_(d, depth_cap),
          sites_l_(k * d, depth_cap),
          sched_(fold(trial_seed, kTagScheduler)),
          follower_(fold(trial_seed, kTagFollower)),
          trial_seed_(trial_seed) {
        if (k < 1) throw std::invalid_argument("run_coupled_fm: k must be >= 1");
        if (depth_cap < 0) throw std::invalid_argument("run_coupled_fm: negative depth cap");
        log_.trial_seed = trial_seed;
        spawn(Vertex::root(), Vertex::root());
    }

    CoupledOutcome run() {
        while (out_.small.steps_used < step_cap_ && !awake_.empty() && log_.ok()) {
            ++log_.ticks;
            step(awake_.pick(SchedulerPolicy::UniformRandom, sched_));
            if (check_ && (log_.ticks & 0xfff) == 0) sweep();
        }
        log_.aborted = !log_.ok();
        if (check_ && !log_.aborted) sweep();
        Truncation tr = awake_.empty() ? Truncation::DepthExtinct : Truncation::StepCap;
        out_.small.truncation = tr;
        out_.large.truncation = tr;
        finalize();
        out_.log = std::move(log_);
        return std::move(out_);
    }

private:
    void spawn(const Vertex& at_s, const Vertex& at_l) {
        FmPair f;
        f.pos_s = at_s;
        f.pos_l = at_l;
        f.path = Stream(fold(fold(trial_seed_, kTagFrogPath), at_s.hash()));
        pairs_.push_back(std::move(f));
        awake_.insert(static_cast<std::uint32_t>(pairs_.size() - 1));
    }

    void remove(std::uint32_t id) {
        pairs_[id].alive = false;
        awake_.erase(id);
    }

    void step(std::uint32_t id) {
        FmPair& f = pairs_[id];
        double u = f.path.next_unit();
        bool up = fm_apply_step(f.pos_s, params_, u);
        if (up) {
            f.pos_l.ascend();
        } else {
            // leader went to child x; follower lands uniformly in G(x)
            int x = f.pos_s.last_index();
            int j = static_cast<int>(follower_.next_below(emb_.k));
            f.pos_l.descend(emb_.block_lo(x) + j);
        }
        ++out_.small.steps_used;
        ++out_.large.steps_used;
        arrive(id);
    }

    void arrive(std::uint32_t id) {
        FmPair& f = pairs_[id];
        if (check_ && f.pos_s.depth() != f.pos_l.depth())
            log_.record(log_.ticks, "displacement",
                        f.pos_s.to_string() + " vs " + f.pos_l.to_string());
        if (f.pos_s.is_root()) {
            ++out_.small.root_visits;
            if (!f.pos_l.is_root())
                log_.record(log_.ticks, "root-pairing", f.pos_l.to_string());
            else
                ++out_.large.root_visits;
            return;
        }
        if (f.pos_s.depth() > depth_cap_) {
            ++out_.small.kills.depth_cap;
            ++out_.large.kills.depth_cap;
            remove(id);
            return;
        }
        if (check_ && !emb_.is_leaf_of(f.pos_l, f.pos_s))
            log_.record(log_.ticks, "block-coordinates",
                        f.pos_l.to_string() + " outside blocks of " + f.pos_s.to_string());

        SiteState& ss = sites_s_.touch(f.pos_s);
        SiteState& sl = sites_l_.touch(f.pos_l);
        bool leader_first = !ss.visited;
        bool follower_first = !sl.visited;
        // the first visit to v must coincide with the first visit to a
        // leaf of its product tree; in particular a waking leader must
        // find a sleeper under the follower
        if (check_ && leader_first && !follower_first)
            log_.record(log_.ticks, "first-visit",
                        "leader first at " + f.pos_s.to_string() + ", follower leaf " +
                            f.pos_l.to_string() + " already visited");
        ss.visited = true;
        sl.visited = true;
        ++ss.visit_count;
        ++sl.visit_count;
        if (ss.has_sleeper) {
            ss.has_sleeper = false;
            ++out_.small.frogs_woken;
            if (!sl.has_sleeper) {
                log_.record(log_.ticks, "wake-availability",
                            "no sleeper at follower site " + f.pos_l.to_string());
            } else {
                sl.has_sleeper = false;
                ++out_.large.frogs_woken;
            }
            spawn(f.pos_s, f.pos_l);
        }
        // the follower wakes only when the leader does, so a sleeper on
        // an already-suppressed follower site stays asleep
    }

    void sweep() {
        ++log_.checks;
        long long alive = 0;
        for (std::uint32_t id : awake_.members()) {
            const FmPair& f = pairs_[id];
            ++alive;
            if (!f.alive) log_.record(log_.ticks, "bijection", "dead frog in awake set");
            if (f.pos_s.depth() != f.pos_l.depth())
                log_.record(log_.ticks, "displacement-sweep",
                            f.pos_s.to_string() + " vs " + f.pos_l.to_string());
        }
        (void)alive; // the two models share one awake set by construction
    }

    void finalize() {
        out_.small.sleepers_materialized = sites_s_.sleepers_materialized();
        out_.large.sleepers_materialized = sites_l_.sleepers_materialized();
        long long rs = 0, rl = 0;
        for (auto& [v, s] : sites_s_.raw())
            if (s.has_sleeper) ++rs;
        for (auto& [v, s] : sites_l_.raw())
            if (s.has_sleeper) ++rl;
        out_.small.sleepers_remaining = rs;
        out_.large.sleepers_remaining = rl;
    }

    Embedding emb_;
    ModelParams params_;
    int depth_cap_;
    long long step_cap_;
    bool check_;
    SiteTable sites_s_;
    SiteTable sites_l_;
    Stream sched_;
    Stream follower_;
    std::uint64_t trial_seed_;
    std::vector<FmPair> pairs_;
    AwakeSet awake_;
    CoupledOutcome out_;
    InvariantLog log_;
};

} // namespace

CoupledOutcome run_coupled_fm(int d, int k, double p, int depth_cap, long long step_cap,
                              std::uint64_t trial_seed, bool check_invariants) {
    return CoupledFmEngine(d, k, p, depth_cap, step_cap, trial_seed, check_invariants).run();
}

// ---------------------------------------------------------------------------
// RFM(d,p) coupled to RFM'(d+1,p)

namespace {

struct RfmPairFrog {
    Vertex pos_s;
    Vertex pos_l;
    Phase phase = Phase::AwakeUp;
    bool alive = true;
};

class CoupledRfmEngine {
public:
    CoupledRfmEngine(int d, double p, int depth_cap, long long step_cap,
                     std::uint64_t trial_seed, bool check, RootFrogMode mode)
        : d_(d),
          params_(ModelParams::from_p(d, p)),
          depth_cap_(depth_cap),
          step_cap_(step_cap),
          check_(check),
          mode_(mode),
          sites_s_(d, depth_cap),
          sites_l_(d + 1, depth_cap),
          stacks_(fold(trial_seed, kTagStacks), params_),
          sched_(fold(trial_seed, kTagScheduler)),
          follower_(fold(trial_seed, kTagFollower)) {
        if (depth_cap < 1) throw std::invalid_argument("run_coupled_rfm: depth cap must be >= 1");
        log_.trial_seed = trial_seed;
        out_.extra_kill_by_s.assign(d + 2, ExtraKillCell{});
        v_pair_[Vertex::root()] = Vertex::root();
        RfmPairFrog f;
        f.phase = Phase::AwakeDown; // forced first step from the root
        frogs_.push_back(f);
        awake_.insert(0);
    }

    CoupledOutcome run() {
        // every tick checks the moved pair and every ledger entry it
        // touched; the full-population sweeps are amortized so that
        // checking stays linear in the trial length
        while (out_.small.steps_used < step_cap_ && !awake_.empty() && log_.ok()) {
            ++log_.ticks;
            step(awake_.pick(SchedulerPolicy::UniformRandom, sched_));
            if (check_ && (log_.ticks & 0xfff) == 0) {
                sweep_frogs();
                sweep_vertices();
            }
        }
        log_.aborted = !log_.ok();
        if (check_ && !log_.aborted) {
            sweep_frogs();
            sweep_vertices();
        }
        Truncation tr = awake_.empty()
                            ? (cap_removed_ ? Truncation::DepthExtinct : Truncation::AllRemoved)
                            : Truncation::StepCap;
        out_.small.truncation = tr;
        out_.large.truncation = tr;
        out_.small.sleepers_materialized = sites_s_.sleepers_materialized();
        out_.large.sleepers_materialized = sites_l_.sleepers_materialized();
        out_.log = std::move(log_);
        return std::move(out_);
    }

private:
    int sleeping_count(SiteTable& sites, const Vertex& v) {
        SiteState* s = sites.find(v);
        if (s == nullptr)
            throw std::logic_error("coupled rfm: frog standing on an untouched site");
        return s->sleeping_children;
    }

    void kill_pair(std::uint32_t id, KillReason small_why, KillReason large_why) {
        RfmPairFrog& f = frogs_[id];
        f.phase = Phase::Removed;
        f.alive = false;
        awake_.erase(id);
        bump(out_.small.kills, small_why);
        bump(out_.large.kills, large_why);
    }

    static void bump(KillHistogram& h, KillReason why) {
        switch (why) {
            case KillReason::HitRoot: ++h.hit_root; break;
            case KillReason::HitVisited: ++h.hit_visited; break;
            case KillReason::EarlyRemoval: ++h.early; break;
            case KillReason::DepthCap: ++h.depth_cap; break;
        }
    }

    void step(std::uint32_t id) {
        RfmPairFrog& f = frogs_[id];
        if (f.phase == Phase::AwakeUp) {
            int instr = stacks_.next_up(f.pos_s);
            if (instr == 0) {
                // mirrored upward move
                f.pos_s.ascend();
                f.pos_l.ascend();
                ++out_.small.steps_used;
                ++out_.large.steps_used;
                if (check_ && f.pos_s.depth() != f.pos_l.depth())
                    log_.record(log_.ticks, "displacement",
                                f.pos_s.to_string() + " vs " + f.pos_l.to_string());
                if (f.pos_s.is_root()) {
                    ++out_.small.root_visits;
                    if (!f.pos_l.is_root())
                        log_.record(log_.ticks, "root-pairing", f.pos_l.to_string());
                    else
                        ++out_.large.root_visits;
                    kill_pair(id, KillReason::HitRoot, KillReason::HitRoot);
                    return;
                }
                if (check_) check_vertex_pairing(f);
                touch_visit(sites_s_, f.pos_s);
                touch_visit(sites_l_, f.pos_l);
                return;
            }
            f.phase = Phase::AwakeDown;
            down_move(id, instr);
            return;
        }
        int k = stacks_.next_down(f.pos_s);
        down_move(id, k);
    }

    void touch_visit(SiteTable& sites, const Vertex& v) {
        SiteState& s = sites.touch(v);
        if (!s.visited)
            throw std::logic_error("coupled rfm: upward move onto an unvisited site");
        ++s.visit_count;
    }

    void check_vertex_pairing(const RfmPairFrog& f) {
        auto it = v_pair_.find(f.pos_s);
        if (it == v_pair_.end() || !(it->second == f.pos_l))
            log_.record(log_.ticks, "frog-vertex-pairing",
                        f.pos_s.to_string() + " vs " + f.pos_l.to_string());
    }

    void down_move(std::uint32_t id, int k) {
        RfmPairFrog& f = frogs_[id];
        bool from_root = f.pos_s.is_root();
        int s_small = sleeping_count(sites_s_, f.pos_s);
        int s_large = sleeping_count(sites_l_, f.pos_l);
        Vertex src_s = f.pos_s;
        Vertex src_l = f.pos_l;

        f.pos_s.descend(k);
        ++out_.small.steps_used;
        ++out_.large.steps_used;
        if (from_root && mode_ == RootFrogMode::BernoulliReturn) f.phase = Phase::AwakeUp;

        if (f.pos_s.depth() > depth_cap_) {
            cap_removed_ = true;
            kill_pair(id, KillReason::DepthCap, KillReason::DepthCap);
            return;
        }

        ++out_.extra_kill_by_s[s_large].events;
        if (check_ && s_large != s_small + 1)
            log_.record(log_.ticks, "sleep-ineq",
                        "S=" + std::to_string(s_small) + " S'=" + std::to_string(s_large) +
                            " at " + src_s.to_string());

        SiteState& ss = sites_s_.touch(f.pos_s);
        ++ss.visit_count;
        if (ss.visited) {
            // the leader lands on a visited site and dies; the follower
            // is removed early, without taking the step
            ++out_.extra_kill_by_s[s_large].kills;
            kill_pair(id, KillReason::HitVisited, KillReason::EarlyRemoval);
            return;
        }
        ss.visited = true;
        if (!ss.has_sleeper)
            throw std::logic_error(
                "coupled rfm: unvisited leader site without a sleeper inside the region");

        // the leader woke a sleeper; the follower moves to a uniformly
        // chosen sleeper child (coordinate order)
        ss.has_sleeper = false;
        SiteState* ps = sites_s_.find(src_s);
        --ps->sleeping_children;
        ++out_.small.frogs_woken;

        std::vector<int> candidates;
        candidates.reserve(d_ + 1);
        for (int c = 1; c <= d_ + 1; ++c) {
            Vertex ch = src_l.child(c);
            SiteState* cs = sites_l_.find(ch);
            bool sleeper = cs ? cs->has_sleeper : ch.depth() <= depth_cap_;
            if (sleeper) candidates.push_back(c);
        }
        if (candidates.empty()) {
            log_.record(log_.ticks, "wake-availability",
                        "no sleeper child under " + src_l.to_string());
            kill_pair(id, KillReason::EarlyRemoval, KillReason::EarlyRemoval);
            return;
        }
        int pick = candidates[follower_.next_below(candidates.size())];
        f.pos_l = src_l.child(pick);
        SiteState& sl = sites_l_.touch(f.pos_l);
        if (!sl.has_sleeper) throw std::logic_error("coupled rfm: picked child lost its sleeper");
        sl.visited = true;
        ++sl.visit_count;
        sl.has_sleeper = false;
        SiteState* pl = sites_l_.find(src_l);
        --pl->sleeping_children;
        ++out_.large.frogs_woken;

        v_pair_[f.pos_s] = f.pos_l;
        if (check_ && f.pos_s.depth() != f.pos_l.depth())
            log_.record(log_.ticks, "displacement",
                        f.pos_s.to_string() + " vs " + f.pos_l.to_string());
        // spawning may grow the frog vector; read everything from f first
        bool cull_after = f.phase == Phase::AwakeDown && f.pos_s.depth() >= depth_cap_;
        RfmPairFrog g;
        g.pos_s = f.pos_s;
        g.pos_l = f.pos_l;
        g.phase = Phase::AwakeUp;
        frogs_.push_back(g);
        awake_.insert(static_cast<std::uint32_t>(frogs_.size() - 1));

        if (check_ && src_s.depth() < depth_cap_ &&
            ps->sleeping_children + 1 != pl->sleeping_children)
            log_.record(log_.ticks, "vertex-ineq",
                        "post-wake ledgers at " + src_s.to_string());

        // below the sleeper boundary a stage-2 frog can affect nothing
        // observable; both copies are retired together
        if (cull_after) {
            cap_removed_ = true;
            kill_pair(id, KillReason::DepthCap, KillReason::DepthCap);
        }
    }

    void sweep_frogs() {
        ++log_.checks;
        for (std::uint32_t id : awake_.members()) {
            const RfmPairFrog& f = frogs_[id];
            if (f.pos_s.depth() != f.pos_l.depth()) {
                log_.record(log_.ticks, "displacement",
                            f.pos_s.to_string() + " vs " + f.pos_l.to_string());
                continue;
            }
            if (f.pos_s.depth() >= depth_cap_) continue; // truncation boundary
            int s_small = sleeping_count(sites_s_, f.pos_s);
            int s_large = sleeping_count(sites_l_, f.pos_l);
            if (s_small + 1 != s_large)
                log_.record(log_.ticks, "sleep-ineq-sweep",
                            "S=" + std::to_string(s_small) + " S'=" + std::to_string(s_large) +
                                " at " + f.pos_s.to_string());
        }
    }

    void sweep_vertices() {
        ++log_.checks;
        for (auto& [v, vp] : v_pair_) {
            if (v.depth() >= depth_cap_) continue;
            SiteState* a = sites_s_.find(v);
            SiteState* b = sites_l_.find(vp);
            if (a == nullptr || b == nullptr) continue;
            if (a->sleeping_children + 1 != b->sleeping_children)
                log_.record(log_.ticks, "vertex-ineq",
                            v.to_string() + ": S=" + std::to_string(a->sleeping_children) +
                                " S'=" + std::to_string(b->sleeping_children));
        }
    }

    int d_;
    ModelParams params_;
    int depth_cap_;
    long long step_cap_;
    bool check_;
    RootFrogMode mode_;
    SiteTable sites_s_;
    SiteTable sites_l_;
    InstructionStacks stacks_;
    Stream sched_;
    Stream follower_;
    std::vector<RfmPairFrog> frogs_;
    AwakeSet awake_;
    std::unordered_map<Vertex, Vertex, VertexHash> v_pair_;
    CoupledOutcome out_;
    InvariantLog log_;
    bool cap_removed_ = false;
};

} // namespace

CoupledOutcome run_coupled_rfm(int d, double p, int depth_cap, long long step_cap,
                               std::uint64_t trial_seed, bool check_invariants,
                               RootFrogMode mode) {
    return CoupledRfmEngine(d, p, depth_cap, step_cap, trial_seed, check_invariants, mode).run();
}

// ---------------------------------------------------------------------------

DominanceReport check_dominance(const std::vector<long long>& samples_small,
                                const std::vector<long long>& samples_large, double margin) {
    if (samples_small.empty() || samples_large.empty())
        throw std::invalid_argument("check_dominance: empty sample set");
    std::vector<long long> s = samples_small, l = samples_large;
    std::sort(s.begin(), s.end());
    std::sort(l.begin(), l.end());
    double n = static_cast<double>(s.size());
    double m = static_cast<double>(l.size());

    std::vector<long long> thresholds = s;
    thresholds.insert(thresholds.end(), l.begin(), l.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    DominanceReport rep;
    rep.margin = margin;
    rep.pass = true;
    rep.worst_gap = -1.0;
    for (long long c : thresholds) {
        double fs = static_cast<double>(std::upper_bound(s.begin(), s.end(), c) - s.begin()) / n;
        double fl = static_cast<double>(std::upper_bound(l.begin(), l.end(), c) - l.begin()) / m;
        double gap = fl - fs;
        if (gap > rep.worst_gap) {
            rep.worst_gap = gap;
            rep.worst_threshold = c;
        }
        double se = std::sqrt(fs * (1.0 - fs) / n + fl * (1.0 - fl) / m);
        if (gap > margin * se) rep.pass = false;
    }
    return rep;
}

std::vector<Vertex> downward_loop_erase(const std::vector<Vertex>& path) {
    if (path.empty()) return {};
    std::vector<Vertex> r;
    r.push_back(path[0]);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const Vertex& v = path[i];
        bool moving_up = v.depth() < r.back().depth();
        if (moving_up && r.size() >= 2 && r[r.size() - 2] == v)
            r.pop_back(); // a loop that started downward just closed
        else
            r.push_back(v);
    }
    return r;
}

// ---------------------------------------------------------------------------
// FM / FM' / recursive-model chain on shared per-frog draws

namespace {

class ChainRfm {
public:
    ChainRfm(const SimConfig& cfg, std::uint64_t trial_seed, long long guard)
        : cfg_(cfg),
          sleeper_depth_(cfg.effective_sleeper_depth()),
          sites_(cfg.params.d, sleeper_depth_),
          sched_(fold(trial_seed, kTagExperiment)),
          trial_seed_(trial_seed),
          guard_(guard) {}

    struct Result {
        long long root_visits = 0;
        std::vector<Vertex> woken;
        bool completed = false;
    };

    Result run() {
        spawn(Vertex::root());
        long long ticks = 0;
        while (!awake_.empty()) {
            if (++ticks > guard_ * 64) throw std::runtime_error("chain rfm: tick guard hit");
            step(awake_.pick(SchedulerPolicy::UniformRandom, sched_));
        }
        res_.completed = true;
        return std::move(res_);
    }

private:
    struct ChainFrog {
        std::vector<Vertex> epath;
        std::size_t next = 1;
        bool alive = true;
    };

    // The frog's plain drifted walk until it leaves the capped region,
    // from the same stream the FM engines use for this birth site.
    std::vector<Vertex> walk_positions(const Vertex& birth) {
        Stream s(fold(fold(trial_seed_, kTagFrogPath), birth.hash()));
        std::vector<Vertex> pos{birth};
        Vertex v = birth;
        for (long long i = 0; i < guard_; ++i) {
            fm_apply_step(v, cfg_.params, s.next_unit());
            pos.push_back(v);
            if (v.depth() > cfg_.depth_cap) return pos;
        }
        throw std::runtime_error("chain rfm: per-frog step guard hit");
    }

    void spawn(const Vertex& birth) {
        ChainFrog f;
        f.epath = downward_loop_erase(walk_positions(birth));
        frogs_.push_back(std::move(f));
        awake_.insert(static_cast<std::uint32_t>(frogs_.size() - 1));
    }

    void kill(std::uint32_t id) {
        frogs_[id].alive = false;
        awake_.erase(id);
    }

    void step(std::uint32_t id) {
        // values copied out: spawning below may grow the frog vector
        Vertex target;
        int prev_depth;
        {
            ChainFrog& f = frogs_[id];
            if (f.next >= f.epath.size()) {
                kill(id);
                return;
            }
            prev_depth = f.epath[f.next - 1].depth();
            target = f.epath[f.next];
            ++f.next;
        }
        if (target.is_root()) {
            ++res_.root_visits;
            kill(id);
            return;
        }
        if (target.depth() > cfg_.depth_cap) {
            kill(id);
            return;
        }
        if (target.depth() < prev_depth) {
            // ascent through already-visited ancestors
            SiteState* s = sites_.find(target);
            if (s == nullptr || !s->visited)
                throw std::logic_error("chain rfm: ascent onto an unvisited site");
            return;
        }
        SiteState& s = sites_.touch(target);
        if (s.visited) {
            kill(id);
            return;
        }
        s.visited = true;
        if (s.has_sleeper) {
            s.has_sleeper = false;
            res_.woken.push_back(target);
            spawn(target);
        }
        if (target.depth() >= std::max(sleeper_depth_, 2)) kill(id); // cull
    }

    SimConfig cfg_;
    int sleeper_depth_;
    SiteTable sites_;
    Stream sched_;
    std::uint64_t trial_seed_;
    long long guard_;
    std::vector<ChainFrog> frogs_;
    AwakeSet awake_;
    Result res_;
};

bool subset_of(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::unordered_set<Vertex, VertexHash> bs(b.begin(), b.end());
    for (const Vertex& v : a)
        if (bs.count(v) == 0) return false;
    return true;
}

} // namespace

ChainOutcome run_chain_trial(const SimConfig& config, std::uint64_t trial_seed,
                             long long per_frog_step_guard) {
    SimConfig cfg = config;
    cfg.validate();
    cfg.record_woken_sites = true;

    TrialOutcome fm = run_fm(cfg, trial_seed);
    TrialOutcome fmp = run_fm_prime(cfg, trial_seed);
    ChainRfm::Result rfm = ChainRfm(cfg, trial_seed, per_frog_step_guard).run();

    ChainOutcome out;
    out.fm_visits = fm.root_visits;
    out.fmp_visits = fmp.root_visits;
    out.rfm_visits = rfm.root_visits;
    out.visits_ordered =
        rfm.root_visits <= fmp.root_visits && fmp.root_visits <= fm.root_visits;
    out.woken_nested = subset_of(rfm.woken, fmp.woken_sites) &&
                       subset_of(fmp.woken_sites, fm.woken_sites);
    out.extinct = fm.truncation != Truncation::StepCap &&
                  fmp.truncation != Truncation::StepCap && rfm.completed;
    return out;
}

} // namespace frog
