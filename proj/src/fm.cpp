#include "frog/fm.hpp"

#include <cmath>
#include <stdexcept>

#include "frog/util.hpp"
#include "frog/walk.hpp"

namespace frog {
namespace {

struct FmFrog {
    Vertex pos;
    Vertex birth;
    Stream path;
    Phase phase = Phase::Awake;
    SilentLoopFilter filter; // used by FM' only
};

class FmEngine {
public:
    FmEngine(const SimConfig& config, std::uint64_t trial_seed, bool silent)
        : cfg_(config),
          silent_(silent),
          sleeper_depth_(config.effective_sleeper_depth()),
          sites_(config.params.d, sleeper_depth_),
          sched_(fold(trial_seed, kTagScheduler)),
          trial_seed_(trial_seed) {
        cfg_.validate();
        spawn(Vertex::root());
    }

    TrialOutcome run() {
        while (out_.steps_used < cfg_.step_cap && !awake_.empty()) {
            std::uint32_t id = awake_.pick(cfg_.policy, sched_);
            step(id);
        }
        out_.truncation = awake_.empty()
                              ? (cap_removed_ ? Truncation::DepthExtinct : Truncation::AllRemoved)
                              : Truncation::StepCap;
        if (silent_) {
            // run over with frames still open: deferred wakes fire
            for (std::uint32_t id : std::vector<std::uint32_t>(awake_.members()))
                commit_frames(frogs_[id]);
        }
        finalize();
        return std::move(out_);
    }

private:
    void spawn(const Vertex& at) {
        FmFrog f;
        f.pos = at;
        f.birth = at;
        f.path = Stream(fold(fold(trial_seed_, kTagFrogPath), at.hash()));
        frogs_.push_back(std::move(f));
        awake_.insert(static_cast<std::uint32_t>(frogs_.size() - 1));
    }

    void wake_at(const Vertex& site, SiteState& s) {
        s.has_sleeper = false;
        ++out_.frogs_woken;
        if (cfg_.record_woken_sites) out_.woken_sites.push_back(site);
        spawn(site);
    }

    void commit_frames(FmFrog& f) {
        for (const Vertex& site : f.filter.commit_all()) {
            SiteState* s = sites_.find(site);
            if (s && s->has_sleeper) wake_at(site, *s);
        }
    }

    void remove(std::uint32_t id) {
        FmFrog& f = frogs_[id];
        f.phase = Phase::Removed;
        awake_.erase(id);
        if (silent_) commit_frames(f);
    }

    void step(std::uint32_t id) {
        FmFrog& f = frogs_[id];
        double u = f.path.next_unit();
        bool down = f.pos.is_root() || u >= cfg_.params.p;
        if (silent_ && down) f.filter.on_down_departure(f.pos);
        bool up = fm_apply_step(f.pos, cfg_.params, u);
        ++out_.steps_used;
        arrive(id, up);
    }

    void arrive(std::uint32_t id, bool moved_up) {
        FmFrog& f = frogs_[id];
        const Vertex& v = f.pos;
        if (silent_ && moved_up) {
            if (!f.filter.on_up_arrival(v))
                throw std::logic_error("FM': up-arrival does not match the open frame");
        }
        if (v.is_root()) {
            ++out_.root_visits;
            return;
        }
        if (v.depth() > cfg_.depth_cap) {
            cap_removed_ = true;
            ++out_.kills.depth_cap;
            remove(id);
            return;
        }
        SiteState& s = sites_.touch(v);
        ++s.visit_count;
        s.visited = true;
        if (s.has_sleeper) {
            if (!silent_ || f.filter.offer(v)) wake_at(v, s);
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
            throw std::logic_error("FM: sleeper conservation violated");
    }

    SimConfig cfg_;
    bool silent_;
    int sleeper_depth_;
    SiteTable sites_;
    Stream sched_;
    std::uint64_t trial_seed_;
    std::vector<FmFrog> frogs_;
    AwakeSet awake_;
    TrialOutcome out_;
    bool cap_removed_ = false;
};

} // namespace

TrialOutcome run_fm(const SimConfig& config, std::uint64_t trial_seed) {
    return FmEngine(config, trial_seed, false).run();
}

TrialOutcome run_fm_prime(const SimConfig& config, std::uint64_t trial_seed) {
    return FmEngine(config, trial_seed, true).run();
}

RunSummary estimate_root_visits(const SimConfig& config, long long trials,
                                std::uint64_t master_seed, bool prime, int workers) {
    if (trials < 1) throw std::invalid_argument("estimate_root_visits: trials must be >= 1");
    RunSummary sum;
    sum.trials = trials;
    sum.outcomes.resize(trials);
    parallel_for_trials(trials, workers, [&](long long t) {
        std::uint64_t key = trial_key(master_seed, static_cast<std::uint64_t>(t));
        sum.outcomes[t] = prime ? run_fm_prime(config, key) : run_fm(config, key);
    });
    double m = 0.0;
    for (auto& o : sum.outcomes) m += static_cast<double>(o.root_visits);
    m /= static_cast<double>(trials);
    double var = 0.0;
    for (auto& o : sum.outcomes) {
        double d = static_cast<double>(o.root_visits) - m;
        var += d * d;
        ++sum.visit_histogram[o.root_visits];
    }
    sum.mean = m;
    sum.variance = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
    return sum;
}

} // namespace frog
