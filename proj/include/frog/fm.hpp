#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "frog/rng.hpp"
#include "frog/sim.hpp"

namespace frog {

/// Loop bookkeeping for one frog of the silent-loop variant FM'.
///
/// A downward departure from v opens a frame based at v.  Wake events
/// observed while frames are open are held pending in the innermost
/// frame.  Returning to a frame's base completes a downward loop:
/// the frame cancels and its pending wakes are discarded (the loop is
/// silent).  Frames still open when the frog is removed, or when the
/// run ends, commit: their pending wakes fire.
class SilentLoopFilter {
public:
    void on_down_departure(const Vertex& from) { frames_.push_back(Frame{from, {}}); }

    /// Up-step arrival.  The innermost open frame, if any, is always
    /// based at the arrival vertex (depth steps are +-1, so unmatched
    /// down-departures match up-arrivals like balanced parentheses).
    /// Returns false on a bookkeeping violation.
    bool on_up_arrival(const Vertex& at) {
        if (frames_.empty()) return true;
        if (!(frames_.back().base == at)) return false;
        frames_.pop_back();
        return true;
    }

    /// Wake offer at a sleeper site.  True: fire immediately (no open
    /// frame).  False: deferred into the innermost frame.
    bool offer(const Vertex& site) {
        if (frames_.empty()) return true;
        frames_.back().pending.push_back(site);
        return false;
    }

    /// Frog removed or run over: surrender every deferred wake.
    std::vector<Vertex> commit_all() {
        std::vector<Vertex> out;
        for (auto& f : frames_)
            for (auto& v : f.pending) out.push_back(v);
        frames_.clear();
        return out;
    }

    bool has_open_frames() const { return !frames_.empty(); }
    std::size_t open_frames() const { return frames_.size(); }

private:
    struct Frame {
        Vertex base;
        std::vector<Vertex> pending;
    };
    std::vector<Frame> frames_;
};

/// FM(d,p): one awake frog at the root, a sleeper at every non-root
/// site within the sleeper region; visits wake sleepers; frogs are
/// removed on stepping below the depth cap.
TrialOutcome run_fm(const SimConfig& config, std::uint64_t trial_seed);

/// FM'(d,p): same walks, but sleepers visited inside a completed
/// downward loop stay asleep.  Deferred wakes commit when the walking
/// frog is removed at the cap or the run ends with frames open.
TrialOutcome run_fm_prime(const SimConfig& config, std::uint64_t trial_seed);

struct RunSummary {
    long long trials = 0;
    double mean = 0.0;
    double variance = 0.0; // sample variance, 0 for a single trial
    std::map<long long, long long> visit_histogram;
    std::vector<TrialOutcome> outcomes;

    double ecdf(long long c) const {
        long long below = 0;
        for (auto& [v, n] : visit_histogram)
            if (v <= c) below += n;
        return trials ? static_cast<double>(below) / trials : 0.0;
    }
};

/// Independent seeded trials of run_fm / run_fm_prime, merged.
/// Deterministic given the master seed; `workers` only changes wall
/// time, never the result.
RunSummary estimate_root_visits(const SimConfig& config, long long trials,
                                std::uint64_t master_seed, bool prime = false,
                                int workers = 1);

} // namespace frog
