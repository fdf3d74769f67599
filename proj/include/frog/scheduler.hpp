#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "frog/rng.hpp"

namespace frog {

enum class SchedulerPolicy { UniformRandom, Fifo };

inline const char* to_string(SchedulerPolicy p) {
    return p == SchedulerPolicy::UniformRandom ? "uniform" : "fifo";
}

/// The set of awake frogs with both activation disciplines.
/// UniformRandom samples uniformly each tick (the model's convention);
/// Fifo activates the longest-waiting frog and requeues it, a
/// diagnostic mode for order-invariance checks.
class AwakeSet {
public:
    void insert(std::uint32_t id) {
        if (id >= slot_.size()) slot_.resize(id + 1, kAbsent);
        slot_[id] = static_cast<std::uint32_t>(members_.size());
        members_.push_back(id);
        fifo_.push_back(id);
    }

    void erase(std::uint32_t id) {
        std::uint32_t s = slot_[id];
        slot_[id] = kAbsent;
        std::uint32_t moved = members_.back();
        members_[s] = moved;
        if (moved != id) slot_[moved] = s;
        members_.pop_back();
        // fifo entries for erased frogs are skipped lazily
    }

    bool contains(std::uint32_t id) const { return id < slot_.size() && slot_[id] != kAbsent; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<std::uint32_t>& members() const { return members_; }

    /// Pick the next frog to move.  Empty set is a logic error.
    std::uint32_t pick(SchedulerPolicy policy, Stream& rng) {
        if (members_.empty()) throw std::logic_error("AwakeSet::pick on empty set");
        if (policy == SchedulerPolicy::UniformRandom) {
            return members_[rng.next_below(members_.size())];
        }
        // FIFO: skip stale entries, requeue the chosen frog
        while (true) {
            std::uint32_t id = fifo_.front();
            fifo_.pop_front();
            if (contains(id)) {
                fifo_.push_back(id);
                return id;
            }
        }
    }

private:
    static constexpr std::uint32_t kAbsent = 0xffffffffu;
    std::vector<std::uint32_t> members_;
    std::vector<std::uint32_t> slot_;
    std::deque<std::uint32_t> fifo_;
};

inline std::uint32_t schedule_next(AwakeSet& awake, SchedulerPolicy policy, Stream& rng) {
    return awake.pick(policy, rng);
}

} // namespace frog
