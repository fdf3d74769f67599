#pragma once

#include <cstdint>
#include <unordered_map>

#include "frog/params.hpp"
#include "frog/rng.hpp"
#include "frog/vertex.hpp"

namespace frog {

/// Per-vertex stacks of i.i.d. movement instructions, the randomness
/// source for the recursive frog model.
///
/// Each vertex v carries an up-stack U(v) read by stage-1 frogs
/// (entry 0 with probability rho, child k with probability (1-rho)/d)
/// and a down-stack D(v) read by stage-2 frogs (uniform child).
/// Entries are never stored: entry i of a stack is a pure function of
/// (stack seed, vertex path, stack kind, i), so the stacks are lazily
/// infinite while only consumption counters live in memory.  Two runs
/// built over the same stack seed consume the same instruction values,
/// which is what makes early-removal comparisons pathwise.
class InstructionStacks {
public:
    InstructionStacks(std::uint64_t stack_seed, const ModelParams& params)
        : params_(params),
          up_base_(fold(stack_seed, kTagStackUp)),
          down_base_(fold(stack_seed, kTagStackDown)) {}

    /// Up instruction: 0 = move to parent, 1..d = switch down to child k.
    int next_up(const Vertex& v) {
        Counters& c = counters_[v];
        return up_value(v, c.up++);
    }

    /// Down instruction: 1..d, the next child to descend to.
    int next_down(const Vertex& v) {
        Counters& c = counters_[v];
        return down_value(v, c.down++);
    }

    // Value of an entry without consuming it (index is 0-based).
    int up_value(const Vertex& v, std::uint64_t index) const {
        double u = to_unit(draw_at(fold(up_base_, v.hash()), index));
        if (u < params_.rho) return 0;
        double w = (u - params_.rho) / (1.0 - params_.rho);
        int k = 1 + static_cast<int>(w * params_.d);
        return k > params_.d ? params_.d : k;
    }
    int down_value(const Vertex& v, std::uint64_t index) const {
        double u = to_unit(draw_at(fold(down_base_, v.hash()), index));
        int k = 1 + static_cast<int>(u * params_.d);
        return k > params_.d ? params_.d : k;
    }

    std::uint64_t up_consumed(const Vertex& v) const {
        auto it = counters_.find(v);
        return it == counters_.end() ? 0 : it->second.up;
    }
    std::uint64_t down_consumed(const Vertex& v) const {
        auto it = counters_.find(v);
        return it == counters_.end() ? 0 : it->second.down;
    }

    const ModelParams& params() const { return params_; }

private:
    struct Counters {
        std::uint64_t up = 0;
        std::uint64_t down = 0;
    };

    ModelParams params_;
    std::uint64_t up_base_;
    std::uint64_t down_base_;
    std::unordered_map<Vertex, Counters, VertexHash> counters_;
};

inline int next_up_instruction(const Vertex& v, InstructionStacks& stacks) {
    return stacks.next_up(v);
}
inline int next_down_instruction(const Vertex& v, InstructionStacks& stacks) {
    return stacks.next_down(v);
}

} // namespace frog
