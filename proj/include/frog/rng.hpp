#pragma once

#include <cstdint>

// Counter-based random streams built on the SplitMix64 finalizer.
//
// Every random decision in a run is a pure function of
// (master seed, substream labels..., draw index), so trials replay
// bit-identically and substreams never share raw draws.  The mixing
// constants below are the published SplitMix64 ones (Steele, Lea &
// Flood, "Fast splittable pseudorandom number generators", 2014);
// they are part of the reproducibility contract and must not change
// within a release.

namespace frog {

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ull;
inline constexpr std::uint64_t kSplitMixMul1  = 0xbf58476d1ce4e5b9ull;
inline constexpr std::uint64_t kSplitMixMul2  = 0x94d049bb133111ebull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= kSplitMixMul1;
    z ^= z >> 27;
    z *= kSplitMixMul2;
    z ^= z >> 31;
    return z;
}

/// Derive a child stream key.  Folding is order-sensitive, so
/// fold(fold(s,a),b) != fold(fold(s,b),a).
inline constexpr std::uint64_t fold(std::uint64_t key, std::uint64_t word) {
    return mix64(key + kSplitMixGamma + word);
}

// Substream tags.  A stream key is always master -> trial -> tag -> ...
enum StreamTag : std::uint64_t {
    kTagTrial       = 0x01,
    kTagScheduler   = 0x02,
    kTagFrogPath    = 0x03,
    kTagStacks      = 0x04,
    kTagStackUp     = 0x05,
    kTagStackDown   = 0x06,
    kTagPolicy      = 0x07,
    kTagFollower    = 0x08,
    kTagExperiment  = 0x09,
};

/// The i-th draw of the stream identified by `key` (stateless).
inline constexpr std::uint64_t draw_at(std::uint64_t key, std::uint64_t index) {
    return mix64(key + (index + 1) * kSplitMixGamma);
}

inline constexpr double to_unit(std::uint64_t r) {
    // 53 high bits -> [0,1)
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

/// Sequential view over a keyed stream.
class Stream {
public:
    Stream() = default;
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return draw_at(key_, counter_++); }
    double next_unit() { return to_unit(next_u64()); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t draws_used() const { return counter_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

/// Stream for one trial of an experiment.
inline constexpr std::uint64_t trial_key(std::uint64_t master_seed, std::uint64_t trial) {
    return fold(fold(master_seed, kTagTrial), trial);
}

} // namespace frog
