#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frog/rng.hpp"

namespace frog {

/// A vertex of the rooted d-ary tree, coded as its path of child
/// indices from the root.  The empty path is the root.  Child indices
/// are 1-based and bounded by the governing degree.
class Vertex {
public:
    Vertex() = default;
    explicit Vertex(std::vector<std::uint8_t> path) : path_(std::move(path)) {}

    static Vertex root() { return Vertex{}; }

    bool is_root() const { return path_.empty(); }
    int depth() const { return static_cast<int>(path_.size()); }

    /// Child index of the last step; vertex must not be the root.
    int last_index() const { return path_.back(); }

    Vertex child(int k) const {
        Vertex c = *this;
        c.descend(k);
        return c;
    }
    Vertex parent() const {
        Vertex p = *this;
        p.ascend();
        return p;
    }

    // In-place moves; walking frogs mutate their position to avoid
    // allocating a fresh path per step.
    void descend(int k) { path_.push_back(static_cast<std::uint8_t>(k)); }
    void ascend() { path_.pop_back(); }

    const std::vector<std::uint8_t>& path() const { return path_; }

    /// FNV-1a over the path bytes; also keys RNG substreams.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::uint8_t b : path_) {
            h ^= b;
            h *= 0x100000001b3ull;
        }
        // fold in the length so the root differs from "no data"
        h ^= static_cast<std::uint64_t>(path_.size()) + 0x9e37ull;
        return mix64(h);
    }

    std::string to_string() const {
        if (path_.empty()) return "@";
        std::string s;
        for (std::size_t i = 0; i < path_.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(int(path_[i]));
        }
        return s;
    }

    friend bool operator==(const Vertex& a, const Vertex& b) { return a.path_ == b.path_; }
    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
    friend bool operator<(const Vertex& a, const Vertex& b) { return a.path_ < b.path_; }

private:
    std::vector<std::uint8_t> path_;
};

struct VertexHash {
    std::size_t operator()(const Vertex& v) const { return static_cast<std::size_t>(v.hash()); }
};

} // namespace frog
