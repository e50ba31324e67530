#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"

namespace dpea::problems {

/// Complete graph on vertices 1..n given as a full weight matrix
/// (weight[u-1][v-1], diagonal ignored).
struct TspInstance {
    int n = 0;
    std::vector<std::vector<std::int64_t>> weight;

    std::int64_t w(int u, int v) const {
        return weight[static_cast<std::size_t>(u) - 1][static_cast<std::size_t>(v) - 1];
    }
};

/// A vertex sequence starting at vertex 1 together with its length. Sequences
/// that revisit a vertex are flagged invalid; they exist only as transition
/// images and never enter a kept set.
struct TspState {
    std::vector<std::uint8_t> path{1};
    std::int64_t length = 0;
    std::uint32_t mask = 1; // bit v-1 set iff vertex v occurs
    bool valid = true;

    int endpoint() const { return path.back(); }

    friend bool operator==(const TspState& a, const TspState& b) {
        return a.valid == b.valid && a.length == b.length && a.path == b.path;
    }
    friend std::size_t hash_value(const TspState& s) {
        std::size_t h = std::hash<bool>{}(s.valid);
        detail::hash_mix(h, std::hash<std::int64_t>{}(s.length));
        for (auto v : s.path) detail::hash_mix(h, v);
        return h;
    }
};

/// Held-Karp style tour construction: phase i extends every kept path by one
/// vertex, paths over the same vertex set with the same end vertex compare by
/// length, and the tour is closed after the final phase by adding the return
/// edge to vertex 1.
class TspProblem {
  public:
    using state_type = TspState;
    using key_type = std::uint64_t;

    static constexpr int kMaxVertices = 24;

    explicit TspProblem(TspInstance inst) : inst_(std::move(inst)) {
        if (inst_.n < 3) throw ValidationError("tsp: need at least 3 vertices");
        if (inst_.n > kMaxVertices) throw ValidationError("tsp: more than 24 vertices unsupported");
        if (static_cast<int>(inst_.weight.size()) != inst_.n)
            throw ValidationError("tsp: weight matrix row count mismatch");
        for (const auto& row : inst_.weight) {
            if (static_cast<int>(row.size()) != inst_.n)
                throw ValidationError("tsp: weight matrix is not square");
            for (auto w : row)
                if (w < 0) throw ValidationError("tsp: negative edge weight (incomplete graph)");
        }
    }

    /// Paths of i+1 vertices are built at phase i; the last phase yields the
    /// Hamiltonian paths.
    int phase_count() const { return inst_.n - 1; }

    std::vector<state_type> initial_states() const { return {TspState{}}; }

    int transition_count(int) const { return inst_.n - 1; }

    /// Transition f appends vertex f+2 (the family covers V \ {1}).
    state_type apply(int, int f, const state_type& s) const {
        const int v = f + 2;
        TspState next = s;
        const int end = next.endpoint();
        next.path.push_back(static_cast<std::uint8_t>(v));
        const std::uint32_t bit = 1u << (v - 1);
        if (next.valid && !(next.mask & bit)) {
            next.length += inst_.w(end, v);
            next.mask |= bit;
        } else {
            next.valid = false;
        }
        return next;
    }

    std::int64_t consistency(int, const state_type& s) const { return s.valid ? 0 : 1; }

    bool dominates(const state_type& a, const state_type& b) const {
        if (!a.valid) return true;
        if (!b.valid) return false;
        return a.mask == b.mask && a.endpoint() == b.endpoint() && b.length <= a.length;
    }

    key_type dominance_key(int, const state_type& s) const {
        return static_cast<key_type>(s.mask) |
               (static_cast<key_type>(s.endpoint()) << 32);
    }

    bool is_final_feasible(const state_type& s) const {
        return s.valid && static_cast<int>(s.path.size()) == inst_.n;
    }

    bool homogeneous() const { return false; }
    std::optional<std::uint64_t> declared_width() const { return std::nullopt; }

    const TspInstance& instance() const { return inst_; }

    /// Closed tour length of a Hamiltonian path.
    std::int64_t tour_value(const state_type& s) const {
        return s.length + inst_.w(s.endpoint(), 1);
    }

    /// Minimum closed tour over the given Hamiltonian paths.
    std::int64_t summary_value(std::span<const state_type> states) const {
        std::int64_t best = -1;
        for (const auto& s : states) {
            if (!is_final_feasible(s)) continue;
            const std::int64_t v = tour_value(s);
            if (best < 0 || v < best) best = v;
        }
        return best;
    }

  private:
    TspInstance inst_;
};

} // namespace dpea::problems
