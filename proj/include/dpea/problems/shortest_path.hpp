#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"

namespace dpea::problems {

/// Undirected graph with positive integer weights, vertices 1..n.
struct GraphInstance {
    struct Edge {
        int u = 0, v = 0;
        std::int64_t w = 0;
    };
    int n = 0;
    std::vector<Edge> edges;
};

namespace detail_sp {

struct PathNode {
    int vertex;
    std::shared_ptr<const PathNode> prev;
};

} // namespace detail_sp

/// A vertex sequence held as a shared predecessor chain, with its endpoint,
/// length and visited-set cached. Sequences that are not paths in the graph
/// (repeated vertex or missing edge) are flagged invalid; they arise only as
/// transition images.
struct PathState {
    int origin = 0;
    int endpoint = 0;
    std::int64_t length = 0;
    std::uint64_t visited = 0;
    bool valid = true;
    std::shared_ptr<const detail_sp::PathNode> tail;

    std::vector<int> sequence() const {
        std::vector<int> seq;
        for (const auto* node = tail.get(); node != nullptr; node = node->prev.get())
            seq.push_back(node->vertex);
        std::reverse(seq.begin(), seq.end());
        return seq;
    }

    friend bool operator==(const PathState& a, const PathState& b) {
        if (a.valid != b.valid || a.endpoint != b.endpoint || a.length != b.length ||
            a.visited != b.visited)
            return false;
        return a.sequence() == b.sequence();
    }
    friend std::size_t hash_value(const PathState& s) {
        std::size_t h = std::hash<bool>{}(s.valid);
        detail::hash_mix(h, std::hash<std::int64_t>{}(s.length));
        for (int v : s.sequence()) detail::hash_mix(h, static_cast<std::size_t>(v));
        return h;
    }
};

/// Machinery shared by the two path problems: adjacency storage, the
/// homogeneous transition family {id} + one append per vertex, and the
/// path-validity consistency check.
class PathProblemBase {
  public:
    using state_type = PathState;

    static constexpr int kMaxVertices = 60;

    explicit PathProblemBase(GraphInstance graph) : graph_(std::move(graph)) {
        if (graph_.n < 1) throw ValidationError("graph: empty vertex set");
        if (graph_.n > kMaxVertices) throw ValidationError("graph: more than 60 vertices unsupported");
        adj_.assign(static_cast<std::size_t>(graph_.n) * graph_.n, kAbsent);
        for (const auto& e : graph_.edges) {
            if (e.u < 1 || e.u > graph_.n || e.v < 1 || e.v > graph_.n)
                throw ValidationError("graph: vertex out of range");
            if (e.u == e.v) throw ValidationError("graph: self loop");
            if (e.w <= 0) throw ValidationError("graph: edge weights must be positive");
            auto& a = at(e.u, e.v);
            auto& b = at(e.v, e.u);
            if (a == kAbsent || e.w < a) a = e.w;
            if (b == kAbsent || e.w < b) b = e.w;
        }
    }

    int phase_count() const { return graph_.n; }
    int transition_count(int) const { return graph_.n + 1; }

    /// Transition 0 is the identity; transition f >= 1 appends vertex f.
    state_type apply(int, int f, const state_type& s) const {
        if (f == 0) return s;
        return append_vertex(s, f);
    }

    std::int64_t consistency(int, const state_type& s) const { return s.valid ? -1 : 1; }
    bool is_final_feasible(const state_type& s) const { return s.valid; }
    bool homogeneous() const { return true; }

    const GraphInstance& instance() const { return graph_; }
    int vertex_count() const { return graph_.n; }

    std::int64_t edge_weight(int u, int v) const { return at(u, v); }
    bool has_edge(int u, int v) const { return at(u, v) != kAbsent; }

    static state_type single_vertex_path(int v) {
        PathState s;
        s.origin = s.endpoint = v;
        s.visited = 1ULL << (v - 1);
        s.tail = std::make_shared<const detail_sp::PathNode>(detail_sp::PathNode{v, nullptr});
        return s;
    }

  protected:
    state_type append_vertex(const state_type& s, int v) const {
        PathState next = s;
        next.tail = std::make_shared<const detail_sp::PathNode>(detail_sp::PathNode{v, s.tail});
        const std::uint64_t bit = 1ULL << (v - 1);
        const std::int64_t w = at(s.endpoint, v);
        if (next.valid && w != kAbsent && !(next.visited & bit)) {
            next.length += w;
            next.visited |= bit;
            next.endpoint = v;
        } else {
            next.valid = false;
            next.endpoint = v;
            next.visited |= bit;
        }
        return next;
    }

  private:
    static constexpr std::int64_t kAbsent = -1;

    std::int64_t& at(int u, int v) {
        return adj_[static_cast<std::size_t>(u - 1) * graph_.n + (v - 1)];
    }
    const std::int64_t& at(int u, int v) const {
        return adj_[static_cast<std::size_t>(u - 1) * graph_.n + (v - 1)];
    }

    GraphInstance graph_;
    std::vector<std::int64_t> adj_;
};

/// Single-source shortest paths: all states are paths out of the source,
/// paths to the same endpoint compare by length. Homogeneous, width n.
class SsspProblem : public PathProblemBase {
  public:
    using state_type = PathState;
    using key_type = int;

    SsspProblem(GraphInstance graph, int source) : PathProblemBase(std::move(graph)), source_(source) {
        if (source_ < 1 || source_ > vertex_count())
            throw ValidationError("sssp: source out of range");
    }

    std::vector<state_type> initial_states() const { return {single_vertex_path(source_)}; }

    bool dominates(const state_type& a, const state_type& b) const {
        if (!a.valid) return true;
        if (!b.valid) return false;
        return a.endpoint == b.endpoint && b.length <= a.length;
    }

    key_type dominance_key(int, const state_type& s) const { return s.endpoint; }
    std::optional<std::uint64_t> declared_width() const {
        return static_cast<std::uint64_t>(vertex_count());
    }

    int source() const { return source_; }

    /// Distances reachable from the source, keyed by endpoint.
    std::unordered_map<int, std::int64_t> distances(std::span<const state_type> states) const {
        std::unordered_map<int, std::int64_t> d;
        for (const auto& s : states) {
            auto it = d.find(s.endpoint);
            if (it == d.end() || s.length < it->second) d[s.endpoint] = s.length;
        }
        return d;
    }

    std::int64_t summary_value(std::span<const state_type> states) const {
        std::int64_t sum = 0;
        for (const auto& [v, len] : distances(states)) sum += len;
        return sum;
    }

  private:
    int source_ = 1;
};

/// All-pairs shortest paths: states are paths anywhere in the graph, paths
/// connecting the same ordered vertex pair compare by length. Homogeneous,
/// width n^2.
class ApspProblem : public PathProblemBase {
  public:
    using state_type = PathState;
    using key_type = std::uint32_t;

    explicit ApspProblem(GraphInstance graph) : PathProblemBase(std::move(graph)) {}

    std::vector<state_type> initial_states() const {
        std::vector<state_type> out;
        out.reserve(static_cast<std::size_t>(vertex_count()));
        for (int v = 1; v <= vertex_count(); ++v) out.push_back(single_vertex_path(v));
        return out;
    }

    bool dominates(const state_type& a, const state_type& b) const {
        if (!a.valid) return true;
        if (!b.valid) return false;
        return a.origin == b.origin && a.endpoint == b.endpoint && b.length <= a.length;
    }

    key_type dominance_key(int, const state_type& s) const {
        return static_cast<key_type>(s.origin) << 16 | static_cast<key_type>(s.endpoint);
    }

    std::optional<std::uint64_t> declared_width() const {
        const auto n = static_cast<std::uint64_t>(vertex_count());
        return n * n;
    }

    /// Distance matrix (indexed [u-1][v-1], -1 where unreachable).
    std::vector<std::vector<std::int64_t>> distance_matrix(std::span<const state_type> states) const {
        std::vector<std::vector<std::int64_t>> d(
            static_cast<std::size_t>(vertex_count()),
            std::vector<std::int64_t>(static_cast<std::size_t>(vertex_count()), -1));
        for (const auto& s : states) {
            auto& cell = d[static_cast<std::size_t>(s.origin) - 1][static_cast<std::size_t>(s.endpoint) - 1];
            if (cell < 0 || s.length < cell) cell = s.length;
        }
        return d;
    }

    std::int64_t summary_value(std::span<const state_type> states) const {
        std::int64_t sum = 0;
        for (const auto& row : distance_matrix(states))
            for (auto v : row)
                if (v > 0) sum += v;
        return sum;
    }
};

} // namespace dpea::problems
