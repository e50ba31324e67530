#pragma once

// Independent reference solvers for validating engine output on small
// instances. These reimplement objectives and dominance from scratch on
// purpose; they must not call into the engine or the adapters' logic.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "dpea/errors.hpp"
#include "dpea/problems/knapsack.hpp"
#include "dpea/problems/shortest_path.hpp"
#include "dpea/problems/tsp.hpp"

namespace dpea::oracles {

struct KnapsackOracleResult {
    std::int64_t optimum = 0;
    std::vector<int> witness; ///< 0-based item indices of one optimal selection
    /// Best profit per achievable weight <= capacity.
    std::map<std::int64_t, std::int64_t> weight_profit_frontier;
};

/// Exhaustive subset enumeration.
inline KnapsackOracleResult knapsack_bruteforce(const problems::KnapsackInstance& inst) {
    const int n = inst.item_count();
    if (n > 22) throw ValidationError("knapsack oracle: instance too large");
    KnapsackOracleResult result;
    result.weight_profit_frontier[0] = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::int64_t w = 0, p = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                w += inst.weights[static_cast<std::size_t>(i)];
                p += inst.profits[static_cast<std::size_t>(i)];
            }
        if (w > inst.capacity) continue;
        auto it = result.weight_profit_frontier.find(w);
        if (it == result.weight_profit_frontier.end() || p > it->second)
            result.weight_profit_frontier[w] = p;
        if (p > result.optimum) {
            result.optimum = p;
            result.witness.clear();
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) result.witness.push_back(i);
        }
    }
    return result;
}

struct TspOracleResult {
    std::int64_t optimum = 0;
    std::vector<int> witness; ///< optimal tour as a vertex order starting at 1
};

/// Enumerates every tour fixed at vertex 1.
inline TspOracleResult tsp_bruteforce(const problems::TspInstance& inst) {
    if (inst.n > 10) throw ValidationError("tsp oracle: instance too large");
    std::vector<int> rest;
    for (int v = 2; v <= inst.n; ++v) rest.push_back(v);
    TspOracleResult result;
    result.optimum = std::numeric_limits<std::int64_t>::max();
    do {
        std::int64_t len = inst.w(1, rest.front());
        for (std::size_t i = 1; i < rest.size(); ++i) len += inst.w(rest[i - 1], rest[i]);
        len += inst.w(rest.back(), 1);
        if (len < result.optimum) {
            result.optimum = len;
            result.witness.assign(1, 1);
            result.witness.insert(result.witness.end(), rest.begin(), rest.end());
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return result;
}

inline std::int64_t tour_length(const problems::TspInstance& inst, const std::vector<int>& order) {
    std::int64_t len = 0;
    for (std::size_t i = 1; i < order.size(); ++i) len += inst.w(order[i - 1], order[i]);
    len += inst.w(order.back(), order.front());
    return len;
}

inline constexpr std::int64_t kUnreachable = -1;

/// Textbook Dijkstra. Returns distances indexed by vertex-1, -1 unreachable.
inline std::vector<std::int64_t> sssp_reference(const problems::GraphInstance& g, int source) {
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj(static_cast<std::size_t>(g.n) + 1);
    for (const auto& e : g.edges) {
        adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
        adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
    }
    std::vector<std::int64_t> dist(static_cast<std::size_t>(g.n) + 1,
                                   std::numeric_limits<std::int64_t>::max());
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(source)] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
            if (d + w < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = d + w;
                heap.emplace(d + w, v);
            }
        }
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(g.n));
    for (int v = 1; v <= g.n; ++v) {
        auto d = dist[static_cast<std::size_t>(v)];
        out[static_cast<std::size_t>(v) - 1] =
            d == std::numeric_limits<std::int64_t>::max() ? kUnreachable : d;
    }
    return out;
}

/// Textbook Floyd-Warshall. Matrix indexed [u-1][v-1], -1 unreachable.
inline std::vector<std::vector<std::int64_t>> apsp_reference(const problems::GraphInstance& g) {
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::vector<std::int64_t>> d(
        static_cast<std::size_t>(g.n), std::vector<std::int64_t>(static_cast<std::size_t>(g.n), inf));
    for (int v = 0; v < g.n; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    for (const auto& e : g.edges) {
        auto& a = d[static_cast<std::size_t>(e.u) - 1][static_cast<std::size_t>(e.v) - 1];
        auto& b = d[static_cast<std::size_t>(e.v) - 1][static_cast<std::size_t>(e.u) - 1];
        a = std::min(a, e.w);
        b = std::min(b, e.w);
    }
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                auto via = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                           d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                auto& cell = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (via < cell) cell = via;
            }
    for (auto& row : d)
        for (auto& cell : row)
            if (cell >= inf) cell = kUnreachable;
    return d;
}

/// Size of a minimal dominating subset, computed directly: maximal elements
/// grouped into mutual-domination classes, one representative per class.
template <typename State, typename Dominates>
std::size_t pareto_bruteforce(const std::vector<State>& states, Dominates dominates) {
    const std::size_t n = states.size();
    std::vector<bool> maximal(n, true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n && maximal[i]; ++j) {
            if (i == j) continue;
            if (dominates(states[i], states[j]) && !dominates(states[j], states[i]))
                maximal[i] = false;
        }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i) {
        if (!maximal[i]) continue;
        bool fresh = true;
        for (auto r : reps)
            if (dominates(states[i], states[r]) && dominates(states[r], states[i])) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(i);
    }
    return reps.size();
}

} // namespace dpea::oracles
