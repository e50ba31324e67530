#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "dpea/errors.hpp"
#include "dpea/problems/knapsack.hpp"
#include "dpea/problems/shortest_path.hpp"
#include "dpea/problems/tsp.hpp"
#include "dpea/rng.hpp"

namespace dpea::harness {

// Seeded instance generators. A (parameters, seed) pair always produces the
// same instance within a build.

inline problems::KnapsackInstance generate_knapsack(int n, std::int64_t max_weight,
                                                    std::int64_t max_profit,
                                                    std::int64_t capacity, std::uint64_t seed) {
    if (n < 1 || max_weight < 1 || max_profit < 1 || capacity < 0)
        throw ValidationError("knapsack generator: degenerate sizes");
    auto rng = make_rng(seed);
    std::uniform_int_distribution<std::int64_t> dw(1, max_weight), dp(1, max_profit);
    problems::KnapsackInstance inst;
    inst.capacity = capacity;
    for (int i = 0; i < n; ++i) {
        inst.weights.push_back(dw(rng));
        inst.profits.push_back(dp(rng));
    }
    return inst;
}

/// Connected graph: a random spanning tree plus extra random edges up to
/// `edges` total, weights uniform on [1, max_weight].
inline problems::GraphInstance generate_graph(int n, int edges, std::int64_t max_weight,
                                              std::uint64_t seed) {
    const int max_edges = n * (n - 1) / 2;
    if (n < 2 || edges < n - 1 || edges > max_edges || max_weight < 1)
        throw ValidationError("graph generator: degenerate sizes");
    auto rng = make_rng(seed);
    std::uniform_int_distribution<std::int64_t> dw(1, max_weight);

    problems::GraphInstance g;
    g.n = n;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v + 1;
    std::shuffle(order.begin(), order.end(), rng);

    std::set<std::pair<int, int>> used;
    auto add_edge = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        if (!used.insert({u, v}).second) return false;
        g.edges.push_back({u, v, dw(rng)});
        return true;
    };
    for (int i = 1; i < n; ++i) {
        // attach each vertex to a random earlier one: spanning structure
        const int parent = order[uniform_index(rng, static_cast<std::size_t>(i))];
        add_edge(order[static_cast<std::size_t>(i)], parent);
    }
    while (static_cast<int>(g.edges.size()) < edges) {
        const int u = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n))) + 1;
        const int v = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n))) + 1;
        if (u != v) add_edge(u, v);
    }
    return g;
}

/// Complete instance; with `metric` set, weights are Manhattan distances of
/// random integer grid points (triangle inequality holds exactly), otherwise
/// uniform on [1, max_weight].
inline problems::TspInstance generate_tsp(int n, std::int64_t max_weight, bool metric,
                                          std::uint64_t seed) {
    if (n < 3 || max_weight < 1) throw ValidationError("tsp generator: degenerate sizes");
    auto rng = make_rng(seed);
    problems::TspInstance inst;
    inst.n = n;
    inst.weight.assign(static_cast<std::size_t>(n),
                       std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    if (metric) {
        std::uniform_int_distribution<std::int64_t> dc(0, max_weight);
        std::vector<std::pair<std::int64_t, std::int64_t>> pts;
        for (int i = 0; i < n; ++i) pts.emplace_back(dc(rng), dc(rng));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                inst.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                    std::abs(pts[static_cast<std::size_t>(u)].first - pts[static_cast<std::size_t>(v)].first) +
                    std::abs(pts[static_cast<std::size_t>(u)].second - pts[static_cast<std::size_t>(v)].second);
    } else {
        std::uniform_int_distribution<std::int64_t> dw(1, max_weight);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const auto w = dw(rng);
                inst.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = w;
                inst.weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = w;
            }
    }
    return inst;
}

} // namespace dpea::harness
