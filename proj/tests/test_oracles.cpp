#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace dpea;
using namespace dpea::problems;
using namespace dpea::oracles;
using testutil::tiny_knapsack;

TEST_CASE("subset-enumeration knapsack oracle") {
    SECTION("worked two-item instance") {
        auto r = knapsack_bruteforce(tiny_knapsack());
        REQUIRE(r.optimum == 7);
        REQUIRE(r.witness == std::vector<int>{0, 1});
        REQUIRE(r.weight_profit_frontier.at(0) == 0);
        REQUIRE(r.weight_profit_frontier.at(2) == 3);
        REQUIRE(r.weight_profit_frontier.at(3) == 4);
        REQUIRE(r.weight_profit_frontier.at(5) == 7);
    }
    SECTION("all items too heavy") {
        auto r = knapsack_bruteforce(KnapsackInstance{{7, 9}, {5, 5}, 3});
        REQUIRE(r.optimum == 0);
        REQUIRE(r.witness.empty());
    }
    SECTION("capacity above the total weight takes everything") {
        KnapsackInstance inst{{2, 3, 4}, {1, 2, 3}, 100};
        auto r = knapsack_bruteforce(inst);
        REQUIRE(r.optimum == 6);
        REQUIRE(r.witness == std::vector<int>{0, 1, 2});
    }
    SECTION("witness re-evaluates to the reported optimum") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto inst = harness::generate_knapsack(10, 12, 12, 30, seed);
            auto r = knapsack_bruteforce(inst);
            std::int64_t w = 0, p = 0;
            for (int i : r.witness) {
                w += inst.weights[static_cast<std::size_t>(i)];
                p += inst.profits[static_cast<std::size_t>(i)];
            }
            REQUIRE(w <= inst.capacity);
            REQUIRE(p == r.optimum);
        }
    }
    SECTION("size guard") {
        REQUIRE_THROWS_AS(knapsack_bruteforce(harness::generate_knapsack(23, 5, 5, 10, 1)),
                          ValidationError);
    }
}

TEST_CASE("tour-enumeration oracle") {
    SECTION("three vertices have one tour value") {
        TspInstance inst{3, {{0, 4, 7}, {4, 0, 2}, {7, 2, 0}}};
        REQUIRE(tsp_bruteforce(inst).optimum == 13);
    }
    SECTION("witness re-evaluates to the optimum, reversal ties on symmetric inputs") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto inst = harness::generate_tsp(6, 20, seed % 2 == 0, seed);
            auto r = tsp_bruteforce(inst);
            REQUIRE(tour_length(inst, r.witness) == r.optimum);
            auto reversed = r.witness;
            std::reverse(reversed.begin() + 1, reversed.end());
            REQUIRE(tour_length(inst, reversed) == r.optimum);
        }
    }
}

TEST_CASE("shortest-path references") {
    SECTION("unit path graph") {
        auto d = sssp_reference(testutil::path_graph(7), 1);
        for (int v = 1; v <= 7; ++v) REQUIRE(d[static_cast<std::size_t>(v) - 1] == v - 1);
    }
    SECTION("triangle with a heavy direct edge") {
        auto d = sssp_reference(testutil::triangle_graph(), 1);
        REQUIRE(d[2] == 2);
    }
    SECTION("matrix diagonal is zero") {
        auto m = apsp_reference(harness::generate_graph(6, 9, 9, 2));
        for (int v = 0; v < 6; ++v) REQUIRE(m[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] == 0);
    }
    SECTION("the two references agree on random graphs") {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const int n = 3 + static_cast<int>(seed % 8);
            auto g = harness::generate_graph(n, std::min(2 * n - 2, n * (n - 1) / 2), 9, seed);
            auto m = apsp_reference(g);
            for (int s = 1; s <= g.n; ++s) {
                auto d = sssp_reference(g, s);
                for (int v = 1; v <= g.n; ++v)
                    REQUIRE(d[static_cast<std::size_t>(v) - 1] ==
                            m[static_cast<std::size_t>(s) - 1][static_cast<std::size_t>(v) - 1]);
            }
        }
    }
}

TEST_CASE("direct minimal dominating subset size") {
    KnapsackProblem kp(tiny_knapsack());
    auto dominates = [&](const KnapsackState& a, const KnapsackState& b) {
        return kp.dominates(a, b);
    };

    SECTION("all-equal states collapse to one") {
        std::vector<KnapsackState> states(5, KnapsackState{2, 3});
        REQUIRE(pareto_bruteforce(states, dominates) == 1);
    }
    SECTION("an antichain keeps every state") {
        std::vector<KnapsackState> states{{1, 1}, {2, 1}, {3, 1}, {4, 1}};
        REQUIRE(pareto_bruteforce(states, dominates) == 4);
    }
    SECTION("the worked instance's full phase-2 space has four classes") {
        auto spaces = simplified_dp_enumerate(kp, 1000);
        REQUIRE(pareto_bruteforce(spaces[2], dominates) == 4);
    }
    SECTION("dominated states are discounted") {
        std::vector<KnapsackState> states{{2, 3}, {2, 5}, {3, 1}};
        REQUIRE(pareto_bruteforce(states, dominates) == 2);
    }
}
