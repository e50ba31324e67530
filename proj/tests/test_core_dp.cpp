#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace dpea;
using namespace dpea::problems;
using testutil::tiny_knapsack;

namespace {

std::vector<KnapsackState> sorted_by_weight(std::vector<KnapsackState> v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.weight < b.weight; });
    return v;
}

} // namespace

TEST_CASE("initial dominating set") {
    KnapsackProblem kp(tiny_knapsack());

    SECTION("singleton start state") {
        auto t0 = initialize_dominating_set(kp.initial_states(), kp);
        REQUIRE(t0.size() == 1);
        REQUIRE(t0.states()[0] == KnapsackState{0, 0});
    }
    SECTION("duplicate inputs collapse to one entry") {
        auto t0 = initialize_dominating_set<KnapsackProblem>(
            {KnapsackState{0, 0}, KnapsackState{0, 0}}, kp);
        REQUIRE(t0.size() == 1);
    }
    SECTION("empty initial state space is rejected") {
        REQUIRE_THROWS_WITH(initialize_dominating_set<KnapsackProblem>({}, kp),
                            "empty initial state space");
    }
    SECTION("sssp starts from the source path") {
        SsspProblem sp(testutil::triangle_graph(), 1);
        auto t0 = initialize_dominating_set(sp.initial_states(), sp);
        REQUIRE(t0.size() == 1);
        REQUIRE(t0.states()[0].sequence() == std::vector<int>{1});
    }
}

TEST_CASE("phase step on the two-item knapsack") {
    KnapsackProblem kp(tiny_knapsack());
    DpMetrics metrics;
    auto t0 = initialize_dominating_set(kp.initial_states(), kp, &metrics);

    auto t1 = phase_step(t0, 1, kp, metrics);
    REQUIRE(sorted_by_weight(t1.states()) ==
            std::vector<KnapsackState>{{0, 0}, {2, 3}});

    auto t2 = phase_step(t1, 2, kp, metrics);
    REQUIRE(sorted_by_weight(t2.states()) ==
            std::vector<KnapsackState>{{0, 0}, {2, 3}, {3, 4}, {5, 7}});

    // one transition + one consistency evaluation per (state, function) pair
    REQUIRE(metrics.transition_evals == 1 * 2 + 2 * 2);
    REQUIRE(metrics.consistency_evals == metrics.transition_evals);
}

TEST_CASE("equal-weight better-profit state replaces the incumbent") {
    KnapsackProblem kp(tiny_knapsack());
    DominatingSet<KnapsackProblem> set(1);
    REQUIRE(set.offer({2, 3}, kp) == DominatingSet<KnapsackProblem>::Offer::inserted);
    REQUIRE(set.offer({2, 5}, kp) == DominatingSet<KnapsackProblem>::Offer::replaced);
    REQUIRE(set.size() == 1);
    REQUIRE(set.states()[0] == KnapsackState{2, 5});
    // equivalent state is blocked, the kept one stays
    REQUIRE(set.offer({2, 5}, kp) == DominatingSet<KnapsackProblem>::Offer::blocked);
    // worse profit at the same weight is blocked as well
    REQUIRE(set.offer({2, 1}, kp) == DominatingSet<KnapsackProblem>::Offer::blocked);
}

TEST_CASE("dp solve on the two-item knapsack") {
    KnapsackProblem kp(tiny_knapsack());
    auto result = dp_solve(kp);

    auto finals = result.final_set().states();
    REQUIRE(kp.summary_value(finals) == 7);
    REQUIRE(result.metrics.dp_size() == 7); // 1 + 2 + 4
    REQUIRE(result.metrics.states_kept_per_phase == std::vector<std::size_t>{1, 2, 4});
    REQUIRE(result.metrics.transition_evals == 6);
}

TEST_CASE("tsp kept-state counts match the closed form") {
    auto inst = harness::generate_tsp(4, 20, false, 11);
    TspProblem tsp(inst);
    auto result = dp_solve(tsp);
    // paths over i chosen vertices with a designated endpoint
    REQUIRE(result.metrics.states_kept_per_phase[2] == 2 * 3); // i * C(n-1, i), i=2, n=4
}

TEST_CASE("exact state-count accounting matches the closed form") {
    auto inst = harness::generate_knapsack(7, 12, 9, 30, 3);
    KnapsackProblem kp(inst);
    auto result = dp_solve(kp);
    std::uint64_t expected = 0;
    for (int i = 1; i <= kp.phase_count(); ++i)
        expected += static_cast<std::uint64_t>(kp.transition_count(i)) *
                    result.metrics.states_kept_per_phase[static_cast<std::size_t>(i) - 1];
    REQUIRE(result.metrics.transition_evals == expected);
}

TEST_CASE("untrimmed enumeration") {
    SECTION("knapsack full subset space at phase 2") {
        KnapsackProblem kp(tiny_knapsack());
        auto spaces = simplified_dp_enumerate(kp, 1000);
        REQUIRE(spaces.size() == 3);
        REQUIRE(sorted_by_weight(spaces[2]) ==
                std::vector<KnapsackState>{{0, 0}, {2, 3}, {3, 4}, {5, 7}});
    }
    SECTION("sssp triangle phase 1 holds the one-edge paths plus the source") {
        SsspProblem sp(testutil::triangle_graph(), 1);
        auto spaces = simplified_dp_enumerate(sp, 100000);
        std::vector<std::vector<int>> seqs;
        for (const auto& s : spaces[1]) seqs.push_back(s.sequence());
        REQUIRE(seqs.size() == 3);
        REQUIRE(testutil::contains(seqs, {1}));
        REQUIRE(testutil::contains(seqs, {1, 2}));
        REQUIRE(testutil::contains(seqs, {1, 3}));
    }
    SECTION("tsp with three vertices has both final paths") {
        auto inst = harness::generate_tsp(3, 10, false, 5);
        TspProblem tsp(inst);
        auto spaces = simplified_dp_enumerate(tsp, 1000);
        REQUIRE(spaces.back().size() == 2); // (1,2,3) and (1,3,2)
    }
    SECTION("budget overrun reports state explosion") {
        KnapsackProblem big(harness::generate_knapsack(12, 5, 5, 1000, 1));
        REQUIRE_THROWS_WITH(simplified_dp_enumerate(big, 10), "state explosion");
    }
}

namespace {

/// Every enumerated state must be dominated by some kept state of its phase.
template <dpea::EnumerableProblem P>
void check_domination_of_full_space(const P& spec, std::size_t budget = 2'000'000) {
    auto dp = dp_solve(spec);
    auto spaces = simplified_dp_enumerate(spec, budget);
    REQUIRE(spaces.size() == dp.phases.size());
    for (std::size_t i = 0; i < spaces.size(); ++i)
        for (const auto& s : spaces[i])
            REQUIRE(dp.phases[i].dominates_state(s, spec));
}

} // namespace

TEST_CASE("kept sets dominate the full state spaces") {
    SECTION("knapsack") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            check_domination_of_full_space(
                KnapsackProblem(harness::generate_knapsack(9, 10, 10, 25, seed)));
    }
    SECTION("tsp") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            check_domination_of_full_space(TspProblem(harness::generate_tsp(6, 15, false, seed)));
    }
    SECTION("sssp and apsp") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto g = harness::generate_graph(6, 9, 8, seed);
            check_domination_of_full_space(SsspProblem(g, 1));
            check_domination_of_full_space(ApspProblem(g));
        }
    }
}

TEST_CASE("kept-set sizes are independent of iteration order") {
    auto inst = harness::generate_knapsack(8, 10, 10, 24, 17);
    KnapsackProblem kp(inst);
    auto baseline = dp_solve(kp);
    for (std::uint64_t perm = 1; perm <= 20; ++perm) {
        auto shuffled = dp_solve(kp, DpOptions{perm});
        REQUIRE(shuffled.metrics.states_kept_per_phase ==
                baseline.metrics.states_kept_per_phase);
    }
}

TEST_CASE("kept-set size equals the directly computed minimal dominating size") {
    auto inst = harness::generate_knapsack(8, 9, 9, 20, 23);
    KnapsackProblem kp(inst);
    auto dp = dp_solve(kp);
    auto spaces = simplified_dp_enumerate(kp, 100000);
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        auto direct = oracles::pareto_bruteforce(
            spaces[i], [&](const KnapsackState& a, const KnapsackState& b) {
                return kp.dominates(a, b);
            });
        REQUIRE(dp.phases[i].size() == direct);
    }
}

TEST_CASE("kept states are feasible and pairwise incomparable") {
    auto g = harness::generate_graph(7, 12, 9, 31);
    ApspProblem ap(g);
    auto dp = dp_solve(ap);
    for (std::size_t i = 0; i < dp.phases.size(); ++i) {
        auto states = dp.phases[i].states();
        for (const auto& s : states)
            REQUIRE(ap.consistency(static_cast<int>(std::max<std::size_t>(i, 1)), s) <= 0);
        for (std::size_t a = 0; a < states.size(); ++a)
            for (std::size_t b = a + 1; b < states.size(); ++b) {
                REQUIRE_FALSE(ap.dominates(states[a], states[b]));
                REQUIRE_FALSE(ap.dominates(states[b], states[a]));
            }
    }
}
