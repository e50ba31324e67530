#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace dpea;
using namespace dpea::problems;
using testutil::tiny_knapsack;

namespace {

std::vector<std::int64_t> vec(std::initializer_list<std::int64_t> v) { return v; }

/// One phase whose only image is inconsistent: the trimmed solve must fail
/// with an empty final set.
struct BlockedProblem {
    using state_type = std::int64_t;
    using key_type = std::int64_t;
    int phase_count() const { return 1; }
    std::vector<std::int64_t> initial_states() const { return {0}; }
    int transition_count(int) const { return 1; }
    std::int64_t apply(int, int, const std::int64_t& s) const { return s + 1; }
    std::int64_t consistency(int, const std::int64_t& s) const { return s > 0 ? 1 : -1; }
    bool dominates(const std::int64_t& a, const std::int64_t& b) const { return a == b; }
    std::int64_t dominance_key(int, const std::int64_t& s) const { return s; }
    bool is_final_feasible(const std::int64_t&) const { return true; }
    bool homogeneous() const { return false; }
    std::optional<std::uint64_t> declared_width() const { return std::nullopt; }
};

struct ScalarCert {
    int beta() const { return 1; }
    std::vector<int> degree() const { return {1}; }
    int gamma() const { return 1; }
    double pi1() const { return std::log(10.0); }
    double pi2() const { return 1.0; }
    bool maximize() const { return true; }
    std::vector<std::int64_t> coords(const std::int64_t& s) const { return {s}; }
    std::int64_t objective(const std::int64_t& s) const { return s; }
    bool qua_leq(const std::int64_t& a, const std::int64_t& b) const { return a <= b; }
};

} // namespace

TEST_CASE("ratio closeness") {
    const std::vector<int> degree{1, 1};
    SECTION("reflexive") {
        REQUIRE(is_close(vec({4, 9}), vec({4, 9}), degree, 2.0));
    }
    SECTION("factor-two band") {
        REQUIRE(is_close(vec({4, 4}), vec({8, 8}), degree, 2.0));
        REQUIRE_FALSE(is_close(vec({1, 0}), vec({3, 0}), degree, 2.0));
    }
    SECTION("zero degree forces equality") {
        const std::vector<int> mixed{1, 0};
        REQUIRE(is_close(vec({4, 5}), vec({7, 5}), mixed, 2.0));
        REQUIRE_FALSE(is_close(vec({4, 5}), vec({4, 6}), mixed, 2.0));
    }
    SECTION("dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(is_close(vec({1}), vec({1, 2}), degree, 2.0), ValidationError);
    }
}

TEST_CASE("box index on the doubling partition") {
    SECTION("levels of a two-coordinate state") {
        BoxPartition part(2.0, 4, {1, 1});
        REQUIRE(part.box_index(vec({0, 0})) == vec({0, 0}));
        REQUIRE(part.box_index(vec({3, 5})) == vec({2, 3}));
    }
    SECTION("top level includes its closed upper end") {
        BoxPartition part(2.0, 3, {1});
        REQUIRE(part.box_index(vec({8})) == vec({3}));
        REQUIRE_THROWS_WITH(part.box_index(vec({9})), "state outside box universe");
    }
    SECTION("zero-degree coordinates pass through") {
        BoxPartition part(2.0, 3, {1, 0});
        REQUIRE(part.box_index(vec({5, 41})) == vec({3, 41}));
    }
}

TEST_CASE("every integer of the universe falls in exactly one box") {
    const std::pair<double, std::int64_t> cases[] = {
        {1.05, 60}, {1.1, 40},  {1.2, 30}, {1.3, 20}, {1.5, 12}, {1.7, 10}, {2.0, 8},
        {2.5, 7},   {3.0, 6},   {1.025, 90}, {1.15, 35}, {1.4, 15}, {1.6, 11}, {1.8, 9},
        {2.2, 8},   {2.8, 6},   {3.5, 5},  {4.0, 5},  {1.33, 18}, {1.01, 120}};
    for (const auto& [delta, levels] : cases) {
        BoxPartition part(delta, levels, {1});
        for (std::int64_t s = 0; s <= part.top(); ++s) {
            int memberships = 0;
            for (std::int64_t k = 0; k <= levels; ++k)
                if (part.level_contains(k, s)) ++memberships;
            REQUIRE(memberships == 1);
            REQUIRE(part.level_contains(part.level_of(s), s));
        }
    }
}

TEST_CASE("same level implies ratio closeness") {
    auto rng = make_rng(5);
    BoxPartition part(1.17, 30, {1});
    std::uniform_int_distribution<std::int64_t> d(0, part.top());
    int tested = 0;
    while (tested < 10000) {
        const auto a = d(rng), b = d(rng);
        if (part.level_of(a) != part.level_of(b)) continue;
        ++tested;
        REQUIRE(is_close(vec({a}), vec({b}), std::vector<int>{1}, 1.17));
    }
}

TEST_CASE("parameter selection") {
    SECTION("delta follows the precision split") {
        auto p = make_trim_params(0.5, 10, 1, 1.0, 1.0, 20, 2);
        REQUIRE(p.delta == Catch::Approx(1.025));
    }
    SECTION("level count and budget on the worked knapsack") {
        KnapsackProblem kp(tiny_knapsack());
        REQUIRE(kp.input_bit_length() == 12);
        auto cert = kp.certificate();
        auto p = choose_params(0.5, kp, cert);
        const double ln_delta = std::log(1.0 + 0.5 / (2.0 * 1 * 2));
        REQUIRE(p.levels ==
                static_cast<std::int64_t>(std::ceil(12 * std::numbers::ln2 / ln_delta)));
        // 4 n L^2 sum|F_i| with two transitions per phase
        REQUIRE(p.tau == Catch::Approx(4.0 * 2 * double(p.levels) * double(p.levels) * 4));
    }
    SECTION("precision outside (0,1) is rejected") {
        KnapsackProblem kp(tiny_knapsack());
        auto cert = kp.certificate();
        for (double eps : {0.0, 1.0, -0.5, 2.0})
            REQUIRE_THROWS_WITH(choose_params(eps, kp, cert), "epsilon outside (0,1)");
    }
    SECTION("levels shrink as the precision loosens, budget grows with size") {
        KnapsackProblem kp(tiny_knapsack());
        auto cert = kp.certificate();
        auto tight = choose_params(0.1, kp, cert);
        auto mid = choose_params(0.5, kp, cert);
        auto loose = choose_params(0.9, kp, cert);
        REQUIRE(tight.levels >= mid.levels);
        REQUIRE(mid.levels >= loose.levels);
        REQUIRE(tight.tau > loose.tau);

        KnapsackProblem bigger(problems::KnapsackInstance{{2, 3, 4}, {3, 4, 5}, 5});
        auto cert3 = bigger.certificate();
        REQUIRE(choose_params(0.5, bigger, cert3).tau >= mid.tau);
    }
}

TEST_CASE("trimmed solve on the worked knapsack") {
    KnapsackProblem kp(tiny_knapsack());
    auto cert = kp.certificate();
    auto run = dp_trimmed(kp, cert, 0.5);
    REQUIRE(run.value == 7);
    REQUIRE(run.choices == std::vector<int>{1, 1}); // both items taken
    REQUIRE(kp.decode_choices(run.choices) == std::vector<int>{0, 1});
    // per-phase kept states stay within the box-count bound
    const double bound = std::pow(static_cast<double>(run.params.levels), 2);
    for (auto kept : run.kept_per_phase) REQUIRE(static_cast<double>(kept) <= bound);
}

TEST_CASE("single-item instance") {
    KnapsackProblem kp(problems::KnapsackInstance{{1}, {1}, 1});
    auto cert = kp.certificate();
    for (double eps : {0.1, 0.5, 0.9}) {
        auto run = dp_trimmed(kp, cert, eps);
        REQUIRE(run.value == 1);
    }
}

TEST_CASE("backtracked choices reproduce the reported state") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        KnapsackProblem kp(harness::generate_knapsack(10, 12, 15, 30, seed));
        auto cert = kp.certificate();
        auto run = dp_trimmed(kp, cert, 0.3);
        REQUIRE(run.choices.size() == static_cast<std::size_t>(kp.phase_count()));
        KnapsackState s{};
        for (int i = 1; i <= kp.phase_count(); ++i)
            s = kp.apply(i, run.choices[static_cast<std::size_t>(i) - 1], s);
        REQUIRE(s == run.best_state);
        REQUIRE(cert.objective(s) == run.value);
        REQUIRE(s.weight <= kp.instance().capacity);
    }
}

TEST_CASE("trimmed value meets the guarantee and tightens to exact") {
    SECTION("guarantee against the subset oracle") {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            KnapsackProblem kp(harness::generate_knapsack(9, 10, 12, 24, seed));
            auto cert = kp.certificate();
            const auto opt = oracles::knapsack_bruteforce(kp.instance()).optimum;
            for (double eps : {0.1, 0.5}) {
                auto run = dp_trimmed(kp, cert, eps);
                REQUIRE(static_cast<double>(run.value) * (1.0 + eps) >=
                        static_cast<double>(opt));
                REQUIRE(run.value <= opt);
            }
        }
    }
    SECTION("boxes fine enough to isolate states give the exact optimum") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            KnapsackProblem kp(harness::generate_knapsack(12, 8, 8, 20, seed));
            auto cert = kp.certificate();
            auto exact = dp_solve(kp);
            auto finals = exact.final_set().states();
            auto run = dp_trimmed(kp, cert, 0.01);
            REQUIRE(run.value == kp.summary_value(finals));
        }
    }
}

TEST_CASE("empty final set reports no feasible state") {
    BlockedProblem blocked;
    ScalarCert cert;
    REQUIRE_THROWS_WITH(dp_trimmed(blocked, cert, 0.5), "no feasible state");
}

TEST_CASE("mis-declared magnitude bound is caught") {
    KnapsackProblem kp(tiny_knapsack());
    // a certificate whose magnitude bound cannot cover the reachable profits
    KnapsackCertificate lying(kp.phase_count(), std::log(2.0));
    REQUIRE_THROWS_WITH(dp_trimmed(kp, lying, 0.5), "state outside box universe");
}

TEST_CASE("randomized scheme on the worked knapsack") {
    KnapsackProblem kp(tiny_knapsack());
    auto cert = kp.certificate();
    const auto opt = oracles::knapsack_bruteforce(kp.instance()).optimum;

    int approx_ok = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        auto rng = make_rng(derive_seed(123, static_cast<std::uint64_t>(t)));
        auto run = ea_fpras(kp, cert, 0.5, rng);
        REQUIRE(run.iterations == run.params.tau_iterations());
        REQUIRE(run.objective_evaluations == run.iterations + 1);
        if (run.success && static_cast<double>(run.value) * 1.5 >= static_cast<double>(opt))
            ++approx_ok;
        if (run.success) {
            // choices replay to the reported state
            KnapsackState s{};
            for (int i = 1; i <= kp.phase_count(); ++i)
                s = kp.apply(i, run.choices[static_cast<std::size_t>(i) - 1], s);
            REQUIRE(s == run.best_state);
        }
    }
    REQUIRE(approx_ok >= trials * 7 / 10);
}

TEST_CASE("randomized scheme always finishes the one-item chain") {
    KnapsackProblem kp(problems::KnapsackInstance{{1}, {1}, 1});
    auto cert = kp.certificate();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto rng = make_rng(seed);
        auto run = ea_fpras(kp, cert, 0.9, rng);
        REQUIRE(run.success);
        REQUIRE(run.value == 1);
    }
}
