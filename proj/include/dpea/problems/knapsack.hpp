#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"

namespace dpea::problems {

struct KnapsackInstance {
    std::vector<std::int64_t> weights;
    std::vector<std::int64_t> profits;
    std::int64_t capacity = 0;

    int item_count() const { return static_cast<int>(weights.size()); }
};

/// Accumulated (weight, profit) of a partial item selection.
struct KnapsackState {
    std::int64_t weight = 0;
    std::int64_t profit = 0;

    friend bool operator==(const KnapsackState&, const KnapsackState&) = default;
    friend std::size_t hash_value(const KnapsackState& s) {
        std::size_t h = std::hash<std::int64_t>{}(s.weight);
        detail::hash_mix(h, std::hash<std::int64_t>{}(s.profit));
        return h;
    }
};

inline int bit_length(std::int64_t v) {
    int bits = 0;
    for (std::uint64_t u = static_cast<std::uint64_t>(v); u != 0; u >>= 1) ++bits;
    return bits;
}

/// Quality certificate of the knapsack formulation used by the trimming
/// schemes: states are nonnegative integer pairs, the transitions only add
/// constants, the objective is the profit coordinate, and the box-order
/// prefers lighter states. The accompanying dominance order is the trivial
/// one (states compare only to themselves).
class KnapsackCertificate {
  public:
    KnapsackCertificate(int phases, double pi1) : phases_(phases), pi1_(pi1) {}

    int beta() const { return 2; }
    const std::vector<int>& degree() const { return degree_; }
    int gamma() const { return 1; }
    double pi1() const { return pi1_; }
    double pi2() const { return 1.0; } // no zero-degree coordinates
    bool maximize() const { return true; }

    std::vector<std::int64_t> coords(const KnapsackState& s) const {
        return {s.weight, s.profit};
    }
    std::int64_t objective(const KnapsackState& s) const { return s.profit; }
    /// a is at most as good as b for box representative selection.
    bool qua_leq(const KnapsackState& a, const KnapsackState& b) const {
        return a.weight >= b.weight;
    }
    /// The trivial partial order paired with the box-order above.
    bool dom_leq(const KnapsackState& a, const KnapsackState& b) const { return a == b; }

    int phase_count() const { return phases_; }

  private:
    int phases_;
    double pi1_;
    std::vector<int> degree_{1, 1};
};

/// Exact 0/1 knapsack formulation: phase i either skips item i or adds its
/// (weight, profit); overweight states fall outside the search space; states
/// of equal weight are totally ordered by profit.
class KnapsackProblem {
  public:
    using state_type = KnapsackState;
    using key_type = std::int64_t;

    explicit KnapsackProblem(KnapsackInstance inst) : inst_(std::move(inst)) {
        if (inst_.weights.empty()) throw ValidationError("knapsack: no items");
        if (inst_.weights.size() != inst_.profits.size())
            throw ValidationError("knapsack: weights/profits length mismatch");
        if (inst_.capacity < 0) throw ValidationError("knapsack: negative capacity");
        std::int64_t wsum = 0, psum = 0;
        for (std::size_t i = 0; i < inst_.weights.size(); ++i) {
            if (inst_.weights[i] <= 0 || inst_.profits[i] <= 0)
                throw ValidationError("knapsack: weights and profits must be positive");
            wsum += inst_.weights[i];
            psum += inst_.profits[i];
            if (wsum > kValueCap || psum > kValueCap)
                throw ValidationError("knapsack: accumulated values exceed supported range");
        }
    }

    int phase_count() const { return inst_.item_count(); }
    std::vector<state_type> initial_states() const { return {KnapsackState{}}; }
    int transition_count(int) const { return 2; }

    state_type apply(int i, int f, const state_type& s) const {
        if (f == 0) return s;
        return {s.weight + inst_.weights[static_cast<std::size_t>(i) - 1],
                s.profit + inst_.profits[static_cast<std::size_t>(i) - 1]};
    }

    std::int64_t consistency(int, const state_type& s) const {
        return s.weight - inst_.capacity;
    }

    bool dominates(const state_type& a, const state_type& b) const {
        return a.weight == b.weight && a.profit <= b.profit;
    }

    key_type dominance_key(int, const state_type& s) const { return s.weight; }
    bool is_final_feasible(const state_type& s) const { return s.weight <= inst_.capacity; }
    bool homogeneous() const { return false; }

    /// One dominance class per reachable weight value 0..capacity.
    std::optional<std::uint64_t> declared_width() const {
        return static_cast<std::uint64_t>(inst_.capacity) + 1;
    }

    const KnapsackInstance& instance() const { return inst_; }

    /// Total binary length of all numeric fields of the instance.
    int input_bit_length() const {
        int bits = bit_length(inst_.capacity);
        for (auto w : inst_.weights) bits += bit_length(w);
        for (auto p : inst_.profits) bits += bit_length(p);
        return bits;
    }

    KnapsackCertificate certificate() const {
        return {phase_count(), static_cast<double>(input_bit_length()) * std::numbers::ln2};
    }

    /// Item indices (0-based) encoded by a take/skip choice vector.
    std::vector<int> decode_choices(std::span<const int> choices) const {
        std::vector<int> items;
        for (std::size_t i = 0; i < choices.size(); ++i)
            if (choices[i] == 1) items.push_back(static_cast<int>(i));
        return items;
    }

    /// Best profit among the given final states.
    std::int64_t summary_value(std::span<const state_type> states) const {
        std::int64_t best = 0;
        for (const auto& s : states)
            if (s.weight <= inst_.capacity) best = std::max(best, s.profit);
        return best;
    }

  private:
    static constexpr std::int64_t kValueCap = std::numeric_limits<std::int64_t>::max() / 8;
    KnapsackInstance inst_;
};

} // namespace dpea::problems
