#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"
#include "dpea/rng.hpp"

namespace dpea {

/// Work counters for one dynamic-programming solve.
struct DpMetrics {
    std::uint64_t transition_evals = 0;  ///< applications of transition functions
    std::uint64_t consistency_evals = 0; ///< evaluations of the consistency function
    std::uint64_t dominance_checks = 0;  ///< dominance queries answered
    std::vector<std::size_t> states_kept_per_phase;

    std::uint64_t dp_size() const {
        return std::accumulate(states_kept_per_phase.begin(), states_kept_per_phase.end(),
                               std::uint64_t{0});
    }
};

/// Minimal-by-inclusion dominating subset of the states produced at one
/// phase. Keyed by the adapter's dominance key, so a dominance query or a
/// replacement touches exactly one slot. Entries of distinct keys are
/// incomparable by construction; within a key the single best state is kept,
/// and an offered state equivalent to the incumbent is blocked. Not safe for
/// concurrent mutation; independent solves may run on separate threads.
template <Problem P>
class DominatingSet {
  public:
    using State = typename P::state_type;
    using Key = typename P::key_type;

    explicit DominatingSet(int phase = 0) : phase_(phase) {}

    int phase() const { return phase_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    enum class Offer { inserted, replaced, blocked };

    /// Insertion step of the dominating-set recurrence: the candidate is kept
    /// unless some held state already dominates it (equivalence blocks too);
    /// a held state strictly below the candidate is evicted. The candidate is
    /// assumed feasible for this phase.
    Offer offer(const State& candidate, const P& spec, DpMetrics* metrics = nullptr) {
        Key key = spec.dominance_key(phase_, candidate);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(key, candidate);
            order_.push_back(key);
            return Offer::inserted;
        }
        if (metrics) ++metrics->dominance_checks;
        if (spec.dominates(candidate, it->second)) return Offer::blocked;
        // Same key class and not dominated: the incumbent lies strictly below.
        it->second = candidate;
        return Offer::replaced;
    }

    const State* find(const Key& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    bool contains_key(const Key& key) const { return entries_.contains(key); }

    /// True if some held state dominates `s`.
    bool dominates_state(const State& s, const P& spec) const {
        const State* rep = find(spec.dominance_key(phase_, s));
        return rep != nullptr && spec.dominates(s, *rep);
    }

    /// States in insertion order (deterministic for a fixed offer sequence).
    std::vector<State> states() const {
        std::vector<State> out;
        out.reserve(order_.size());
        for (const Key& k : order_) out.push_back(entries_.at(k));
        return out;
    }

    std::vector<Key> keys() const { return order_; }

  private:
    int phase_;
    std::unordered_map<Key, State> entries_;
    std::vector<Key> order_;
};

/// Builds the phase-0 dominating set from the initial states.
template <Problem P>
DominatingSet<P> initialize_dominating_set(const std::vector<typename P::state_type>& initial,
                                           const P& spec, DpMetrics* metrics = nullptr) {
    if (initial.empty()) throw ValidationError("empty initial state space");
    DominatingSet<P> t0(0);
    for (const auto& s : initial) t0.offer(s, spec, metrics);
    return t0;
}

/// Pair order used when expanding a phase; shuffling it must not change the
/// size of any dominating set (the per-phase sizes are order-independent).
struct DpOptions {
    std::optional<std::uint64_t> shuffle_seed;
};

/// Expands phase `i` from the completed set of phase i-1: every (state,
/// transition) pair is applied once, inconsistent images are dropped, the
/// rest run through the dominating-set insertion.
template <Problem P>
DominatingSet<P> phase_step(const DominatingSet<P>& prev, int i, const P& spec,
                            DpMetrics& metrics, const DpOptions& options = {}) {
    const int fcount = spec.transition_count(i);
    auto states = prev.states();

    std::vector<std::pair<std::size_t, int>> schedule;
    schedule.reserve(states.size() * static_cast<std::size_t>(fcount));
    for (std::size_t s = 0; s < states.size(); ++s)
        for (int f = 0; f < fcount; ++f) schedule.emplace_back(s, f);
    if (options.shuffle_seed) {
        auto rng = make_rng(*options.shuffle_seed + static_cast<std::uint64_t>(i));
        std::shuffle(schedule.begin(), schedule.end(), rng);
    }

    DominatingSet<P> next(i);
    for (auto [s, f] : schedule) {
        auto image = spec.apply(i, f, states[s]);
        ++metrics.transition_evals;
        ++metrics.consistency_evals;
        if (spec.consistency(i, image) > 0) continue;
        next.offer(image, spec, &metrics);
    }
    return next;
}

/// All per-phase dominating sets plus the work counters of the solve.
template <Problem P>
struct DpResult {
    std::vector<DominatingSet<P>> phases; ///< T_0 .. T_n
    DpMetrics metrics;

    const DominatingSet<P>& final_set() const { return phases.back(); }
};

/// Runs the full dynamic program and returns every per-phase set. The
/// transition counter ends up at sum_i |F_i| * |T_{i-1}| exactly.
template <Problem P>
DpResult<P> dp_solve(const P& spec, const DpOptions& options = {}) {
    DpResult<P> result;
    result.phases.push_back(initialize_dominating_set(spec.initial_states(), spec, &result.metrics));
    result.metrics.states_kept_per_phase.push_back(result.phases[0].size());
    const int n = spec.phase_count();
    for (int i = 1; i <= n; ++i) {
        result.phases.push_back(phase_step(result.phases.back(), i, spec, result.metrics, options));
        result.metrics.states_kept_per_phase.push_back(result.phases.back().size());
    }
    return result;
}

/// Untrimmed per-phase state sets (duplicates removed by value). Exponential;
/// serves as the reference the dominating-set properties are checked against.
template <EnumerableProblem P>
std::vector<std::vector<typename P::state_type>> simplified_dp_enumerate(const P& spec,
                                                                         std::size_t max_states) {
    using State = typename P::state_type;
    struct Hash {
        std::size_t operator()(const State& s) const { return hash_value(s); }
    };

    std::vector<std::vector<State>> out;
    std::size_t total = 0;

    auto dedup_push = [&](std::vector<State>&& raw) {
        std::unordered_set<State, Hash> seen;
        std::vector<State> unique;
        for (auto& s : raw)
            if (seen.insert(s).second) unique.push_back(std::move(s));
        total += unique.size();
        if (total > max_states) throw ValidationError("state explosion");
        out.push_back(std::move(unique));
    };

    auto initial = spec.initial_states();
    if (initial.empty()) throw ValidationError("empty initial state space");
    dedup_push(std::move(initial));

    for (int i = 1; i <= spec.phase_count(); ++i) {
        std::vector<State> raw;
        const int fcount = spec.transition_count(i);
        for (const State& s : out[static_cast<std::size_t>(i) - 1]) {
            for (int f = 0; f < fcount; ++f) {
                State image = spec.apply(i, f, s);
                if (spec.consistency(i, image) <= 0) raw.push_back(std::move(image));
            }
        }
        dedup_push(std::move(raw));
    }
    return out;
}

} // namespace dpea
