#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"
#include "dpea/rng.hpp"
#include "dpea/trim/boxes.hpp"

namespace dpea {

using BoxKey = std::vector<std::int64_t>;

template <typename State>
struct TrimmedResult {
    std::int64_t value = 0;
    State best_state{};
    std::vector<int> choices; ///< transition index applied at each phase
    TrimParams params;
    std::vector<std::size_t> kept_per_phase;
    std::uint64_t transition_evals = 0;
};

namespace detail {

template <typename State>
struct TrimEntry {
    State state;
    int transition = -1;     ///< transition that produced this state
    std::size_t parent = 0;  ///< index into the previous phase's entries
};

/// One trimmed phase: at most one state per box, selected by the
/// box-order; an arriving state below-or-equal to the incumbent is
/// discarded, otherwise it takes the slot.
template <typename State>
class TrimmedPhase {
  public:
    using Entry = TrimEntry<State>;

    template <typename QuaLeq>
    bool offer(const BoxKey& box, Entry entry, QuaLeq&& qua_leq) {
        auto it = index_.find(box);
        if (it == index_.end()) {
            index_.emplace(box, entries_.size());
            entries_.push_back(std::move(entry));
            return true;
        }
        Entry& kept = entries_[it->second];
        if (qua_leq(entry.state, kept.state)) return false;
        kept = std::move(entry);
        return true;
    }

    void push_untrimmed(Entry entry) { entries_.push_back(std::move(entry)); }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

  private:
    std::vector<Entry> entries_;
    std::unordered_map<BoxKey, std::size_t, BoxKeyHash> index_;
};

template <typename State, typename Phases>
std::vector<int> backtrack_choices(const Phases& phases, std::size_t final_index) {
    std::vector<int> choices;
    std::size_t at = final_index;
    for (std::size_t i = phases.size(); i-- > 1;) {
        const auto& e = phases[i].entries()[at];
        choices.push_back(e.transition);
        at = e.parent;
    }
    std::reverse(choices.begin(), choices.end());
    return choices;
}

} // namespace detail

/// Deterministic trimmed dynamic program: runs the phased recurrence but
/// keeps only the box-order maximum per box, then backtracks the best final
/// state through stored (parent, transition) links. With parameters from
/// make_trim_params the returned value is within a factor (1 + epsilon) of
/// the untrimmed optimum.
template <Problem P, Certificate<typename P::state_type> C>
TrimmedResult<typename P::state_type> dp_trimmed(const P& spec, const C& cert, double epsilon) {
    using State = typename P::state_type;
    using Phase = detail::TrimmedPhase<State>;

    TrimmedResult<State> result;
    result.params = choose_params(epsilon, spec, cert);
    BoxPartition partition(result.params.delta, result.params.levels, cert.degree());
    auto qua = [&cert](const State& a, const State& b) { return cert.qua_leq(a, b); };

    const int n = spec.phase_count();
    std::vector<Phase> phases(static_cast<std::size_t>(n) + 1);
    for (const State& s : spec.initial_states())
        phases[0].push_untrimmed({s, -1, 0});

    for (int i = 1; i <= n; ++i) {
        const auto& prev = phases[static_cast<std::size_t>(i) - 1].entries();
        auto& cur = phases[static_cast<std::size_t>(i)];
        const int fcount = spec.transition_count(i);
        for (std::size_t pi = 0; pi < prev.size(); ++pi) {
            for (int f = 0; f < fcount; ++f) {
                State image = spec.apply(i, f, prev[pi].state);
                ++result.transition_evals;
                if (spec.consistency(i, image) > 0) continue;
                BoxKey box = box_index(image, partition, cert);
                cur.offer(box, {std::move(image), f, pi}, qua);
            }
        }
    }

    for (const auto& phase : phases) result.kept_per_phase.push_back(phase.size());

    const auto& last = phases[static_cast<std::size_t>(n)].entries();
    if (last.empty()) throw std::runtime_error("no feasible state");
    std::size_t best = 0;
    for (std::size_t i = 1; i < last.size(); ++i) {
        const auto a = cert.objective(last[i].state);
        const auto b = cert.objective(last[best].state);
        if (cert.maximize() ? a > b : a < b) best = i;
    }
    result.best_state = last[best].state;
    result.value = cert.objective(result.best_state);
    result.choices = detail::backtrack_choices<State>(phases, best);
    return result;
}

template <typename State>
struct FprasResult {
    bool success = false; ///< a final-phase individual existed at the stop
    std::int64_t value = 0;
    State best_state{};
    std::vector<int> choices;
    TrimParams params;
    std::uint64_t iterations = 0;
    std::uint64_t objective_evaluations = 0;
};

/// Randomized trimmed scheme: the phased population loop with replacement
/// decided by (same phase, same box, box-order), run for exactly the
/// stopping budget of the parameter set. Returns the objective-best
/// final-phase individual's backtracked solution; with parameters from
/// make_trim_params the result is (1 + epsilon)-approximate with probability
/// at least 3/4.
template <Problem P, Certificate<typename P::state_type> C>
FprasResult<typename P::state_type> ea_fpras(const P& spec, const C& cert, double epsilon,
                                             std::mt19937_64& rng) {
    using State = typename P::state_type;

    struct Ind {
        State state;
        std::vector<int> choices;
    };
    struct Bucket {
        std::unordered_map<BoxKey, std::size_t, BoxKeyHash> index;
        std::vector<Ind> members;
    };

    FprasResult<State> result;
    result.params = choose_params(epsilon, spec, cert);
    BoxPartition partition(result.params.delta, result.params.levels, cert.degree());
    const std::uint64_t tau = result.params.tau_iterations();
    const int n = spec.phase_count();

    std::vector<Bucket> buckets(static_cast<std::size_t>(n) + 1);
    std::vector<int> selectable;

    auto offer = [&](int phase, Ind ind) {
        Bucket& b = buckets[static_cast<std::size_t>(phase)];
        BoxKey box = box_index(ind.state, partition, cert);
        auto it = b.index.find(box);
        if (it == b.index.end()) {
            b.index.emplace(std::move(box), b.members.size());
            b.members.push_back(std::move(ind));
            if (phase <= n - 1 && b.members.size() == 1) selectable.push_back(phase);
            return;
        }
        Ind& kept = b.members[it->second];
        if (cert.qua_leq(ind.state, kept.state) && !cert.qua_leq(kept.state, ind.state)) return;
        kept = std::move(ind);
    };

    const auto initial = spec.initial_states();
    if (initial.empty()) throw ValidationError("empty initial state space");
    for (const State& s : initial) offer(0, {s, {}});

    for (std::uint64_t it = 0; it < tau; ++it) {
        ++result.iterations;
        const int phase = selectable[uniform_index(rng, selectable.size())];
        const Bucket& b = buckets[static_cast<std::size_t>(phase)];
        const Ind& parent = b.members[uniform_index(rng, b.members.size())];
        const int next = phase + 1;
        const int f = static_cast<int>(
            uniform_index(rng, static_cast<std::size_t>(spec.transition_count(next))));
        State image = spec.apply(next, f, parent.state);
        if (spec.consistency(next, image) > 0) continue;
        Ind child{std::move(image), parent.choices};
        child.choices.push_back(f);
        offer(next, std::move(child));
    }
    result.objective_evaluations = result.iterations + initial.size();

    // Best by objective among the deepest-phase consistent individuals;
    // only a full-depth individual counts as success.
    for (int phase = n; phase >= 0; --phase) {
        const Bucket& b = buckets[static_cast<std::size_t>(phase)];
        const Ind* best = nullptr;
        for (const Ind& ind : b.members) {
            if (phase == n && !spec.is_final_feasible(ind.state)) continue;
            if (!best) {
                best = &ind;
                continue;
            }
            const auto a = cert.objective(ind.state);
            const auto bb = cert.objective(best->state);
            if (cert.maximize() ? a > bb : a < bb) best = &ind;
        }
        if (best) {
            result.success = phase == n;
            result.value = cert.objective(best->state);
            result.best_state = best->state;
            result.choices = best->choices;
            break;
        }
    }
    return result;
}

} // namespace dpea
