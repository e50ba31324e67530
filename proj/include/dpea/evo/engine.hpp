#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dpea/core/dp.hpp"
#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"
#include "dpea/rng.hpp"

namespace dpea {

/// Search-guidance variant. The phase-free variant is accepted only for
/// adapters whose transition family and consistency function are shared by
/// every phase (with the identity map included); it compares individuals
/// across phases and keeps a single keyed store, whose size is bounded by
/// the width of the dominance order.
struct EaMode {
    enum class Variant { standard, homogeneous };
    Variant variant = Variant::standard;
    std::optional<std::uint64_t> width_hint;

    static EaMode standard() { return {}; }
    static EaMode homogeneous(std::optional<std::uint64_t> width = std::nullopt) {
        return {Variant::homogeneous, width};
    }
    bool phase_free() const { return variant == Variant::homogeneous; }
};

/// Phase-tagged state: the unit of selection, mutation and replacement.
template <Problem P>
struct Individual {
    int phase = 0;
    typename P::state_type state;
};

template <Problem P>
bool individual_infeasible(const P& spec, const Individual<P>& ind) {
    // Phase-0 states come from the initial space and are feasible by
    // construction; the consistency function is defined from phase 1 on.
    return spec.consistency(std::max(ind.phase, 1), ind.state) > 0;
}

enum class EaOrdering { first_dominated, second_dominated, equivalent, incomparable };

/// Comparison guiding replacement. Standard: individuals compare only within
/// one phase, and an inconsistent individual is dominated by everything.
/// Phase-free: the phase tags are ignored. The consistency value is always
/// taken at the individual's own phase.
template <Problem P>
EaOrdering ea_compare(const Individual<P>& a, const Individual<P>& b, const P& spec,
                      const EaMode& mode = EaMode::standard()) {
    auto below = [&](const Individual<P>& x, const Individual<P>& y) {
        if (individual_infeasible(spec, x)) return true;
        if (!mode.phase_free() && x.phase != y.phase) return false;
        return static_cast<bool>(spec.dominates(x.state, y.state));
    };
    const bool ab = below(a, b);
    const bool ba = below(b, a);
    if (ab && ba) return EaOrdering::equivalent;
    if (ab) return EaOrdering::first_dominated;
    if (ba) return EaOrdering::second_dominated;
    return EaOrdering::incomparable;
}

/// Population with one individual per (bucket, dominance key) slot. In the
/// standard mode the bucket is the phase; in the phase-free mode there is a
/// single bucket. Inconsistent offspring are never inserted (they are
/// strictly dominated by any consistent individual, and the population holds
/// one from initialization on). An offspring equivalent to the incumbent
/// replaces it: the removal rule as written strips only strictly dominated
/// incumbents, but keeping both would break the one-per-slot minimality, and
/// replacement is indistinguishable for the optimization-time accounting.
template <Problem P>
class Population {
  public:
    using State = typename P::state_type;
    using Key = typename P::key_type;

    Population() = default;
    Population(const P& spec, EaMode mode)
        : n_(spec.phase_count()), phase_free_(mode.phase_free()) {
        buckets_.resize(phase_free_ ? 1 : static_cast<std::size_t>(n_) + 1);
    }

    enum class Action { rejected, inserted, replaced };
    struct InsertEvent {
        Action action = Action::rejected;
        int bucket = 0;
        Key key{};
    };

    InsertEvent offer(const Individual<P>& ind, const P& spec) {
        if (ind.phase < 0 || ind.phase > n_)
            throw ValidationError("individual phase out of range");
        if (individual_infeasible(spec, ind)) return {};
        const int b = phase_free_ ? 0 : ind.phase;
        Key key = spec.dominance_key(ind.phase, ind.state);
        Bucket& bucket = buckets_[static_cast<std::size_t>(b)];
        auto it = bucket.slots.find(key);
        if (it == bucket.slots.end()) {
            bucket.slots.emplace(key, ind);
            bucket.order.push_back(key);
            ++size_;
            if (!phase_free_ && b <= n_ - 1 && bucket.order.size() == 1)
                selectable_.push_back(b);
            return {Action::inserted, b, key};
        }
        const Individual<P>& incumbent = it->second;
        if (spec.dominates(ind.state, incumbent.state) &&
            !spec.dominates(incumbent.state, ind.state))
            return {};
        it->second = ind;
        return {Action::replaced, b, key};
    }

    /// Two-stage uniform draw: a phase uniform over the represented phases
    /// below the final one, then uniform over that phase's slots. Phase-free
    /// populations are sampled uniformly as a whole.
    Individual<P> select(std::mt19937_64& rng) const {
        if (phase_free_) {
            const Bucket& bucket = buckets_[0];
            if (bucket.order.empty()) throw std::runtime_error("no extendable individuals");
            return bucket.slots.at(bucket.order[uniform_index(rng, bucket.order.size())]);
        }
        if (selectable_.empty()) throw std::runtime_error("no extendable individuals");
        const int phase = selectable_[uniform_index(rng, selectable_.size())];
        const Bucket& bucket = buckets_[static_cast<std::size_t>(phase)];
        return bucket.slots.at(bucket.order[uniform_index(rng, bucket.order.size())]);
    }

    std::size_t size() const { return size_; }
    bool phase_free() const { return phase_free_; }
    int max_phase() const { return n_; }

    std::size_t bucket_count() const { return buckets_.size(); }
    std::size_t bucket_size(int bucket) const {
        return buckets_[static_cast<std::size_t>(bucket)].order.size();
    }
    const std::vector<Key>& bucket_keys(int bucket) const {
        return buckets_[static_cast<std::size_t>(bucket)].order;
    }
    const Individual<P>* find(int bucket, const Key& key) const {
        const Bucket& b = buckets_[static_cast<std::size_t>(bucket)];
        auto it = b.slots.find(key);
        return it == b.slots.end() ? nullptr : &it->second;
    }

    std::vector<Individual<P>> individuals() const {
        std::vector<Individual<P>> out;
        out.reserve(size_);
        for (const Bucket& b : buckets_)
            for (const Key& k : b.order) out.push_back(b.slots.at(k));
        return out;
    }

  private:
    struct Bucket {
        std::unordered_map<Key, Individual<P>> slots;
        std::vector<Key> order;
    };
    std::vector<Bucket> buckets_;
    std::vector<int> selectable_;
    std::size_t size_ = 0;
    int n_ = 0;
    bool phase_free_ = false;
};

template <Problem P>
Individual<P> select(const Population<P>& population, std::mt19937_64& rng) {
    return population.select(rng);
}

/// One mutation: advance the parent by one phase through a transition drawn
/// uniformly from the next phase's family (the shared family in the
/// phase-free mode, where the phase tag is diagnostic only).
template <Problem P>
Individual<P> mutate(const Individual<P>& parent, const P& spec, std::mt19937_64& rng,
                     const EaMode& mode = EaMode::standard()) {
    const int family = mode.phase_free() ? 1 : parent.phase + 1;
    const int f = static_cast<int>(uniform_index(
        rng, static_cast<std::size_t>(spec.transition_count(family))));
    const int child_phase = std::min(parent.phase + 1, spec.phase_count());
    return {child_phase, spec.apply(family, f, parent.state)};
}

/// Strips phase tags and keeps only states in the feasible solution set.
template <Problem P>
std::vector<typename P::state_type> out_ea(const Population<P>& population, const P& spec) {
    std::vector<typename P::state_type> out;
    for (const auto& ind : population.individuals())
        if (spec.is_final_feasible(ind.state)) out.push_back(ind.state);
    return out;
}

/// Adapter-declared width (largest antichain) of the dominance order.
template <Problem P>
std::uint64_t width_of(const P& spec) {
    auto w = spec.declared_width();
    if (!w) throw std::runtime_error("width unknown");
    return *w;
}

/// When to stop a run. The main loop itself has no exit; a run stops when
/// the final phase's individuals dominate a supplied reference set, when a
/// first final-feasible individual appears, or when the budget is spent.
template <Problem P>
struct StopPolicy {
    enum class Kind { reach_reference, first_final, iteration_budget };
    Kind kind = Kind::iteration_budget;
    std::uint64_t max_iterations = UINT64_MAX;
    const DominatingSet<P>* reference = nullptr;

    static StopPolicy reach(const DominatingSet<P>& ref, std::uint64_t budget = UINT64_MAX) {
        return {Kind::reach_reference, budget, &ref};
    }
    static StopPolicy budget(std::uint64_t iterations) {
        return {Kind::iteration_budget, iterations, nullptr};
    }
    static StopPolicy first_final(std::uint64_t budget = UINT64_MAX) {
        return {Kind::first_final, budget, nullptr};
    }
};

template <Problem P>
struct EaRunReport {
    std::uint64_t iterations = 0;
    std::uint64_t objective_evaluations = 0; ///< iterations + |initial states|
    bool success = false;
    std::vector<typename P::state_type> final_states;
    Population<P> population;
};

namespace detail {

/// Tracks how many reference slots are already dominated, updated in O(1)
/// per insertion. Sound because a slot, once dominated, stays dominated:
/// replacements never move a slot down the order.
template <Problem P>
class ReferenceTracker {
  public:
    using Key = typename P::key_type;

    ReferenceTracker(const DominatingSet<P>* ref, const P& spec, bool phase_free, int n)
        : spec_(spec), phase_free_(phase_free), n_(n) {
        if (!ref) return;
        for (const Key& k : ref->keys()) targets_.emplace(k, *ref->find(k));
    }

    void on_insert(const typename Population<P>::InsertEvent& ev, const Individual<P>& ind) {
        if (ev.action == Population<P>::Action::rejected) return;
        if (!phase_free_ && ev.bucket != n_) return;
        auto it = targets_.find(ev.key);
        if (it == targets_.end() || done_.contains(ev.key)) return;
        if (spec_.dominates(it->second, ind.state)) done_.insert(ev.key);
    }

    bool complete() const { return done_.size() == targets_.size(); }

  private:
    const P& spec_;
    bool phase_free_;
    int n_;
    std::unordered_map<Key, typename P::state_type> targets_;
    std::unordered_set<Key> done_;
};

struct NullObserver {
    template <typename Pop>
    void operator()(const Pop&, std::uint64_t) const {}
};

} // namespace detail

/// The main loop: select, mutate, conditionally insert. Every loop execution
/// is counted whether or not the offspring enters the population.
template <Problem P, typename Observer = detail::NullObserver>
EaRunReport<P> ea_run(const P& spec, EaMode mode, const StopPolicy<P>& stop,
                      std::mt19937_64& rng, Observer observer = {}) {
    if (mode.phase_free() && !spec.homogeneous())
        throw ValidationError("phase-free mode requires homogeneous transition functions");
    if (stop.kind == StopPolicy<P>::Kind::reach_reference && stop.reference == nullptr)
        throw ValidationError("reference stop policy without a reference set");

    EaRunReport<P> report;
    report.population = Population<P>(spec, mode);
    Population<P>& pop = report.population;
    const int n = spec.phase_count();

    detail::ReferenceTracker<P> tracker(
        stop.kind == StopPolicy<P>::Kind::reach_reference ? stop.reference : nullptr, spec,
        mode.phase_free(), n);

    auto initial = spec.initial_states();
    if (initial.empty()) throw ValidationError("empty initial state space");
    for (const auto& s : initial) {
        Individual<P> ind{0, s};
        auto ev = pop.offer(ind, spec);
        tracker.on_insert(ev, ind);
    }

    bool done = stop.kind == StopPolicy<P>::Kind::reach_reference && tracker.complete();
    bool found_final = false;

    while (!done && report.iterations < stop.max_iterations) {
        ++report.iterations;
        Individual<P> child = mutate(pop.select(rng), spec, rng, mode);
        auto ev = pop.offer(child, spec);
        if (ev.action != Population<P>::Action::rejected) {
            switch (stop.kind) {
            case StopPolicy<P>::Kind::reach_reference:
                tracker.on_insert(ev, child);
                done = tracker.complete();
                break;
            case StopPolicy<P>::Kind::first_final:
                if ((mode.phase_free() || child.phase == n) && spec.is_final_feasible(child.state))
                    done = found_final = true;
                break;
            case StopPolicy<P>::Kind::iteration_budget:
                break;
            }
        }
        observer(pop, report.iterations);
    }

    switch (stop.kind) {
    case StopPolicy<P>::Kind::reach_reference: report.success = tracker.complete(); break;
    case StopPolicy<P>::Kind::first_final: report.success = found_final; break;
    case StopPolicy<P>::Kind::iteration_budget: report.success = true; break;
    }
    report.objective_evaluations = report.iterations + initial.size();
    report.final_states = out_ea(pop, spec);
    return report;
}

} // namespace dpea
