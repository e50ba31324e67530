#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <vector>

namespace dpea {

/// Contract a problem adapter must satisfy to drive the phased engines.
///
/// A problem is solved in phases 1..phase_count(). Phase i maps every state
/// kept at phase i-1 through a finite indexed family of transitions. The
/// signed consistency value marks search-space membership (<= 0 feasible).
/// `dominates(a, b)` reads "b is at least as good as a"; two feasible states
/// of one phase are comparable exactly when their dominance keys are equal,
/// and within one key class the order is total.
template <typename P>
concept Problem = requires(const P& p, const typename P::state_type& s, int i, int f) {
    typename P::state_type;
    typename P::key_type;
    { p.phase_count() } -> std::convertible_to<int>;
    { p.initial_states() } -> std::convertible_to<std::vector<typename P::state_type>>;
    { p.transition_count(i) } -> std::convertible_to<int>;
    { p.apply(i, f, s) } -> std::convertible_to<typename P::state_type>;
    { p.consistency(i, s) } -> std::convertible_to<std::int64_t>;
    { p.dominates(s, s) } -> std::convertible_to<bool>;
    { p.dominance_key(i, s) } -> std::convertible_to<typename P::key_type>;
    { p.is_final_feasible(s) } -> std::convertible_to<bool>;
    { p.homogeneous() } -> std::convertible_to<bool>;
    { p.declared_width() } -> std::convertible_to<std::optional<std::uint64_t>>;
};

/// Additionally required by the untrimmed full-state-space enumeration,
/// which deduplicates states by value.
template <typename P>
concept EnumerableProblem = Problem<P> &&
    requires(const typename P::state_type& s) {
        { s == s } -> std::convertible_to<bool>;
        { hash_value(s) } -> std::convertible_to<std::size_t>;
    };

namespace detail {

/// Mixes one word into a running hash (boost-style combine).
inline void hash_mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace detail

} // namespace dpea
