#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dpea/core/problem.hpp"
#include "dpea/errors.hpp"

namespace dpea {

/// What an adapter must certify about its formulation for the trimming
/// schemes to apply: states are nonnegative integer vectors of fixed
/// dimension, a scalar objective is extracted by `objective`, `qua_leq` is a
/// total order used to pick box representatives, `degree` bounds the
/// per-coordinate precision loss, `gamma` the objective's, and pi1/pi2 bound
/// coordinate magnitudes and zero-degree coordinate counts for the instance.
template <typename C, typename State>
concept Certificate = requires(const C& c, const State& s) {
    { c.beta() } -> std::convertible_to<int>;
    { c.degree() } -> std::convertible_to<std::vector<int>>;
    { c.gamma() } -> std::convertible_to<int>;
    { c.pi1() } -> std::convertible_to<double>;
    { c.pi2() } -> std::convertible_to<double>;
    { c.maximize() } -> std::convertible_to<bool>;
    { c.coords(s) } -> std::convertible_to<std::vector<std::int64_t>>;
    { c.objective(s) } -> std::convertible_to<std::int64_t>;
    { c.qua_leq(s, s) } -> std::convertible_to<bool>;
};

/// Coordinatewise ratio proximity: b stays within the Delta^degree band
/// around a on every coordinate; a zero degree demands exact equality.
inline bool is_close(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                     std::span<const int> degree, double delta) {
    if (a.size() != b.size() || a.size() != degree.size())
        throw ValidationError("is_close: dimension mismatch");
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (degree[l] == 0) {
            if (a[l] != b[l]) return false;
            continue;
        }
        const double band = std::pow(delta, degree[l]);
        const double al = static_cast<double>(a[l]);
        const double bl = static_cast<double>(b[l]);
        if (bl < al / band || bl > al * band) return false;
    }
    return true;
}

template <typename State, Certificate<State> C>
bool is_close(const State& a, const State& b, const C& cert, double delta) {
    auto ca = cert.coords(a);
    auto cb = cert.coords(b);
    return is_close(std::span<const std::int64_t>(ca), std::span<const std::int64_t>(cb),
                    std::span<const int>(cert.degree()), delta);
}

/// Approximation-scheme parameters derived from the target precision.
struct TrimParams {
    double epsilon = 0;
    double delta = 0;        ///< 1 + epsilon / (2 gamma n)
    std::int64_t levels = 0; ///< ceil(pi1 / ln delta)
    double tau = 0;          ///< 4 n (levels * pi2)^beta * sum_i |F_i|

    std::uint64_t tau_iterations() const {
        if (!(tau >= 0) || tau >= 1.8e19) throw ValidationError("stopping budget overflows");
        return static_cast<std::uint64_t>(std::llround(tau));
    }
};

inline TrimParams make_trim_params(double epsilon, int n, int gamma, double pi1, double pi2,
                                   std::uint64_t transition_total, int beta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon outside (0,1)");
    TrimParams p;
    p.epsilon = epsilon;
    p.delta = 1.0 + epsilon / (2.0 * gamma * n);
    p.levels = static_cast<std::int64_t>(std::ceil(pi1 / std::log(p.delta)));
    p.tau = 4.0 * n * std::pow(static_cast<double>(p.levels) * pi2, beta) *
            static_cast<double>(transition_total);
    return p;
}

template <Problem P, Certificate<typename P::state_type> C>
TrimParams choose_params(double epsilon, const P& spec, const C& cert) {
    std::uint64_t transition_total = 0;
    for (int i = 1; i <= spec.phase_count(); ++i)
        transition_total += static_cast<std::uint64_t>(spec.transition_count(i));
    return make_trim_params(epsilon, spec.phase_count(), cert.gamma(), cert.pi1(), cert.pi2(),
                            transition_total, cert.beta());
}

/// Geometric partition of [0, Delta^L] into integer levels: level 0 holds
/// only 0, level k the integers in [Delta^(k-1), Delta^k - 1], and the top
/// level additionally includes Delta^L itself. Boundaries are rounded powers
/// held as integers, so membership queries are exact integer comparisons.
class BoxPartition {
  public:
    BoxPartition(double delta, std::int64_t levels, std::vector<int> degree)
        : degree_(std::move(degree)) {
        if (delta <= 1.0) throw ValidationError("box partition: delta must exceed 1");
        if (levels < 1) throw ValidationError("box partition: need at least one level");
        boundary_.reserve(static_cast<std::size_t>(levels) + 1);
        boundary_.push_back(0);
        for (std::int64_t k = 1; k <= levels; ++k) {
            const double p = std::pow(delta, static_cast<double>(k));
            std::int64_t top;
            if (p >= kSaturation) {
                top = std::numeric_limits<std::int64_t>::max();
            } else if (k == levels) {
                top = static_cast<std::int64_t>(std::floor(p));
            } else {
                top = static_cast<std::int64_t>(std::ceil(p)) - 1;
            }
            boundary_.push_back(std::max(top, boundary_.back()));
            if (top == std::numeric_limits<std::int64_t>::max()) break;
        }
        levels_ = levels;
    }

    std::int64_t levels() const { return levels_; }
    std::int64_t top() const { return boundary_.back(); }

    /// Level containing the scaled coordinate s.
    std::int64_t level_of(std::int64_t s) const {
        if (s < 0) throw ValidationError("box partition: negative coordinate");
        if (s > boundary_.back()) throw ValidationError("state outside box universe");
        if (s == 0) return 0;
        // Smallest k with s <= boundary_[k].
        std::size_t lo = 1, hi = boundary_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (s <= boundary_[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return static_cast<std::int64_t>(lo);
    }

    /// Box index of a state's coordinate vector: the level per scaled
    /// coordinate, the raw value per zero-degree coordinate.
    std::vector<std::int64_t> box_index(std::span<const std::int64_t> coords) const {
        if (coords.size() != degree_.size())
            throw ValidationError("box partition: dimension mismatch");
        std::vector<std::int64_t> box(coords.size());
        for (std::size_t l = 0; l < coords.size(); ++l)
            box[l] = degree_[l] == 0 ? coords[l] : level_of(coords[l]);
        return box;
    }

    /// True if the integer s belongs to level k; used by the partition-law
    /// checks, mirroring level_of through the same boundaries.
    bool level_contains(std::int64_t k, std::int64_t s) const {
        if (k == 0) return s == 0;
        if (k < 0 || static_cast<std::size_t>(k) >= boundary_.size()) return false;
        return s > boundary_[static_cast<std::size_t>(k) - 1] &&
               s <= boundary_[static_cast<std::size_t>(k)];
    }

  private:
    static constexpr double kSaturation = 4.0e18;

    std::vector<std::int64_t> boundary_;
    std::vector<int> degree_;
    std::int64_t levels_ = 0;
};

template <typename State, Certificate<State> C>
std::vector<std::int64_t> box_index(const State& s, const BoxPartition& partition, const C& cert) {
    auto coords = cert.coords(s);
    return partition.box_index(std::span<const std::int64_t>(coords));
}

struct BoxKeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const {
        std::size_t h = key.size();
        for (auto v : key) detail::hash_mix(h, std::hash<std::int64_t>{}(v));
        return h;
    }
};

} // namespace dpea
