#pragma once

// Hyperbolic, weakly hyperbolic and mildly hyperbolic times of a finite real sequence.
//
// All kernels run in linear time on the prefix sums B_p = sum_{l<p} (a_l - delta):
// p is delta-hyperbolic iff B_p >= B_k for every k < p, and (delta, M)-weakly
// hyperbolic iff the same holds for max(p - M, 0) <= k < p. Inequalities are the plain
// `>=` of the scalar type.

#include "hyptimes/sequence.hpp"
#include "hyptimes/timeset.hpp"

#include <deque>
#include <limits>

namespace hyptimes {

namespace detail {

inline void check_delta(double delta) {
    if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
}

inline void check_window(std::size_t m, const char* name) {
    if (m == 0) throw InvalidParameter(std::string(name) + " must be >= 1");
}

/// Marks the times p in (first, last] with sum_{k<=l<p} a_l >= (p-k) delta for every
/// first <= k < p. Indices are absolute.
template <typename Derived>
void mark_hyperbolic(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar delta,
                     std::size_t first, std::size_t last, std::vector<char>& mask) {
    using Scalar = typename Derived::Scalar;
    Scalar prefix = 0;
    Scalar running_max = 0;  // max_{first <= k < p} B_k, with B_first = 0
    for (std::size_t p = first + 1; p <= last; ++p) {
        prefix += a(static_cast<Eigen::Index>(p - 1)) - delta;
        if (prefix >= running_max) mask[p] = 1;
        if (prefix > running_max) running_max = prefix;
    }
}

} // namespace detail

/// Delta-hyperbolic times p in [1, N): every backward average from p is at least delta.
template <typename Derived>
TimeSet hyperbolic_times(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar delta) {
    validate_sequence(a);
    detail::check_delta(static_cast<double>(delta));
    const auto n = static_cast<std::size_t>(a.size());
    std::vector<char> mask(n, 0);
    detail::mark_hyperbolic(a, delta, 0, n - 1, mask);
    return TimeSet::from_mask(mask);
}

/// (delta, M)-weakly hyperbolic times: the hyperbolic-time condition only over the last M
/// windows, k = max(p - M, 0), ..., p - 1. Time 0 is never included.
template <typename Derived>
TimeSet weakly_hyperbolic_times(const Eigen::MatrixBase<Derived>& a,
                                typename Derived::Scalar delta, std::size_t m) {
    using Scalar = typename Derived::Scalar;
    validate_sequence(a);
    detail::check_delta(static_cast<double>(delta));
    detail::check_window(m, "M");
    const auto n = static_cast<std::size_t>(a.size());
    std::vector<Scalar> prefix(n, Scalar(0));
    for (std::size_t p = 1; p < n; ++p)
        prefix[p] = prefix[p - 1] + (a(static_cast<Eigen::Index>(p - 1)) - delta);

    // Sliding-window maximum of prefix[k] over k in [p - M, p).
    std::vector<char> mask(n, 0);
    std::deque<std::size_t> window;
    for (std::size_t p = 1; p < n; ++p) {
        const std::size_t k = p - 1;
        while (!window.empty() && prefix[window.back()] <= prefix[k]) window.pop_back();
        window.push_back(k);
        while (window.front() + m < p) window.pop_front();
        if (prefix[p] >= prefix[window.front()]) mask[p] = 1;
    }
    return TimeSet::from_mask(mask);
}

/// One connected component I of F^{delta,M}(M) whose sum fell below delta * #I.
struct ComponentSumViolation {
    Interval component;
    double sum = 0.0;
    double required = 0.0;
};

/// Checks sum_{k in I} a_k >= delta * #I on every component I of F^{delta,M}(M).
/// The inequality always holds in exact arithmetic; a violation signals rounding trouble.
template <typename Derived>
std::vector<ComponentSumViolation> component_sum_violations(const Eigen::MatrixBase<Derived>& a,
                                                            typename Derived::Scalar delta,
                                                            std::size_t m) {
    const TimeSet weak = weakly_hyperbolic_times(a, delta, m);
    std::vector<ComponentSumViolation> out;
    for (const auto& c : connected_components(dilate(weak, m))) {
        const double sum = static_cast<double>(
            a.segment(static_cast<Eigen::Index>(c.first), static_cast<Eigen::Index>(c.length()))
                .sum());
        const double required = static_cast<double>(delta) * static_cast<double>(c.length());
        if (!(sum >= required)) out.push_back({c, sum, required});
    }
    return out;
}

/// (delta, M)-mildly hyperbolic times: the union, over the components I = [s, t] of
/// F^{delta,M}(M), of the delta/2-hyperbolic times of the restricted sequence a_I. The
/// restricted sequence keeps absolute indices and its left endpoint s never qualifies.
template <typename Derived>
TimeSet mildly_hyperbolic_times(const Eigen::MatrixBase<Derived>& a,
                                typename Derived::Scalar delta, std::size_t m) {
    const TimeSet weak = weakly_hyperbolic_times(a, delta, m);
    std::vector<char> mask(static_cast<std::size_t>(a.size()), 0);
    for (const auto& c : connected_components(dilate(weak, m)))
        detail::mark_hyperbolic(a, delta / 2, c.first, c.last, mask);
    return TimeSet::from_mask(mask);
}

/// G((N)) = G^{delta,M}(N) ∩ F^{delta,M}(M).
template <typename Derived>
TimeSet g_double(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar delta,
                 std::size_t m, std::size_t n) {
    detail::check_window(n, "N");
    const TimeSet weak_dilated = dilate(weakly_hyperbolic_times(a, delta, m), m);
    return set_intersection(dilate(mildly_hyperbolic_times(a, delta, m), n), weak_dilated);
}

/// Fraction of times in [1, n] inside the dilated set E(M) that are not chained, i.e.
/// d_n(E(M) \ E<N>).
inline double unchained_density(const TimeSet& e, std::size_t m, std::size_t n_chain,
                                std::size_t n) {
    return density(set_difference(dilate(e, m), chain(e, n_chain)), n);
}

} // namespace hyptimes
