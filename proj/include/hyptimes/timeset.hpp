#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hyptimes {

/// A finite, strictly increasing set of nonnegative integer times inside [0, horizon).
///
/// The horizon is the length of the sequence the set was extracted from. Set
/// operations keep the larger horizon of their operands; `boundary` extends it by one.
class TimeSet {
public:
    TimeSet() = default;
    explicit TimeSet(std::size_t horizon) : horizon_(horizon) {}

    /// Throws InvalidParameter unless `times` is strictly increasing and below `horizon`.
    TimeSet(std::size_t horizon, std::vector<std::size_t> times);

    /// The integer interval [first, last_exclusive) clipped to the horizon.
    static TimeSet interval(std::size_t first, std::size_t last_exclusive, std::size_t horizon);

    /// Builds a set from a membership mask; the horizon is the mask length.
    static TimeSet from_mask(const std::vector<char>& mask);

    std::size_t horizon() const noexcept { return horizon_; }
    std::span<const std::size_t> times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    std::size_t front() const { return times_.front(); }
    std::size_t back() const { return times_.back(); }

    auto begin() const noexcept { return times_.begin(); }
    auto end() const noexcept { return times_.end(); }

    bool contains(std::size_t k) const;

    /// Number of elements in the closed interval [lo, hi].
    std::size_t count_in(std::size_t lo, std::size_t hi) const;

    /// Membership mask of length `length` (defaults to the horizon).
    std::vector<char> mask() const { return mask(horizon_); }
    std::vector<char> mask(std::size_t length) const;

    /// Same elements with a different horizon; elements beyond it are dropped.
    TimeSet with_horizon(std::size_t horizon) const;

    /// Elements restricted to the closed interval [lo, hi].
    TimeSet restricted(std::size_t lo, std::size_t hi) const;

    friend bool operator==(const TimeSet&, const TimeSet&) = default;

private:
    std::size_t horizon_ = 0;
    std::vector<std::size_t> times_;
};

/// A maximal run [first, last] (inclusive) of consecutive integers.
struct Interval {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t length() const noexcept { return last - first + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

using IntervalDecomposition = std::vector<Interval>;

TimeSet set_union(const TimeSet& a, const TimeSet& b);
TimeSet set_intersection(const TimeSet& a, const TimeSet& b);
TimeSet set_difference(const TimeSet& a, const TimeSet& b);

/// E(M) = {k >= 0 : k + m in E for some 1 <= m <= M}, clipped to the horizon.
TimeSet dilate(const TimeSet& e, std::size_t m);

/// E<M> = {k : l <= k < m for some l, m in E with m - l <= M}.
TimeSet chain(const TimeSet& e, std::size_t m);

IntervalDecomposition connected_components(const TimeSet& e);

/// Frequency of E in [1, n]: #(E ∩ [1, n]) / n.
double density(const TimeSet& e, std::size_t n);

/// Symmetric difference F Δ (F + 1); the horizon grows by one.
TimeSet boundary(const TimeSet& f);

/// Union of the half-open runs (k, l] between consecutive elements k < l of `anchors`
/// that lie entirely inside `s`.
TimeSet interval_refine(const TimeSet& s, const TimeSet& anchors);

/// Ascending comma-separated integers, e.g. "1,3,7". Empty set -> "".
std::string format_times(const TimeSet& e);

/// Parses the format produced by `format_times`.
TimeSet parse_times(const std::string& text, std::size_t horizon);

} // namespace hyptimes
