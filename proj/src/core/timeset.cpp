#include "hyptimes/timeset.hpp"

#include "hyptimes/errors.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>

namespace hyptimes {

TimeSet::TimeSet(std::size_t horizon, std::vector<std::size_t> times)
    : horizon_(horizon), times_(std::move(times)) {
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (times_[i] >= horizon_)
            throw InvalidParameter("time " + std::to_string(times_[i]) + " outside horizon " +
                                   std::to_string(horizon_));
        if (i > 0 && times_[i] <= times_[i - 1])
            throw InvalidParameter("times must be strictly increasing");
    }
}

TimeSet TimeSet::interval(std::size_t first, std::size_t last_exclusive, std::size_t horizon) {
    TimeSet out(horizon);
    last_exclusive = std::min(last_exclusive, horizon);
    for (std::size_t k = first; k < last_exclusive; ++k) out.times_.push_back(k);
    return out;
}

TimeSet TimeSet::from_mask(const std::vector<char>& mask) {
    TimeSet out(mask.size());
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) out.times_.push_back(k);
    return out;
}

bool TimeSet::contains(std::size_t k) const {
    return std::binary_search(times_.begin(), times_.end(), k);
}

std::size_t TimeSet::count_in(std::size_t lo, std::size_t hi) const {
    if (hi < lo) return 0;
    auto first = std::lower_bound(times_.begin(), times_.end(), lo);
    auto last = std::upper_bound(first, times_.end(), hi);
    return static_cast<std::size_t>(std::distance(first, last));
}

std::vector<char> TimeSet::mask(std::size_t length) const {
    std::vector<char> m(length, 0);
    for (auto k : times_)
        if (k < length) m[k] = 1;
    return m;
}

TimeSet TimeSet::with_horizon(std::size_t horizon) const {
    TimeSet out(horizon);
    for (auto k : times_)
        if (k < horizon) out.times_.push_back(k);
    return out;
}

TimeSet TimeSet::restricted(std::size_t lo, std::size_t hi) const {
    TimeSet out(horizon_);
    if (hi < lo) return out;
    auto first = std::lower_bound(times_.begin(), times_.end(), lo);
    auto last = std::upper_bound(first, times_.end(), hi);
    out.times_.assign(first, last);
    return out;
}

TimeSet set_union(const TimeSet& a, const TimeSet& b) {
    std::vector<std::size_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return TimeSet(std::max(a.horizon(), b.horizon()), std::move(out));
}

TimeSet set_intersection(const TimeSet& a, const TimeSet& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return TimeSet(std::max(a.horizon(), b.horizon()), std::move(out));
}

TimeSet set_difference(const TimeSet& a, const TimeSet& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return TimeSet(std::max(a.horizon(), b.horizon()), std::move(out));
}

TimeSet dilate(const TimeSet& e, std::size_t m) {
    if (m == 0) throw InvalidParameter("dilation window M must be >= 1");
    // k qualifies iff the next element of E after k lies within distance m.
    std::vector<char> mask(e.horizon(), 0);
    const auto t = e.times();
    std::size_t next = t.size();
    for (std::size_t k = e.horizon(); k-- > 0;) {
        while (next > 0 && t[next - 1] > k) --next;
        if (next < t.size() && t[next] - k <= m) mask[k] = 1;
    }
    return TimeSet::from_mask(mask);
}

TimeSet chain(const TimeSet& e, std::size_t m) {
    if (m == 0) throw InvalidParameter("chain gap M must be >= 1");
    std::vector<char> mask(e.horizon(), 0);
    const auto t = e.times();
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] - t[i - 1] > m) continue;
        for (std::size_t k = t[i - 1]; k < t[i]; ++k) mask[k] = 1;
    }
    return TimeSet::from_mask(mask);
}

IntervalDecomposition connected_components(const TimeSet& e) {
    IntervalDecomposition out;
    for (auto k : e) {
        if (!out.empty() && out.back().last + 1 == k)
            out.back().last = k;
        else
            out.push_back({k, k});
    }
    return out;
}

double density(const TimeSet& e, std::size_t n) {
    if (n == 0) throw InvalidParameter("density horizon n must be >= 1");
    return static_cast<double>(e.count_in(1, n)) / static_cast<double>(n);
}

TimeSet boundary(const TimeSet& f) {
    std::vector<char> mask(f.horizon() + 1, 0);
    for (auto k : f) {
        mask[k] ^= 1;
        mask[k + 1] ^= 1;
    }
    return TimeSet::from_mask(mask);
}

TimeSet interval_refine(const TimeSet& s, const TimeSet& anchors) {
    const std::size_t horizon = std::max(s.horizon(), anchors.horizon());
    std::vector<std::size_t> out;
    const auto a = anchors.times();
    for (std::size_t i = 1; i < a.size(); ++i) {
        const std::size_t width = a[i] - a[i - 1];
        if (s.count_in(a[i - 1] + 1, a[i]) != width) continue;
        for (std::size_t k = a[i - 1] + 1; k <= a[i]; ++k) out.push_back(k);
    }
    return TimeSet(horizon, std::move(out));
}

std::string format_times(const TimeSet& e) {
    std::string out;
    for (auto k : e) {
        if (!out.empty()) out += ',';
        out += std::to_string(k);
    }
    return out;
}

TimeSet parse_times(const std::string& text, std::size_t horizon) {
    std::vector<std::size_t> times;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == ',')) ++p;
        if (p == end) break;
        std::size_t value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc{}) throw InvalidParameter("malformed time list: " + text);
        times.push_back(value);
        p = next;
    }
    return TimeSet(horizon, std::move(times));
}

} // namespace hyptimes
