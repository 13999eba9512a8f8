#include "hyptimes/oracle.hpp"

#include <algorithm>
#include <set>

namespace hyptimes::oracle {

namespace {

double window_sum(std::span<const double> a, std::size_t k, std::size_t p) {
    double s = 0.0;
    for (std::size_t l = k; l < p; ++l) s += a[l];
    return s;
}

TimeSet to_timeset(std::size_t horizon, const std::set<std::size_t>& s) {
    return TimeSet(horizon, std::vector<std::size_t>(s.begin(), s.end()));
}

bool member(const TimeSet& e, std::size_t k) {
    return std::find(e.begin(), e.end(), k) != e.end();
}

} // namespace

TimeSet hyperbolic_times(std::span<const double> a, double delta) {
    std::set<std::size_t> out;
    for (std::size_t p = 1; p < a.size(); ++p) {
        bool ok = true;
        for (std::size_t k = 0; k < p && ok; ++k)
            ok = window_sum(a, k, p) >= static_cast<double>(p - k) * delta;
        if (ok) out.insert(p);
    }
    return to_timeset(a.size(), out);
}

TimeSet weakly_hyperbolic_times(std::span<const double> a, double delta, std::size_t m) {
    std::set<std::size_t> out;
    for (std::size_t p = 1; p < a.size(); ++p) {
        bool ok = true;
        const std::size_t first = p > m ? p - m : 0;
        for (std::size_t k = first; k < p && ok; ++k)
            ok = window_sum(a, k, p) >= static_cast<double>(p - k) * delta;
        if (ok) out.insert(p);
    }
    return to_timeset(a.size(), out);
}

TimeSet dilate(const TimeSet& e, std::size_t m) {
    std::set<std::size_t> out;
    for (std::size_t k = 0; k < e.horizon(); ++k)
        for (std::size_t j = 1; j <= m; ++j)
            if (member(e, k + j)) out.insert(k);
    return to_timeset(e.horizon(), out);
}

TimeSet chain(const TimeSet& e, std::size_t m) {
    std::set<std::size_t> out;
    for (std::size_t k = 0; k < e.horizon(); ++k)
        for (auto l : e)
            for (auto r : e)
                if (l <= k && k < r && r - l <= m) out.insert(k);
    return to_timeset(e.horizon(), out);
}

IntervalDecomposition connected_components(const TimeSet& e) {
    IntervalDecomposition out;
    for (std::size_t k = 0; k < e.horizon(); ++k) {
        if (!member(e, k)) continue;
        if (k > 0 && member(e, k - 1)) continue;
        std::size_t last = k;
        while (member(e, last + 1)) ++last;
        out.push_back({k, last});
    }
    return out;
}

TimeSet mildly_hyperbolic_times(std::span<const double> a, double delta, std::size_t m) {
    const TimeSet fm = oracle::dilate(oracle::weakly_hyperbolic_times(a, delta, m), m);
    std::set<std::size_t> out;
    for (const auto& c : oracle::connected_components(fm)) {
        for (std::size_t p = c.first + 1; p <= c.last; ++p) {
            bool ok = true;
            for (std::size_t k = c.first; k < p && ok; ++k)
                ok = window_sum(a, k, p) >= static_cast<double>(p - k) * (delta / 2);
            if (ok) out.insert(p);
        }
    }
    return to_timeset(a.size(), out);
}

TimeSet g_double(std::span<const double> a, double delta, std::size_t m, std::size_t n) {
    const TimeSet g_n = oracle::dilate(oracle::mildly_hyperbolic_times(a, delta, m), n);
    const TimeSet f_m = oracle::dilate(oracle::weakly_hyperbolic_times(a, delta, m), m);
    std::set<std::size_t> out;
    for (auto k : g_n)
        if (member(f_m, k)) out.insert(k);
    return to_timeset(a.size(), out);
}

double density(const TimeSet& e, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t k = 1; k <= n; ++k)
        if (member(e, k)) ++count;
    return static_cast<double>(count) / static_cast<double>(n);
}

TimeSet boundary(const TimeSet& f) {
    std::set<std::size_t> out;
    for (std::size_t k = 0; k <= f.horizon(); ++k) {
        const bool in_f = member(f, k);
        const bool in_shift = k > 0 && member(f, k - 1);
        if (in_f != in_shift) out.insert(k);
    }
    return to_timeset(f.horizon() + 1, out);
}

TimeSet interval_refine(const TimeSet& s, const TimeSet& anchors) {
    std::set<std::size_t> out;
    for (auto k : anchors)
        for (auto l : anchors) {
            if (l <= k) continue;
            bool inside = true;
            for (std::size_t j = k + 1; j <= l && inside; ++j) inside = member(s, j);
            if (!inside) continue;
            for (std::size_t j = k + 1; j <= l; ++j) out.insert(j);
        }
    return to_timeset(std::max(s.horizon(), anchors.horizon()), out);
}

} // namespace hyptimes::oracle
