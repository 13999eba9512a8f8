#pragma once

// Brute-force evaluations of the time-set definitions, written directly from the
// quantifiers with nested loops. They share no code with the linear-time kernels in
// hyperbolic_times.hpp and exist to check them.

#include "hyptimes/timeset.hpp"

#include <span>
#include <vector>

namespace hyptimes::oracle {

TimeSet hyperbolic_times(std::span<const double> a, double delta);
TimeSet weakly_hyperbolic_times(std::span<const double> a, double delta, std::size_t m);
TimeSet dilate(const TimeSet& e, std::size_t m);
TimeSet chain(const TimeSet& e, std::size_t m);
IntervalDecomposition connected_components(const TimeSet& e);
TimeSet mildly_hyperbolic_times(std::span<const double> a, double delta, std::size_t m);
TimeSet g_double(std::span<const double> a, double delta, std::size_t m, std::size_t n);
double density(const TimeSet& e, std::size_t n);
TimeSet boundary(const TimeSet& f);

/// Uses every pair k < l of anchors, not only consecutive ones.
TimeSet interval_refine(const TimeSet& s, const TimeSet& anchors);

} // namespace hyptimes::oracle
