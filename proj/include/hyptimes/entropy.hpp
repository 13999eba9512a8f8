#pragma once

#include "hyptimes/measure.hpp"
#include "hyptimes/partition.hpp"
#include "hyptimes/system.hpp"
#include "hyptimes/timeset.hpp"

#include <span>
#include <utility>
#include <vector>

namespace hyptimes {

/// Atom of the iterated partition P^F containing a point: (time, atom id) for k in F.
struct AtomLabel {
    std::vector<std::pair<std::size_t, std::uint64_t>> entries;

    friend bool operator==(const AtomLabel&, const AtomLabel&) = default;
    friend auto operator<=>(const AtomLabel&, const AtomLabel&) = default;
};

/// H_mu(P) of the normalized measure mu / mu(X); 0 log 0 = 0.
double static_entropy(const PointMeasure& mu, const GridPartition& partition);

AtomLabel iterated_atom_label(const TorusPoint& x, const GridPartition& partition,
                              const TimeSet& times, const SystemSpec& system);

/// H_mu(P^F) of the normalized measure, grouping atoms by their label along F.
double iterated_entropy(const PointMeasure& mu, const GridPartition& partition,
                        const TimeSet& times, const SystemSpec& system);

/// Both sides of an entropy inequality lhs >= rhs.
struct BoundPair {
    double lhs = 0.0;
    double rhs = 0.0;

    bool holds(double tolerance = 1e-9) const { return lhs >= rhs - tolerance; }
};

/// Fixed finite F:
///   (1/m) H_{mu^F}(P^m) >= (1/#F) H_mu(P^F) - 3 m log(#P) #dF / #F,
/// with mu^F = (1/#F) sum_{k in F} T^k_* mu. `mu` is normalized first.
BoundPair misiurewicz_bound_fixed(const PointMeasure& mu, const GridPartition& partition,
                                  const TimeSet& times, std::size_t m, const SystemSpec& system);

/// Set-valued F, one time set per atom of the sample:
///   (int #F dmu / m) H_{mu^F}(P^m)
///     >= int -log mu(P^{F(x)}(x)) dmu - H_mu(F) - int 3 m #dF(x) log(#P) dmu.
/// mu(P^{F(x)}(x)) is the sample weight sharing x's labels along F(x); H_mu(F) is the
/// entropy of the partition of the sample by the value of F.
BoundPair misiurewicz_bound_setvalued(const PointMeasure& sample, const GridPartition& partition,
                                      std::span<const TimeSet> times, std::size_t m,
                                      const SystemSpec& system);

struct DecayPoint {
    std::size_t k = 0;
    double length = 0.0;
    double neg_log_length = 0.0;
};

inline constexpr double default_segment_half_length = 0.05;

/// Length of the piece of the unstable segment {x + t v_u : |t| <= gamma} around t = 0
/// whose points share x's atom of P at every time < k, for k = 0 .. n. Boundaries are
/// located by bisection to 1e-14 in t.
std::vector<DecayPoint> unstable_volume_decay(const SystemSpec& system, const TorusPoint& x,
                                              std::size_t n, const GridPartition& partition,
                                              double gamma = default_segment_half_length);

/// Pointwise mean of -log(length) over several base points. A single point's curve
/// fluctuates with where its segment meets the atom boundaries; the mean settles at the
/// unstable exponent.
std::vector<DecayPoint> mean_volume_decay(const SystemSpec& system,
                                          std::span<const TorusPoint> points, std::size_t n,
                                          const GridPartition& partition,
                                          double gamma = default_segment_half_length);

inline constexpr std::size_t default_decay_points = 32;

/// Least-squares slope of -log(length) against k over k_first <= k <= k_last.
double decay_slope(std::span<const DecayPoint> curve, std::size_t k_first, std::size_t k_last);

} // namespace hyptimes
