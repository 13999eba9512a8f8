#pragma once

#include "hyptimes/partition.hpp"
#include "hyptimes/system.hpp"
#include "hyptimes/timeset.hpp"

#include <Eigen/Core>

#include <span>
#include <string>

namespace hyptimes {

/// Finite atomic measure on the d-torus. Sub-probabilities are allowed.
///
/// Atoms are the columns of `points()`; weights are stored unnormalized and every weight
/// is strictly positive. Total mass lies in (0, 1 + 1e-9].
class PointMeasure {
public:
    PointMeasure(Eigen::MatrixXd points, Eigen::VectorXd weights);

    static PointMeasure dirac(const TorusPoint& x, double weight = 1.0);
    /// Equal weights 1/n on the n columns of `points`.
    static PointMeasure uniform(const Eigen::MatrixXd& points);

    int dim() const noexcept { return static_cast<int>(points_.rows()); }
    Eigen::Index size() const noexcept { return points_.cols(); }
    const Eigen::MatrixXd& points() const noexcept { return points_; }
    const Eigen::VectorXd& weights() const noexcept { return weights_; }
    double mass() const { return weights_.sum(); }

    PointMeasure normalized() const;
    PointMeasure scaled(double factor) const;

private:
    Eigen::MatrixXd points_;
    Eigen::VectorXd weights_;
};

/// t * a + (1 - t) * b, atoms concatenated (a first).
PointMeasure mixture(const PointMeasure& a, double t, const PointMeasure& b);

/// Trigonometric test functions f_0 = 1, then cos(2 pi k.x), sin(2 pi k.x) for frequency
/// vectors k ordered by max-norm, then lexicographically, keeping one representative of
/// each pair {k, -k} (first nonzero coordinate positive). Every f_j has sup-norm 1.
class TestFamily {
public:
    enum class Kind { constant, cosine, sine };

    static TestFamily trigonometric(int dim, int count);

    int dim() const noexcept { return dim_; }
    int size() const noexcept { return static_cast<int>(kinds_.size()); }
    Kind kind(int j) const { return kinds_[static_cast<std::size_t>(j)]; }
    /// Frequency of f_j as a column; zero for the constant.
    Eigen::VectorXi frequency(int j) const { return frequencies_.col(j); }

    double evaluate(int j, const TorusPoint& x) const;

    /// Integrals of f_0 .. f_{size-1}.
    Eigen::VectorXd integrals(const PointMeasure& mu) const;
    Eigen::VectorXd integrals(const ReferenceMeasure& ref) const;

    /// Text description of f_j, e.g. "cos(2pi*(0,1).x)".
    std::string describe(int j) const;

private:
    int dim_ = 0;
    Eigen::MatrixXi frequencies_;
    std::vector<Kind> kinds_;
};

inline constexpr int default_test_family_size = 64;

/// sum_j |a_j - b_j| / (2^j (1 + ||f_j||)) from precomputed integrals.
double weak_star_distance(const Eigen::VectorXd& integrals_a, const Eigen::VectorXd& integrals_b);

/// Truncated weak-* distance using the first K test functions; the neglected tail is at
/// most 2^(1-K) for probability measures.
double weak_star_distance(const PointMeasure& mu, const PointMeasure& nu,
                          int terms = default_test_family_size);
double weak_star_distance(const PointMeasure& mu, const ReferenceMeasure& ref,
                          int terms = default_test_family_size);

/// mu_x^n[E] = (1/n) sum_{0 <= k < n, k in E} delta_{orbit[k]}.
PointMeasure empirical_measure_on(const Orbit& orbit, const TimeSet& e, std::size_t n);

/// T_* mu: every atom moved by one step.
PointMeasure pushforward(const PointMeasure& mu, const SystemSpec& system);

/// d(mu, T_* mu).
double almost_invariance_defect(const PointMeasure& mu, const SystemSpec& system,
                                int terms = default_test_family_size);

/// mu^F = (sum_a w_a sum_{k in F_a} delta_{T^k x_a}) / (sum_a w_a #F_a) for a finite
/// sample mu = sum_a w_a delta_{x_a} and one time set per atom.
PointMeasure time_averaged_measure(const PointMeasure& sample, std::span<const TimeSet> times,
                                   const SystemSpec& system);

struct ComponentCheck {
    bool is_component = false;
    double max_violation = 0.0;  // max over atoms A of nu(A) - mu(A), floored at 0
};

/// nu(A) <= mu(A) + 1e-12 on every atom A of the partition.
ComponentCheck is_component(const PointMeasure& nu, const PointMeasure& mu,
                            const GridPartition& partition);

/// One row per atom: d coordinates then the weight, preceded by "# dim=..,mass=.." and a
/// header row.
std::string format_measure_csv(const PointMeasure& mu);

} // namespace hyptimes
