#pragma once

#include "hyptimes/sequence.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyptimes {

/// A point of the d-torus, d <= 4, with coordinates in [0, 1).
using TorusPoint = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

/// Orbit segment stored column-wise: column k is f^k(x0).
using Orbit = Eigen::MatrixXd;

using SystemParams = std::map<std::string, double>;

/// Reduction mod 1 into [0, 1); values within 1e-15 below 1 snap to 0.
inline double wrap_unit(double v) {
    double r = v - std::floor(v);
    if (r >= 1.0 - 1e-15) r = 0.0;
    return r;
}

/// Throws DimensionError / InvalidParameter unless `x` is a valid point of the d-torus.
void validate_point(const TorusPoint& x, int dim);

/// The invariant measure the built-in is expected to equidistribute towards: Haar on the
/// torus, optionally with one coordinate replaced by a Dirac mass.
struct ReferenceMeasure {
    int dim = 0;
    std::optional<int> dirac_axis;
    double dirac_value = 0.0;
};

struct SelfCheckReport {
    double max_invariance_residual = 0.0;  // relative off-bundle component of Df v
    double max_observable_error = 0.0;     // |log|Df v| - phi^i|
    double min_domination_gap = 0.0;       // min_i (phi^i - phi^{i+1}) over sampled points
    std::size_t points = 0;
};

/// A torus map with an exactly invariant, dominated splitting
/// E^u ⊕ E_1 ⊕ ... ⊕ E_k ⊕ E^s into one-dimensional bundles.
///
/// The map is a hyperbolic toral automorphism acting on the first `base_dim` coordinates,
/// optionally skewed with a circle map on the last coordinate. Bundle i (0 = E^u,
/// k + 1 = E^s) has unit direction `direction(i, x)` and log-derivative `observable(i, x)`.
class SystemSpec {
public:
    enum class Fiber { none, rotation, sine };

    const std::string& name() const noexcept { return name_; }
    int dim() const noexcept { return dim_; }
    /// Number k of center bundles.
    int center_count() const noexcept { return static_cast<int>(bundles_.size()) - 2; }
    /// Number of observables phi^0 .. phi^{k+1}.
    int observable_count() const noexcept { return static_cast<int>(bundles_.size()); }

    TorusPoint step(const TorusPoint& x) const;
    /// In-place step on a raw coordinate column.
    void step_into(const double* x, double* y) const;

    Eigen::MatrixXd differential(const TorusPoint& x) const;
    Eigen::VectorXd direction(int bundle, const TorusPoint& x) const;

    /// phi^i(x) = log |D_x f restricted to bundle i|.
    double observable(int i, const TorusPoint& x) const;
    double observable_at(int i, const double* x) const;
    double observable_sup_norm(int i) const;

    /// psi_i(x) = log-Jacobian of D_x f on E^u ⊕ E_1 ⊕ ... ⊕ E_i.
    double log_jacobian(int i, const TorusPoint& x) const;

    bool volume_preserving() const noexcept { return volume_preserving_; }
    /// Constant unit vector spanning E^u; throws UnsupportedSystem otherwise.
    Eigen::VectorXd unstable_direction() const;
    ReferenceMeasure reference() const noexcept { return reference_; }

    /// Checks bundle invariance, observable consistency and pointwise domination at
    /// `points` pseudo-random points drawn from `seed`.
    SelfCheckReport self_check(std::size_t points, std::uint64_t seed) const;

    Fiber fiber() const noexcept { return fiber_; }
    double fiber_parameter() const noexcept { return fiber_param_; }

private:
    friend SystemSpec make_system(const std::string&, const SystemParams&);

    struct Bundle {
        int base_index = -1;  // eigen-direction of the automorphism, -1 for the fiber axis
        double log_rate = 0.0;
    };

    std::string name_;
    int dim_ = 0;
    int base_dim_ = 0;
    Eigen::MatrixXd base_;             // integer automorphism
    Eigen::MatrixXd base_vectors_;     // unit eigenvectors, columns sorted by |lambda| desc
    std::vector<Bundle> bundles_;
    Fiber fiber_ = Fiber::none;
    double fiber_param_ = 0.0;
    bool volume_preserving_ = true;
    ReferenceMeasure reference_;
};

/// Built-ins: "cat2", "catrot" (param rho), "catns" (param epsilon in (0, 0.05]), "lin4".
/// Throws UnknownSystem or InvalidParameter; runs `self_check` before returning.
SystemSpec make_system(const std::string& name, const SystemParams& params = {});

std::vector<std::string> builtin_system_names();

/// [x0, f(x0), ..., f^{n-1}(x0)].
Orbit orbit(const SystemSpec& system, const TorusPoint& x0, std::size_t n);

/// (phi^i(f^k x0))_{k < n}.
RealSequence observable_sequence(const SystemSpec& system, const TorusPoint& x0, std::size_t n,
                                 int i);
RealSequence observable_sequence(const SystemSpec& system, const Orbit& orbit, int i);

/// Mean of phi^i over the steps burn_in .. n - 1.
double finite_time_exponent(const SystemSpec& system, const TorusPoint& x0, std::size_t n, int i,
                            std::size_t burn_in);

/// Uniform pseudo-random point of the d-torus from a splitmix64 stream seed.
TorusPoint random_point(int dim, std::uint64_t seed);

} // namespace hyptimes
