#include "hyptimes/system.hpp"

#include "hyptimes/errors.hpp"
#include "hyptimes/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <numbers>

namespace hyptimes {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_known_params(const std::string& system, const SystemParams& params,
                          std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return key == a; });
        if (!known) throw InvalidParameter(system + ": unknown parameter '" + key + "'");
        if (!std::isfinite(value))
            throw InvalidParameter(system + ": parameter '" + key + "' must be finite");
    }
}

double param_or(const SystemParams& params, const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Eigen::MatrixXd cat_matrix() {
    Eigen::MatrixXd a(2, 2);
    a << 2, 1, 1, 1;
    return a;
}

} // namespace

void validate_point(const TorusPoint& x, int dim) {
    if (x.size() != dim)
        throw DimensionError("point has dimension " + std::to_string(x.size()) + ", expected " +
                             std::to_string(dim));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(x(i) >= 0.0 && x(i) < 1.0))
            throw InvalidParameter("torus coordinates must lie in [0, 1)");
}

void SystemSpec::step_into(const double* x, double* y) const {
    double out[4];
    for (int r = 0; r < base_dim_; ++r) {
        double s = 0.0;
        for (int c = 0; c < base_dim_; ++c) s += base_(r, c) * x[c];
        out[r] = wrap_unit(s);
    }
    if (fiber_ != Fiber::none) {
        const double theta = x[dim_ - 1];
        out[dim_ - 1] = fiber_ == Fiber::rotation
                            ? wrap_unit(theta + fiber_param_)
                            : wrap_unit(theta + fiber_param_ * std::sin(two_pi * theta));
    }
    std::copy(out, out + dim_, y);
}

TorusPoint SystemSpec::step(const TorusPoint& x) const {
    validate_point(x, dim_);
    TorusPoint y(dim_);
    step_into(x.data(), y.data());
    return y;
}

Eigen::MatrixXd SystemSpec::differential(const TorusPoint& x) const {
    Eigen::MatrixXd df = Eigen::MatrixXd::Zero(dim_, dim_);
    df.topLeftCorner(base_dim_, base_dim_) = base_;
    if (fiber_ == Fiber::rotation) df(dim_ - 1, dim_ - 1) = 1.0;
    if (fiber_ == Fiber::sine)
        df(dim_ - 1, dim_ - 1) = 1.0 + two_pi * fiber_param_ * std::cos(two_pi * x(dim_ - 1));
    return df;
}

Eigen::VectorXd SystemSpec::direction(int bundle, const TorusPoint&) const {
    if (bundle < 0 || bundle >= observable_count())
        throw IndexError("bundle index " + std::to_string(bundle) + " out of range");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
    const auto& b = bundles_[static_cast<std::size_t>(bundle)];
    if (b.base_index >= 0)
        v.head(base_dim_) = base_vectors_.col(b.base_index);
    else
        v(dim_ - 1) = 1.0;
    return v;
}

double SystemSpec::observable_at(int i, const double* x) const {
    if (i < 0 || i >= observable_count())
        throw IndexError("observable index " + std::to_string(i) + " out of range [0, " +
                         std::to_string(observable_count() - 1) + "]");
    const auto& b = bundles_[static_cast<std::size_t>(i)];
    if (b.base_index >= 0 || fiber_ == Fiber::rotation) return b.log_rate;
    return std::log1p(two_pi * fiber_param_ * std::cos(two_pi * x[dim_ - 1]));
}

double SystemSpec::observable(int i, const TorusPoint& x) const {
    validate_point(x, dim_);
    return observable_at(i, x.data());
}

double SystemSpec::observable_sup_norm(int i) const {
    if (i < 0 || i >= observable_count()) throw IndexError("observable index out of range");
    const auto& b = bundles_[static_cast<std::size_t>(i)];
    if (b.base_index >= 0 || fiber_ == Fiber::rotation) return std::abs(b.log_rate);
    return -std::log1p(-two_pi * fiber_param_);
}

double SystemSpec::log_jacobian(int i, const TorusPoint& x) const {
    if (i < 0 || i >= observable_count()) throw IndexError("bundle index out of range");
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += observable(j, x);
    return s;
}

Eigen::VectorXd SystemSpec::unstable_direction() const {
    if (bundles_.front().base_index < 0)
        throw UnsupportedSystem(name_ + ": unstable bundle is not a constant direction");
    return direction(0, TorusPoint::Zero(dim_));
}

SelfCheckReport SystemSpec::self_check(std::size_t points, std::uint64_t seed) const {
    SelfCheckReport report;
    report.points = points;
    report.min_domination_gap = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < points; ++p) {
        const TorusPoint x = random_point(dim_, derive_seed(seed, p));
        const TorusPoint y = step(x);
        const Eigen::MatrixXd df = differential(x);
        for (int i = 0; i < observable_count(); ++i) {
            const Eigen::VectorXd w = df * direction(i, x);
            const Eigen::VectorXd v_next = direction(i, y);
            const double norm = w.norm();
            const double residual = (w - w.dot(v_next) * v_next).norm() / norm;
            report.max_invariance_residual = std::max(report.max_invariance_residual, residual);
            report.max_observable_error = std::max(report.max_observable_error,
                                                   std::abs(std::log(norm) - observable(i, x)));
            if (i + 1 < observable_count())
                report.min_domination_gap =
                    std::min(report.min_domination_gap, observable(i, x) - observable(i + 1, x));
        }
    }
    return report;
}

SystemSpec make_system(const std::string& name, const SystemParams& params) {
    SystemSpec s;
    s.name_ = name;
    if (name == "cat2") {
        require_known_params(name, params, {});
        s.base_ = cat_matrix();
        s.dim_ = 2;
    } else if (name == "catrot") {
        require_known_params(name, params, {"rho"});
        s.base_ = cat_matrix();
        s.dim_ = 3;
        s.fiber_ = SystemSpec::Fiber::rotation;
        s.fiber_param_ = param_or(params, "rho", (std::sqrt(5.0) - 1.0) / 2.0);
        if (!(s.fiber_param_ > 0.0 && s.fiber_param_ < 1.0))
            throw InvalidParameter("catrot: rho must lie in (0, 1)");
    } else if (name == "catns") {
        require_known_params(name, params, {"epsilon"});
        s.base_ = cat_matrix();
        s.dim_ = 3;
        s.fiber_ = SystemSpec::Fiber::sine;
        s.fiber_param_ = param_or(params, "epsilon", 0.01);
        // 2*pi*eps stays well below 1 and below the expansion of the cat map.
        if (!(s.fiber_param_ > 0.0 && s.fiber_param_ <= 0.05))
            throw InvalidParameter("catns: epsilon must lie in (0, 0.05]");
        s.volume_preserving_ = false;
        s.reference_.dirac_axis = 2;
        s.reference_.dirac_value = 0.5;
    } else if (name == "lin4") {
        require_known_params(name, params, {});
        s.base_ = Eigen::MatrixXd::Zero(4, 4);
        s.base_.topLeftCorner(2, 2) << 3, 2, 1, 1;
        s.base_.bottomRightCorner(2, 2) = cat_matrix();
        s.dim_ = 4;
    } else {
        throw UnknownSystem("unknown system '" + name + "'");
    }
    s.base_dim_ = static_cast<int>(s.base_.rows());
    s.reference_.dim = s.dim_;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(s.base_);
    if (solver.eigenvalues().imag().cwiseAbs().maxCoeff() != 0.0)
        throw UnsupportedSystem(name + ": automorphism has non-real eigenvalues");
    const Eigen::VectorXd values = solver.eigenvalues().real();
    const Eigen::MatrixXd vectors = solver.eigenvectors().real();
    std::vector<int> order(static_cast<std::size_t>(s.base_dim_));
    for (int i = 0; i < s.base_dim_; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(values(a)) > std::abs(values(b)); });

    s.base_vectors_.resize(s.base_dim_, s.base_dim_);
    std::vector<SystemSpec::Bundle> base_bundles;
    for (int j = 0; j < s.base_dim_; ++j) {
        Eigen::VectorXd v = vectors.col(order[static_cast<std::size_t>(j)]).normalized();
        Eigen::Index lead = 0;
        while (lead < v.size() && std::abs(v(lead)) < 1e-12) ++lead;
        if (v(lead) < 0) v = -v;
        s.base_vectors_.col(j) = v;
        base_bundles.push_back({j, std::log(std::abs(values(order[static_cast<std::size_t>(j)])))});
    }
    // The fiber axis sits between the expanding and contracting directions.
    s.bundles_.push_back(base_bundles.front());
    if (s.fiber_ != SystemSpec::Fiber::none) s.bundles_.push_back({-1, 0.0});
    for (std::size_t j = 1; j < base_bundles.size(); ++j) s.bundles_.push_back(base_bundles[j]);

    const auto check = s.self_check(64, 0x5eed);
    if (check.max_invariance_residual > 1e-12 || check.max_observable_error > 1e-12 ||
        !(check.min_domination_gap > 0.0))
        throw InvalidParameter(name + ": splitting self-check failed");
    return s;
}

std::vector<std::string> builtin_system_names() { return {"cat2", "catrot", "catns", "lin4"}; }

Orbit orbit(const SystemSpec& system, const TorusPoint& x0, std::size_t n) {
    if (n == 0) throw InvalidParameter("orbit length must be >= 1");
    validate_point(x0, system.dim());
    Orbit out(system.dim(), static_cast<Eigen::Index>(n));
    out.col(0) = x0;
    for (Eigen::Index k = 1; k < out.cols(); ++k)
        system.step_into(out.col(k - 1).data(), out.col(k).data());
    return out;
}

RealSequence observable_sequence(const SystemSpec& system, const Orbit& orbit, int i) {
    if (i < 0 || i >= system.observable_count())
        throw IndexError("observable index " + std::to_string(i) + " out of range [0, " +
                         std::to_string(system.observable_count() - 1) + "]");
    RealSequence out(orbit.cols());
    for (Eigen::Index k = 0; k < orbit.cols(); ++k) out(k) = system.observable_at(i, orbit.col(k).data());
    return out;
}

RealSequence observable_sequence(const SystemSpec& system, const TorusPoint& x0, std::size_t n,
                                 int i) {
    if (i < 0 || i >= system.observable_count())
        throw IndexError("observable index " + std::to_string(i) + " out of range");
    return observable_sequence(system, orbit(system, x0, n), i);
}

double finite_time_exponent(const SystemSpec& system, const TorusPoint& x0, std::size_t n, int i,
                            std::size_t burn_in) {
    if (!(n > burn_in)) throw InvalidParameter("horizon must exceed burn_in");
    const RealSequence phi = observable_sequence(system, x0, n, i);
    const auto tail = static_cast<Eigen::Index>(n - burn_in);
    return phi.tail(tail).sum() / static_cast<double>(tail);
}

TorusPoint random_point(int dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    TorusPoint x(dim);
    for (int i = 0; i < dim; ++i) x(i) = rng.uniform();
    return x;
}

} // namespace hyptimes
