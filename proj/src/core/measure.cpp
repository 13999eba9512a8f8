#include "hyptimes/measure.hpp"

#include "hyptimes/errors.hpp"
#include "hyptimes/format.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace hyptimes {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Fractional part of k.x, so that the trig argument stays in [0, 2 pi).
double phase(const Eigen::VectorXi& k, const double* x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < k.size(); ++i) s += static_cast<double>(k(i)) * x[i];
    return s - std::floor(s);
}

void require_same_dim(const PointMeasure& a, const PointMeasure& b) {
    if (a.dim() != b.dim())
        throw DimensionError("measures have dimensions " + std::to_string(a.dim()) + " and " +
                             std::to_string(b.dim()));
}

} // namespace

PointMeasure::PointMeasure(Eigen::MatrixXd points, Eigen::VectorXd weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.cols() == 0) throw EmptyMeasure("measure has no atoms");
    if (points_.rows() < 1 || points_.rows() > 4)
        throw DimensionError("torus dimension must be between 1 and 4");
    if (weights_.size() != points_.cols())
        throw DimensionError("one weight per atom required");
    for (Eigen::Index a = 0; a < weights_.size(); ++a)
        if (!(weights_(a) > 0.0) || !std::isfinite(weights_(a)))
            throw InvalidParameter("atom weights must be positive and finite");
    if (!((points_.array() >= 0.0).all() && (points_.array() < 1.0).all()))
        throw InvalidParameter("atoms must lie in [0, 1)^d");
    if (mass() > 1.0 + 1e-9) throw InvalidParameter("total mass exceeds 1");
}

PointMeasure PointMeasure::dirac(const TorusPoint& x, double weight) {
    return PointMeasure(Eigen::MatrixXd(x), Eigen::VectorXd::Constant(1, weight));
}

PointMeasure PointMeasure::uniform(const Eigen::MatrixXd& points) {
    if (points.cols() == 0) throw EmptyMeasure("measure has no atoms");
    return PointMeasure(points,
                        Eigen::VectorXd::Constant(points.cols(), 1.0 / static_cast<double>(points.cols())));
}

PointMeasure PointMeasure::normalized() const {
    return PointMeasure(points_, weights_ / mass());
}

PointMeasure PointMeasure::scaled(double factor) const {
    return PointMeasure(points_, weights_ * factor);
}

PointMeasure mixture(const PointMeasure& a, double t, const PointMeasure& b) {
    require_same_dim(a, b);
    if (!(t > 0.0 && t < 1.0)) throw InvalidParameter("mixture weight must lie in (0, 1)");
    Eigen::MatrixXd points(a.dim(), a.size() + b.size());
    points << a.points(), b.points();
    Eigen::VectorXd weights(a.size() + b.size());
    weights << t * a.weights(), (1.0 - t) * b.weights();
    return PointMeasure(std::move(points), std::move(weights));
}

TestFamily TestFamily::trigonometric(int dim, int count) {
    if (dim < 1 || dim > 4) throw DimensionError("test family dimension must be in [1, 4]");
    if (count < 1) throw InvalidParameter("test family needs at least one function");
    TestFamily f;
    f.dim_ = dim;
    std::vector<Eigen::VectorXi> freqs{Eigen::VectorXi::Zero(dim)};
    f.kinds_.push_back(Kind::constant);
    for (int shell = 1; static_cast<int>(f.kinds_.size()) < count; ++shell) {
        // Lexicographic walk over [-shell, shell]^dim.
        Eigen::VectorXi k = Eigen::VectorXi::Constant(dim, -shell);
        while (true) {
            const bool on_shell = k.cwiseAbs().maxCoeff() == shell;
            Eigen::Index lead = 0;
            while (lead < dim && k(lead) == 0) ++lead;
            if (on_shell && lead < dim && k(lead) > 0) {
                for (Kind kind : {Kind::cosine, Kind::sine}) {
                    if (static_cast<int>(f.kinds_.size()) == count) break;
                    freqs.push_back(k);
                    f.kinds_.push_back(kind);
                }
            }
            Eigen::Index i = dim - 1;
            while (i >= 0 && k(i) == shell) k(i--) = -shell;
            if (i < 0) break;
            ++k(i);
        }
    }
    f.frequencies_.resize(dim, count);
    for (int j = 0; j < count; ++j) f.frequencies_.col(j) = freqs[static_cast<std::size_t>(j)];
    return f;
}

double TestFamily::evaluate(int j, const TorusPoint& x) const {
    if (x.size() != dim_) throw DimensionError("point dimension does not match test family");
    switch (kind(j)) {
    case Kind::constant:
        return 1.0;
    case Kind::cosine:
        return std::cos(two_pi * phase(frequency(j), x.data()));
    case Kind::sine:
        return std::sin(two_pi * phase(frequency(j), x.data()));
    }
    return 0.0;
}

Eigen::VectorXd TestFamily::integrals(const PointMeasure& mu) const {
    if (mu.dim() != dim_) throw DimensionError("measure dimension does not match test family");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
    out(0) = mu.mass();
    const auto& pts = mu.points();
    const auto& w = mu.weights();
    for (int j = 1; j < size(); ++j) {
        // cos and sin of one frequency are adjacent; evaluate the pair together.
        if (kind(j) == Kind::sine && j > 1 && frequencies_.col(j) == frequencies_.col(j - 1))
            continue;
        const Eigen::VectorXi k = frequency(j);
        const bool has_sine = j + 1 < size() && kind(j + 1) == Kind::sine;
        double c = 0.0, s = 0.0;
        for (Eigen::Index a = 0; a < pts.cols(); ++a) {
            const double arg = two_pi * phase(k, pts.col(a).data());
            c += w(a) * std::cos(arg);
            if (has_sine) s += w(a) * std::sin(arg);
        }
        out(j) = c;
        if (has_sine) out(j + 1) = s;
    }
    return out;
}

Eigen::VectorXd TestFamily::integrals(const ReferenceMeasure& ref) const {
    if (ref.dim != dim_) throw DimensionError("reference dimension does not match test family");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
    out(0) = 1.0;
    if (!ref.dirac_axis) return out;
    const int axis = *ref.dirac_axis;
    for (int j = 1; j < size(); ++j) {
        Eigen::VectorXi k = frequency(j);
        const int ka = k(axis);
        k(axis) = 0;
        if (!k.isZero()) continue;  // Haar integrates every other frequency to zero
        double x = static_cast<double>(ka) * ref.dirac_value;
        x -= std::floor(x);
        out(j) = kind(j) == Kind::cosine ? std::cos(two_pi * x) : std::sin(two_pi * x);
    }
    return out;
}

std::string TestFamily::describe(int j) const {
    if (kind(j) == Kind::constant) return "1";
    std::string k = "(";
    for (int i = 0; i < dim_; ++i) k += (i ? "," : "") + std::to_string(frequencies_(i, j));
    k += ")";
    return std::string(kind(j) == Kind::cosine ? "cos" : "sin") + "(2pi*" + k + ".x)";
}

double weak_star_distance(const Eigen::VectorXd& integrals_a, const Eigen::VectorXd& integrals_b) {
    if (integrals_a.size() != integrals_b.size())
        throw DimensionError("integral vectors differ in length");
    double d = 0.0;
    double scale = 0.5;  // 1 / (2^j (1 + ||f_j||)) with ||f_j|| = 1
    for (Eigen::Index j = 0; j < integrals_a.size(); ++j) {
        d += std::abs(integrals_a(j) - integrals_b(j)) * scale;
        scale *= 0.5;
    }
    return d;
}

double weak_star_distance(const PointMeasure& mu, const PointMeasure& nu, int terms) {
    require_same_dim(mu, nu);
    const auto family = TestFamily::trigonometric(mu.dim(), terms);
    return weak_star_distance(family.integrals(mu), family.integrals(nu));
}

double weak_star_distance(const PointMeasure& mu, const ReferenceMeasure& ref, int terms) {
    const auto family = TestFamily::trigonometric(mu.dim(), terms);
    return weak_star_distance(family.integrals(mu), family.integrals(ref));
}

PointMeasure empirical_measure_on(const Orbit& orbit, const TimeSet& e, std::size_t n) {
    if (n == 0) throw InvalidParameter("empirical measure horizon must be >= 1");
    if (static_cast<std::size_t>(orbit.cols()) < n)
        throw InvalidParameter("orbit shorter than the horizon");
    const std::size_t count = e.count_in(0, n - 1);
    if (count == 0) throw EmptyTimeSet("time set has no element in [0, n)");
    Eigen::MatrixXd points(orbit.rows(), static_cast<Eigen::Index>(count));
    Eigen::Index c = 0;
    for (auto k : e) {
        if (k >= n) break;
        points.col(c++) = orbit.col(static_cast<Eigen::Index>(k));
    }
    return PointMeasure(std::move(points),
                        Eigen::VectorXd::Constant(c, 1.0 / static_cast<double>(n)));
}

PointMeasure pushforward(const PointMeasure& mu, const SystemSpec& system) {
    if (mu.dim() != system.dim()) throw DimensionError("measure and system dimensions differ");
    Eigen::MatrixXd points(mu.points().rows(), mu.points().cols());
    for (Eigen::Index a = 0; a < points.cols(); ++a)
        system.step_into(mu.points().col(a).data(), points.col(a).data());
    return PointMeasure(std::move(points), mu.weights());
}

double almost_invariance_defect(const PointMeasure& mu, const SystemSpec& system, int terms) {
    return weak_star_distance(mu, pushforward(mu, system), terms);
}

PointMeasure time_averaged_measure(const PointMeasure& sample, std::span<const TimeSet> times,
                                   const SystemSpec& system) {
    if (sample.dim() != system.dim()) throw DimensionError("sample and system dimensions differ");
    if (static_cast<Eigen::Index>(times.size()) != sample.size())
        throw InvalidParameter("one time set per sample atom required");
    double normalizer = 0.0;
    Eigen::Index atoms = 0;
    for (std::size_t a = 0; a < times.size(); ++a) {
        normalizer += sample.weights()(static_cast<Eigen::Index>(a)) * static_cast<double>(times[a].size());
        atoms += static_cast<Eigen::Index>(times[a].size());
    }
    if (atoms == 0) throw EmptyTimeSet("every time set is empty");

    Eigen::MatrixXd points(system.dim(), atoms);
    Eigen::VectorXd weights(atoms);
    Eigen::Index c = 0;
    for (std::size_t a = 0; a < times.size(); ++a) {
        if (times[a].empty()) continue;
        const auto ia = static_cast<Eigen::Index>(a);
        const Orbit path = orbit(system, sample.points().col(ia), times[a].back() + 1);
        for (auto k : times[a]) {
            points.col(c) = path.col(static_cast<Eigen::Index>(k));
            weights(c++) = sample.weights()(ia) / normalizer;
        }
    }
    return PointMeasure(std::move(points), std::move(weights));
}

ComponentCheck is_component(const PointMeasure& nu, const PointMeasure& mu,
                            const GridPartition& partition) {
    require_same_dim(nu, mu);
    if (partition.dim() != mu.dim()) throw DimensionError("partition dimension differs");
    std::unordered_map<std::uint64_t, double> excess;
    for (Eigen::Index a = 0; a < nu.size(); ++a)
        excess[partition.atom_id(nu.points().col(a).data())] += nu.weights()(a);
    for (Eigen::Index a = 0; a < mu.size(); ++a)
        excess[partition.atom_id(mu.points().col(a).data())] -= mu.weights()(a);
    ComponentCheck out;
    for (const auto& [id, value] : excess) out.max_violation = std::max(out.max_violation, value);
    out.is_component = out.max_violation <= 1e-12;
    return out;
}

std::string format_measure_csv(const PointMeasure& mu) {
    std::string out = "# dim=" + std::to_string(mu.dim()) + ",mass=" + format_real(mu.mass()) + "\n";
    for (int i = 0; i < mu.dim(); ++i) out += "x" + std::to_string(i) + ",";
    out += "weight\n";
    for (Eigen::Index a = 0; a < mu.size(); ++a) {
        for (int i = 0; i < mu.dim(); ++i) out += format_real(mu.points()(i, a)) + ",";
        out += format_real(mu.weights()(a)) + "\n";
    }
    return out;
}

} // namespace hyptimes
