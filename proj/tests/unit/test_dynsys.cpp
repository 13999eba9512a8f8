#include "hyptimes/errors.hpp"
#include "hyptimes/random.hpp"
#include "hyptimes/system.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hyptimes;

namespace {

const double log_golden = std::log((3.0 + std::sqrt(5.0)) / 2.0);

TorusPoint point(std::initializer_list<double> v) {
    TorusPoint x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double c : v) x(i++) = c;
    return x;
}

} // namespace

TEST_CASE("built-in shapes") {
    const auto cat2 = make_system("cat2");
    CHECK(cat2.dim() == 2);
    CHECK(cat2.center_count() == 0);
    const auto catrot = make_system("catrot");
    CHECK(catrot.dim() == 3);
    CHECK(catrot.center_count() == 1);
    const auto catns = make_system("catns", {{"epsilon", 0.01}});
    CHECK(catns.center_count() == 1);
    CHECK_FALSE(catns.volume_preserving());
    const auto lin4 = make_system("lin4");
    CHECK(lin4.dim() == 4);
    CHECK(lin4.center_count() == 2);
    CHECK(builtin_system_names().size() == 4);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(make_system("henon"), UnknownSystem);
    CHECK_THROWS_AS(make_system("catns", {{"epsilon", 0.2}}), InvalidParameter);
    CHECK_THROWS_AS(make_system("catns", {{"epsilon", 0.0}}), InvalidParameter);
    CHECK_THROWS_AS(make_system("catns", {{"eps", 0.01}}), InvalidParameter);
    CHECK_THROWS_AS(make_system("cat2", {{"epsilon", 0.01}}), InvalidParameter);
    CHECK_NOTHROW(make_system("catns", {{"epsilon", 0.05}}));
}

TEST_CASE("self checks at 10^4 points") {
    for (const auto& name : builtin_system_names()) {
        CAPTURE(name);
        const auto s = make_system(name);
        const auto report = s.self_check(10000, 0xabc);
        CHECK(report.points == 10000);
        CHECK(report.max_invariance_residual <= 1e-12);
        CHECK(report.max_observable_error <= 1e-12);
        CHECK(report.min_domination_gap > 0.0);
    }
}

TEST_CASE("observables sum to zero for volume-preserving systems") {
    for (const auto& name : builtin_system_names()) {
        const auto s = make_system(name);
        if (!s.volume_preserving()) continue;
        CAPTURE(name);
        for (std::size_t p = 0; p < 200; ++p) {
            const TorusPoint x = random_point(s.dim(), derive_seed(8, p));
            double sum = 0.0;
            for (int i = 0; i < s.observable_count(); ++i) sum += s.observable(i, x);
            CHECK(std::abs(sum) <= 1e-12);
        }
    }
}

TEST_CASE("orbits") {
    const auto cat2 = make_system("cat2");
    const Orbit fixed = orbit(cat2, point({0.0, 0.0}), 5);
    CHECK(fixed.isZero());

    const Orbit cycle = orbit(cat2, point({0.5, 0.5}), 4);
    CHECK(cycle.col(1) == Eigen::Vector2d(0.5, 0.0));
    CHECK(cycle.col(2) == Eigen::Vector2d(0.0, 0.5));
    CHECK(cycle.col(3) == Eigen::Vector2d(0.5, 0.5));

    const auto catrot = make_system("catrot");
    const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
    const Orbit rot = orbit(catrot, point({0.2, 0.7, 0.1}), 50);
    double theta = 0.1;
    for (Eigen::Index k = 1; k < rot.cols(); ++k) {
        theta = wrap_unit(theta + rho);
        CHECK(rot(2, k) == doctest::Approx(theta).epsilon(1e-12));
    }
    for (Eigen::Index k = 0; k < rot.cols(); ++k)
        for (Eigen::Index i = 0; i < rot.rows(); ++i) {
            CHECK(rot(i, k) >= 0.0);
            CHECK(rot(i, k) < 1.0);
        }

    CHECK_THROWS_AS(orbit(cat2, point({0.5, 0.5}), 0), InvalidParameter);
    CHECK_THROWS_AS(orbit(cat2, point({0.5, 1.0}), 3), InvalidParameter);
    CHECK_THROWS_AS(orbit(cat2, point({0.5, 0.5, 0.5}), 3), DimensionError);
}

TEST_CASE("orbit determinism") {
    const auto s = make_system("catns");
    const TorusPoint x = random_point(3, derive_seed(42, 7));
    CHECK(orbit(s, x, 1000) == orbit(s, x, 1000));
    CHECK(random_point(3, derive_seed(42, 7)) == x);
}

TEST_CASE("observable sequences") {
    const auto cat2 = make_system("cat2");
    const RealSequence u = observable_sequence(cat2, point({0.3, 0.6}), 100, 0);
    CHECK((u.array() == u(0)).all());
    CHECK(u(0) == doctest::Approx(log_golden).epsilon(1e-14));

    const auto catrot = make_system("catrot");
    CHECK(observable_sequence(catrot, point({0.1, 0.2, 0.3}), 100, 1).isZero(0.0));

    const auto catns = make_system("catns", {{"epsilon", 0.01}});
    const RealSequence c = observable_sequence(catns, point({0.3, 0.6, 0.5}), 100, 1);
    const double expected = std::log(1.0 - 2.0 * std::numbers::pi * 0.01);
    CHECK(expected == doctest::Approx(-0.0648926).epsilon(1e-6));
    for (Eigen::Index k = 0; k < c.size(); ++k) CHECK(c(k) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(observable_sequence(cat2, point({0.3, 0.6}), 10, 2), IndexError);
    CHECK_THROWS_AS(observable_sequence(cat2, point({0.3, 0.6}), 10, -1), IndexError);
}

TEST_CASE("finite-time exponents") {
    const auto catrot = make_system("catrot");
    CHECK(finite_time_exponent(catrot, point({0.1, 0.2, 0.3}), 1000, 1, 100) == 0.0);

    const auto lin4 = make_system("lin4");
    const double logs[] = {std::log(2.0 + std::sqrt(3.0)), log_golden, -log_golden,
                           std::log(2.0 - std::sqrt(3.0))};
    for (std::size_t s = 0; s < 5; ++s) {
        const TorusPoint x = random_point(4, derive_seed(9, s));
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(finite_time_exponent(lin4, x, 1000, i, 10) - logs[i]) <= 1e-9);
    }

    const auto catns = make_system("catns");
    const double target = std::log(1.0 - 2.0 * std::numbers::pi * 0.01);
    const double got = finite_time_exponent(catns, random_point(3, derive_seed(1, 0)), 100000, 1, 1000);
    CHECK(std::abs(got - target) <= 0.1 * std::abs(target));

    CHECK_THROWS_AS(finite_time_exponent(catrot, point({0.1, 0.2, 0.3}), 10, 1, 10), InvalidParameter);
}

TEST_CASE("splitting directions") {
    const auto lin4 = make_system("lin4");
    const Eigen::VectorXd u = lin4.unstable_direction();
    CHECK(u.norm() == doctest::Approx(1.0));
    const TorusPoint x = random_point(4, 5);
    const Eigen::VectorXd image = lin4.differential(x) * u;
    CHECK(image.norm() == doctest::Approx(2.0 + std::sqrt(3.0)));
    CHECK((image - image.dot(u) * u).norm() <= 1e-12);

    const auto catns = make_system("catns");
    const Eigen::VectorXd fiber = catns.direction(1, random_point(3, 6));
    CHECK(fiber == Eigen::Vector3d(0, 0, 1));
    CHECK(catns.observable_sup_norm(1) == doctest::Approx(-std::log(1.0 - 2.0 * std::numbers::pi * 0.01)));
    CHECK_THROWS_AS(catns.direction(3, random_point(3, 6)), IndexError);
}
