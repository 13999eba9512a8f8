#include "hyptimes/errors.hpp"
#include "hyptimes/measure.hpp"
#include "hyptimes/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyptimes;

namespace {

TorusPoint pt(double a, double b) {
    TorusPoint x(2);
    x << a, b;
    return x;
}

Eigen::MatrixXd period_three() {
    Eigen::MatrixXd p(2, 3);
    p << 0.5, 0.5, 0.0,
         0.5, 0.0, 0.5;
    return p;
}

PointMeasure random_measure(int dim, std::size_t atoms, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Eigen::MatrixXd p(dim, static_cast<Eigen::Index>(atoms));
    Eigen::VectorXd w(static_cast<Eigen::Index>(atoms));
    for (Eigen::Index a = 0; a < p.cols(); ++a) {
        for (int i = 0; i < dim; ++i) p(i, a) = rng.uniform();
        w(a) = 0.1 + rng.uniform();
    }
    return PointMeasure(p, w / w.sum());
}

} // namespace

TEST_CASE("point measures") {
    const PointMeasure d = PointMeasure::dirac(pt(0.25, 0.5));
    CHECK(d.size() == 1);
    CHECK(d.mass() == 1.0);
    const PointMeasure u = PointMeasure::uniform(period_three());
    CHECK(u.mass() == doctest::Approx(1.0));
    CHECK(u.scaled(0.5).normalized().weights().isApprox(u.weights()));

    CHECK_THROWS_AS(PointMeasure(Eigen::MatrixXd(2, 0), Eigen::VectorXd(0)), EmptyMeasure);
    CHECK_THROWS_AS(PointMeasure::dirac(pt(0.25, 0.5), 0.0), InvalidParameter);
    CHECK_THROWS_AS(PointMeasure::dirac(pt(0.25, 0.5), 1.5), InvalidParameter);
    CHECK_THROWS_AS(PointMeasure::dirac(pt(0.25, 1.0)), InvalidParameter);

    const PointMeasure m = mixture(d, 0.25, u);
    CHECK(m.size() == 4);
    CHECK(m.weights()(0) == doctest::Approx(0.25));
    CHECK(m.mass() == doctest::Approx(1.0));
}

TEST_CASE("test family ordering") {
    const TestFamily f = TestFamily::trigonometric(2, 8);
    CHECK(f.kind(0) == TestFamily::Kind::constant);
    CHECK(f.describe(1) == "cos(2pi*(0,1).x)");
    CHECK(f.describe(2) == "sin(2pi*(0,1).x)");
    CHECK(f.describe(3) == "cos(2pi*(1,-1).x)");
    CHECK(f.describe(5) == "cos(2pi*(1,0).x)");
    CHECK(f.describe(7) == "cos(2pi*(1,1).x)");
}

TEST_CASE("weak-* distance hand value") {
    const PointMeasure a = PointMeasure::dirac(pt(0.0, 0.0));
    const PointMeasure b = PointMeasure::dirac(pt(0.5, 0.5));
    CHECK(weak_star_distance(a, b, 8) == doctest::Approx(0.53125).epsilon(1e-14));
    CHECK(weak_star_distance(a, a, 64) == 0.0);
}

TEST_CASE("weak-* distance is a pseudometric") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const PointMeasure x = random_measure(3, 1 + s % 5, derive_seed(3, 3 * s));
        const PointMeasure y = random_measure(3, 1 + s % 7, derive_seed(3, 3 * s + 1));
        const PointMeasure z = random_measure(3, 1 + s % 3, derive_seed(3, 3 * s + 2));
        CHECK(weak_star_distance(x, y) == weak_star_distance(y, x));
        CHECK(weak_star_distance(x, z) <= weak_star_distance(x, y) + weak_star_distance(y, z) + 1e-12);
        CHECK(weak_star_distance(x, y) <= 1.0);
    }
}

TEST_CASE("distance to the reference measure") {
    const auto cat2 = make_system("cat2");
    CHECK(weak_star_distance(PointMeasure::uniform(period_three()), cat2.reference()) > 0.1);

    // A fine lattice integrates every low-frequency character exactly.
    const int side = 32;
    Eigen::MatrixXd grid(2, side * side);
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) grid.col(i * side + j) << double(i) / side, double(j) / side;
    CHECK(weak_star_distance(PointMeasure::uniform(grid), cat2.reference()) <= 1e-12);

    const auto catns = make_system("catns");
    Eigen::MatrixXd slice(3, side * side);
    for (int i = 0; i < side * side; ++i) slice.col(i) << grid(0, i), grid(1, i), 0.5;
    CHECK(weak_star_distance(PointMeasure::uniform(slice), catns.reference()) <= 1e-12);
}

TEST_CASE("almost invariance defect") {
    const auto cat2 = make_system("cat2");
    const PointMeasure cycle = PointMeasure::uniform(period_three());
    CHECK(almost_invariance_defect(cycle, cat2) <= 1e-15);
    const PointMeasure moved = pushforward(PointMeasure::dirac(pt(0.5, 0.5)), cat2);
    CHECK(moved.points().col(0) == Eigen::Vector2d(0.5, 0.0));

    for (std::size_t n : {1000u, 10000u}) {
        const Orbit o = orbit(cat2, random_point(2, derive_seed(5, n)), n);
        const PointMeasure mu = empirical_measure_on(o, TimeSet::interval(0, n, n), n);
        CHECK(mu.mass() == doctest::Approx(1.0));
        CHECK(almost_invariance_defect(mu, cat2) <= 4.0 / static_cast<double>(n));
    }
}

TEST_CASE("empirical measures on time sets") {
    const auto cat2 = make_system("cat2");
    const Orbit o = orbit(cat2, pt(0.5, 0.5), 6);
    const PointMeasure mu = empirical_measure_on(o, TimeSet(6, {0, 3, 4}), 6);
    CHECK(mu.size() == 3);
    CHECK(mu.mass() == doctest::Approx(0.5));
    CHECK(mu.points().col(0) == mu.points().col(1));
    CHECK_THROWS_AS(empirical_measure_on(o, TimeSet(6), 6), EmptyTimeSet);
}

TEST_CASE("time averaged measure") {
    const auto cat2 = make_system("cat2");
    const PointMeasure sample = PointMeasure::dirac(pt(0.5, 0.5));
    const TimeSet f(3, {0, 1, 2});
    const PointMeasure avg = time_averaged_measure(sample, std::span(&f, 1), cat2);
    CHECK(avg.mass() == doctest::Approx(1.0));
    CHECK(weak_star_distance(avg, PointMeasure::uniform(period_three())) <= 1e-15);

    const TimeSet none(3);
    CHECK_THROWS_AS(time_averaged_measure(sample, std::span(&none, 1), cat2), EmptyTimeSet);
    CHECK_THROWS_AS(time_averaged_measure(mixture(sample, 0.5, sample), std::span(&f, 1), cat2),
                    InvalidParameter);
}

TEST_CASE("component check and convexity") {
    const GridPartition p(2, 2);
    const PointMeasure mu = PointMeasure::uniform(period_three());
    CHECK(is_component(mu.scaled(0.5), mu, p).is_component);
    const auto bad = is_component(PointMeasure::dirac(pt(0.5, 0.5)), mu, p);
    CHECK_FALSE(bad.is_component);
    CHECK(bad.max_violation == doctest::Approx(2.0 / 3.0));

    const TestFamily family = TestFamily::trigonometric(2, 16);
    const PointMeasure a = random_measure(2, 4, 1);
    const PointMeasure b = random_measure(2, 5, 2);
    const Eigen::VectorXd mixed = family.integrals(mixture(a, 0.3, b));
    const Eigen::VectorXd expected = 0.3 * family.integrals(a) + 0.7 * family.integrals(b);
    CHECK((mixed - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("measure csv") {
    const std::string csv = format_measure_csv(PointMeasure::dirac(pt(0.25, 0.5), 0.5));
    CHECK(csv.rfind("# dim=2,mass=", 0) == 0);
    CHECK(csv.find("x0,x1,weight\n") != std::string::npos);
    CHECK(csv.find("0.25,0.5,0.5\n") != std::string::npos);
}
