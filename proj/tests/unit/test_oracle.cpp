#include "hyptimes/app/properties.hpp"
#include "hyptimes/hyperbolic_times.hpp"
#include "hyptimes/oracle.hpp"
#include "hyptimes/random.hpp"

#include <doctest.h>

using namespace hyptimes;

namespace {

RealSequence random_sequence(SplitMix64& rng, std::size_t length) {
    RealSequence a(static_cast<Eigen::Index>(length));
    const double mean = rng.uniform(-0.5, 1.5);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = mean + rng.uniform(-2.0, 2.0);
    return a;
}

} // namespace

TEST_CASE("oracle agrees with hand-worked sets") {
    const std::vector<double> a{2, -1, 2, -1, 2};
    CHECK(oracle::hyperbolic_times(a, 0.5) == TimeSet(5, {1, 3}));
    CHECK(oracle::weakly_hyperbolic_times(a, 0.5, 1) == TimeSet(5, {1, 3}));
    CHECK(oracle::dilate(TimeSet(4, {1, 3}), 2) == TimeSet(4, {0, 1, 2}));
    CHECK(oracle::chain(TimeSet(8, {1, 3, 7}), 2) == TimeSet(8, {1, 2}));
    CHECK(oracle::boundary(TimeSet(4, {1, 3})) == TimeSet(5, {1, 2, 3, 4}));
    CHECK(oracle::interval_refine(TimeSet::interval(1, 11, 11), TimeSet(11, {2, 5, 9})) ==
          TimeSet(11, {3, 4, 5, 6, 7, 8, 9}));
}

TEST_CASE("fast kernels match the oracle on short integer sequences") {
    // Every sequence over {-2..2} of length <= 5 (3905 sequences), two parameter settings each.
    std::vector<double> a;
    std::size_t mismatches = 0;
    std::uint64_t total = 1;
    for (std::size_t length = 1; length <= 5; ++length) {
        total *= 5;
        for (std::uint64_t code = 0; code < total; ++code) {
            a.resize(length);
            std::uint64_t c = code;
            for (auto& v : a) {
                v = static_cast<double>(c % 5) - 2.0;
                c /= 5;
            }
            mismatches += app::compare_with_oracle(a, 0.5, 1 + code % 3, 1 + code % 4).size();
            mismatches += app::compare_with_oracle(a, 1.0, 2, 3).size();
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("random oracle suite passes") {
    const auto report = app::timesets_oracle_suite(1000, 11);
    CHECK(report.cases == 1000);
    CHECK(report.passed());
}

TEST_CASE("G((N)) lies inside F(M) on random sequences") {
    for (std::size_t c = 0; c < 1000; ++c) {
        SplitMix64 rng(derive_seed(3, c));
        const RealSequence a = random_sequence(rng, rng.uniform_int(1, 64));
        const double delta = rng.uniform(0.05, 1.0);
        const std::size_t m = rng.uniform_int(1, 10);
        const std::size_t n = rng.uniform_int(1, 10);
        const TimeSet g = g_double(a, delta, m, n);
        CHECK(set_difference(g, dilate(weakly_hyperbolic_times(a, delta, m), m)).empty());
    }
}

TEST_CASE("hyperbolic times shrink as delta grows") {
    for (std::size_t c = 0; c < 200; ++c) {
        SplitMix64 rng(derive_seed(4, c));
        const RealSequence a = random_sequence(rng, rng.uniform_int(1, 200));
        const double lo = rng.uniform(0.01, 1.0);
        const double hi = lo + rng.uniform(0.0, 1.0);
        CHECK(set_difference(hyperbolic_times(a, hi), hyperbolic_times(a, lo)).empty());
        const TimeSet e = hyperbolic_times(a, lo);
        CHECK(set_difference(e, weakly_hyperbolic_times(a, lo, rng.uniform_int(1, 20))).empty());
    }
}

TEST_CASE("inequality suites report zero violations") {
    const auto report = app::inequalities_suite(300, 5);
    CHECK(report.checks == 1500);
    CHECK(report.passed());
}
