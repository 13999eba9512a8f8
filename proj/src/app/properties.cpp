#include "hyptimes/app/properties.hpp"

#include "hyptimes/entropy.hpp"
#include "hyptimes/errors.hpp"
#include "hyptimes/format.hpp"
#include "hyptimes/hyperbolic_times.hpp"
#include "hyptimes/measure.hpp"
#include "hyptimes/oracle.hpp"
#include "hyptimes/random.hpp"
#include "hyptimes/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyptimes::app {

namespace {

RealSequence to_sequence(std::span<const double> a) {
    RealSequence out(static_cast<Eigen::Index>(a.size()));
    std::copy(a.begin(), a.end(), out.data());
    return out;
}

std::string describe(std::span<const double> a, double delta, std::size_t m, std::size_t n) {
    std::ostringstream os;
    os << "a=";
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << format_real(a[j]);
    os << ";delta=" << format_real(delta) << ";m=" << m << ";n=" << n;
    return os.str();
}

/// Some backward sum over [k, p) lies within 1e-9 of (p - k) delta or of (p - k) delta / 2.
bool near_tie(std::span<const double> a, double delta) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        double sum = 0.0;
        for (std::size_t p = k + 1; p <= a.size(); ++p) {
            sum += a[p - 1];
            const auto len = static_cast<double>(p - k);
            if (std::abs(sum - len * delta) < 1e-9 || std::abs(sum - len * delta / 2) < 1e-9)
                return true;
        }
    }
    return false;
}

void check_oracle_case(SuiteReport& report, std::size_t index, std::span<const double> a,
                       double delta, std::size_t m, std::size_t n) {
    ++report.checks;
    const auto bad = compare_with_oracle(a, delta, m, n);
    for (const auto& op : bad)
        report.failures.push_back({index, op, "fast kernel differs from brute force",
                                   describe(a, delta, m, n)});
}

/// Dyadic values j/64 so that every partial sum and comparison is exact.
std::vector<double> dyadic_sequence(SplitMix64& rng, std::size_t length) {
    const double mean = static_cast<double>(rng.uniform_int(0, 128)) / 64.0 - 0.5;
    const auto amp = static_cast<std::int64_t>(rng.uniform_int(4, 192));
    std::vector<double> a(length);
    for (auto& v : a) {
        const auto j = static_cast<std::int64_t>(rng.uniform_int(0, 2 * static_cast<std::uint64_t>(amp))) - amp;
        v = mean + static_cast<double>(j) / 64.0;
    }
    return a;
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

TimeSet random_subset(SplitMix64& rng, std::size_t horizon, double p) {
    std::vector<char> mask(horizon, 0);
    for (auto& c : mask) c = rng.bernoulli(p) ? 1 : 0;
    return TimeSet::from_mask(mask);
}

PointMeasure random_measure(SplitMix64& rng, int dim, std::size_t atoms, bool probability) {
    Eigen::MatrixXd pts(dim, static_cast<Eigen::Index>(atoms));
    Eigen::VectorXd w(static_cast<Eigen::Index>(atoms));
    for (Eigen::Index a = 0; a < pts.cols(); ++a) {
        for (int i = 0; i < dim; ++i) pts(i, a) = rng.uniform();
        w(a) = rng.uniform(0.05, 1.0);
    }
    w /= w.sum();
    if (!probability) w *= rng.uniform(0.3, 1.0);
    return PointMeasure(std::move(pts), std::move(w));
}

} // namespace

void SuiteReport::merge(const SuiteReport& other) {
    cases += other.cases;
    checks += other.checks;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::vector<std::string> suite_names() {
    return {"timesets-oracle", "inequalities", "misiurewicz", "metric"};
}

SuiteReport run_suite(const std::string& name, std::size_t cases, std::uint64_t seed) {
    if (name == "timesets-oracle") return timesets_oracle_suite(cases, seed);
    if (name == "inequalities") return inequalities_suite(cases, seed);
    if (name == "misiurewicz") return misiurewicz_suite(cases, seed);
    if (name == "metric") {
        SuiteReport report = metric_suite(cases, seed);
        const std::size_t horizons[] = {1000, 10000};
        report.merge(defect_suite(std::min<std::size_t>(cases, 100), horizons, seed));
        return report;
    }
    throw InvalidParameter("unknown suite '" + name + "'");
}

std::vector<std::string> compare_with_oracle(std::span<const double> a, double delta,
                                             std::size_t m, std::size_t n_window) {
    const RealSequence seq = to_sequence(a);
    std::vector<std::string> bad;
    const auto expect = [&](bool ok, const char* op) {
        if (!ok) bad.emplace_back(op);
    };

    const TimeSet e = hyperbolic_times(seq, delta);
    const TimeSet e_ref = oracle::hyperbolic_times(a, delta);
    expect(e == e_ref, "hyperbolic_times");
    const TimeSet f = weakly_hyperbolic_times(seq, delta, m);
    expect(f == oracle::weakly_hyperbolic_times(a, delta, m), "weakly_hyperbolic_times");
    expect(mildly_hyperbolic_times(seq, delta, m) == oracle::mildly_hyperbolic_times(a, delta, m),
           "mildly_hyperbolic_times");
    expect(g_double(seq, delta, m, n_window) == oracle::g_double(a, delta, m, n_window), "g_double");

    const TimeSet e_m = dilate(e_ref, m);
    expect(e_m == oracle::dilate(e_ref, m) && dilate(f, m) == oracle::dilate(f, m), "dilate");
    expect(chain(e_ref, m) == oracle::chain(e_ref, m) &&
               chain(e_ref, n_window) == oracle::chain(e_ref, n_window),
           "chain");
    expect(connected_components(e_m) == oracle::connected_components(e_m), "connected_components");
    bool same_density = true;
    for (std::size_t n = 1; n <= a.size(); ++n)
        same_density = same_density && density(e_m, n) == oracle::density(e_m, n) &&
                       density(e_ref, n) == oracle::density(e_ref, n);
    expect(same_density, "density");
    expect(boundary(e_ref) == oracle::boundary(e_ref) && boundary(e_m) == oracle::boundary(e_m),
           "boundary");
    expect(interval_refine(e_m, e_ref) == oracle::interval_refine(e_m, e_ref), "interval_refine");
    return bad;
}

SuiteReport timesets_oracle_suite(std::size_t cases, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "timesets-oracle";
    report.cases = cases;
    for (std::size_t c = 0; c < cases; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        std::vector<double> a;
        double delta = 0.0;
        if (c % 2 == 0) {
            a.resize(rng.uniform_int(1, 12));
            for (auto& v : a) v = static_cast<double>(rng.uniform_int(0, 4)) - 2.0;
            delta = rng.bernoulli(0.5) ? 0.5 : 1.0;
        } else {
            do {
                a.resize(rng.uniform_int(1, 64));
                const double mean = rng.uniform(-0.5, 1.5);
                const double amp = rng.uniform(0.1, 2.0);
                for (auto& v : a) v = mean + rng.uniform(-amp, amp);
                delta = rng.uniform(0.05, 1.0);
            } while (near_tie(a, delta));
        }
        const std::size_t m = rng.uniform_int(1, 12);
        const std::size_t n = rng.uniform_int(1, 16);
        check_oracle_case(report, c, a, delta, m, n);
    }
    return report;
}

SuiteReport timesets_oracle_exhaustive(std::size_t per_length) {
    SuiteReport report;
    report.suite = "timesets-oracle";
    std::size_t index = 0;
    std::vector<double> a;

    const auto run = [&](std::uint64_t code, std::size_t length) {
        a.resize(length);
        for (std::size_t j = 0; j < length; ++j) {
            a[j] = static_cast<double>(code % 5) - 2.0;
            code /= 5;
        }
        check_oracle_case(report, index, a, 0.5, 1 + index % 3, 1 + index % 4);
        check_oracle_case(report, index, a, 1.0, 2 + index % 5, 2 + index % 7);
        ++index;
    };

    std::uint64_t total = 1;
    for (std::size_t length = 1; length <= 12; ++length) {
        total *= 5;
        if (length <= 7) {
            for (std::uint64_t code = 0; code < total; ++code) run(code, length);
        } else {
            for (std::uint64_t j = 0; j < per_length; ++j) run(j * total / per_length, length);
        }
    }
    report.cases = index;
    return report;
}

SuiteReport inequalities_suite(std::size_t cases, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "inequalities";
    report.cases = cases;
    const auto fail = [&](std::size_t c, const char* check, const std::string& detail,
                          const std::string& input) {
        report.failures.push_back({c, check, detail, input});
    };

    for (std::size_t c = 0; c < cases; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        const std::size_t length = rng.uniform_int(10, 300);
        std::vector<double> a = dyadic_sequence(rng, length);
        const double delta = static_cast<double>(rng.uniform_int(1, 64)) / 64.0;
        const std::size_t m = rng.uniform_int(1, 30);
        const std::size_t big_n = m + rng.uniform_int(0, 50);
        const std::string input = describe(a, delta, m, big_n);
        const RealSequence seq = to_sequence(a);

        // Chain inside dilation.
        const TimeSet e = hyperbolic_times(seq, delta);
        const TimeSet e_m = dilate(e, m);
        ++report.checks;
        if (set_difference(chain(e, m), e_m).size() != 0)
            fail(c, "chain_in_dilation", "E<M> not contained in E(M)", input);

        // d_n(E(M) \ E<N>) <= M/n + M/N at every horizon.
        ++report.checks;
        const TimeSet loose = set_difference(e_m, chain(e, big_n));
        for (std::size_t n = 1; n < length; ++n) {
            const double lhs = density(loose, n);
            const double rhs = static_cast<double>(m) / static_cast<double>(n) +
                               static_cast<double>(m) / static_cast<double>(big_n);
            if (lhs > rhs) {
                fail(c, "angle", "n=" + std::to_string(n) + " lhs=" + format_real(lhs) +
                                     " rhs=" + format_real(rhs), input);
                break;
            }
        }

        // Pliss fraction on a copy shifted up by a dyadic step until its mean reaches delta.
        {
            std::vector<double> b = a;
            double sum = 0.0;
            for (double v : b) sum += v;
            const double deficit = delta * static_cast<double>(length) - sum;
            if (deficit > 0) {
                const double step = std::ceil(deficit * 64.0 / static_cast<double>(length)) / 64.0;
                for (auto& v : b) v += step;
            }
            const double top = *std::max_element(b.begin(), b.end());
            const double theta = (delta / 2) / (top - delta / 2);
            const auto count = static_cast<double>(hyperbolic_times(to_sequence(b), delta / 2).size());
            const double required = std::floor(theta * static_cast<double>(length)) - 1.0;
            ++report.checks;
            if (count < required)
                fail(c, "pliss", "count=" + format_real(count) + " required=" + format_real(required),
                     describe(b, delta, m, big_n));
        }

        // E^delta as the intersection of the weakly hyperbolic sets over all M.
        {
            TimeSet meet = weakly_hyperbolic_times(seq, delta, 1);
            bool nested = set_difference(e, meet).empty();
            for (std::size_t w = 2; w <= length; ++w) {
                const TimeSet f = weakly_hyperbolic_times(seq, delta, w);
                nested = nested && set_difference(e, f).empty();
                meet = set_intersection(meet, f);
            }
            ++report.checks;
            if (!nested || !(meet == e))
                fail(c, "hyperbolic_is_intersection", "E differs from the intersection of F^M", input);
        }

        // Sum over each component of F(M) is at least delta per time.
        ++report.checks;
        const auto violations = component_sum_violations(seq, delta, m);
        if (!violations.empty()) {
            const auto& v = violations.front();
            fail(c, "component_sum",
                 "component [" + std::to_string(v.component.first) + "," +
                     std::to_string(v.component.last) + "] sum=" + format_real(v.sum) +
                     " required=" + format_real(v.required),
                 input);
        }
    }
    return report;
}

SuiteReport misiurewicz_suite(std::size_t cases, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "misiurewicz";
    report.cases = cases;
    std::vector<SystemSpec> systems;
    for (const auto& name : builtin_system_names()) systems.push_back(make_system(name));

    for (std::size_t c = 0; c < cases; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        const SystemSpec& system = systems[rng.uniform_int(0, systems.size() - 1)];
        const int resolution = static_cast<int>(rng.uniform_int(1, 3));
        const GridPartition partition(system.dim(), resolution);
        const std::size_t atoms = rng.uniform_int(1, 200);
        const PointMeasure mu = random_measure(rng, system.dim(), atoms, rng.bernoulli(0.8));
        const std::size_t horizon = rng.uniform_int(1, 32);
        const std::size_t m = std::size_t{1} << rng.uniform_int(0, 2);
        const double p = rng.uniform(0.2, 0.9);

        std::ostringstream input;
        input << "system=" << system.name() << ";r=" << resolution << ";atoms=" << atoms
              << ";horizon=" << horizon << ";m=" << m << ";case_seed=" << derive_seed(seed, c);

        // Intervals keep the boundary penalty small, so the bound is close to tight.
        TimeSet fixed = rng.bernoulli(0.4) ? TimeSet::interval(rng.uniform_int(0, horizon / 2), horizon, horizon)
                                           : random_subset(rng, horizon, p);
        if (fixed.empty()) fixed = TimeSet(horizon, {rng.uniform_int(0, horizon - 1)});
        const BoundPair a = misiurewicz_bound_fixed(mu, partition, fixed, m, system);
        ++report.checks;
        if (!a.holds())
            report.failures.push_back({c, "fixed", "lhs=" + format_real(a.lhs) + " rhs=" +
                                                       format_real(a.rhs),
                                       input.str() + ";F=" + format_times(fixed)});

        std::vector<TimeSet> varying;
        bool any = false;
        for (std::size_t j = 0; j < atoms; ++j) {
            varying.push_back(random_subset(rng, horizon, p));
            any = any || !varying.back().empty();
        }
        if (!any) varying.front() = TimeSet(horizon, {0});
        const BoundPair b = misiurewicz_bound_setvalued(mu, partition, varying, m, system);
        ++report.checks;
        if (!b.holds())
            report.failures.push_back({c, "set_valued", "lhs=" + format_real(b.lhs) + " rhs=" +
                                                            format_real(b.rhs),
                                       input.str()});
    }
    return report;
}

SuiteReport metric_suite(std::size_t cases, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "metric";
    report.cases = cases;
    for (std::size_t c = 0; c < cases; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        const int dim = static_cast<int>(rng.uniform_int(1, 4));
        const int terms = rng.bernoulli(0.5) ? default_test_family_size
                                             : static_cast<int>(rng.uniform_int(1, 128));
        const PointMeasure x = random_measure(rng, dim, rng.uniform_int(1, 20), rng.bernoulli(0.7));
        const PointMeasure y = random_measure(rng, dim, rng.uniform_int(1, 20), rng.bernoulli(0.7));
        const PointMeasure z = random_measure(rng, dim, rng.uniform_int(1, 20), rng.bernoulli(0.7));
        const std::string input = "dim=" + std::to_string(dim) + ";terms=" + std::to_string(terms) +
                                  ";case_seed=" + std::to_string(derive_seed(seed, c));

        const double xy = weak_star_distance(x, y, terms);
        const double yx = weak_star_distance(y, x, terms);
        const double yz = weak_star_distance(y, z, terms);
        const double xz = weak_star_distance(x, z, terms);
        report.checks += 2;
        if (xy != yx)
            report.failures.push_back(
                {c, "symmetry", "d(x,y)=" + format_real(xy) + " d(y,x)=" + format_real(yx), input});
        if (xz > xy + yz + 1e-12)
            report.failures.push_back({c, "triangle",
                                       "d(x,z)=" + format_real(xz) + " d(x,y)+d(y,z)=" +
                                           format_real(xy + yz),
                                       input});
    }
    return report;
}

SuiteReport defect_suite(std::size_t seeds, std::span<const std::size_t> horizons,
                         std::uint64_t seed) {
    SuiteReport report;
    report.suite = "metric";
    for (const auto& name : builtin_system_names()) {
        const SystemSpec system = make_system(name);
        for (std::size_t s = 0; s < seeds; ++s) {
            const TorusPoint x0 = random_point(system.dim(), derive_seed(seed, s));
            for (std::size_t n : horizons) {
                ++report.cases;
                ++report.checks;
                const Orbit path = orbit(system, x0, n);
                const PointMeasure mu = empirical_measure_on(path, TimeSet::interval(0, n, n), n);
                const double defect = almost_invariance_defect(mu, system);
                const double bound = 4.0 / static_cast<double>(n);
                if (defect > bound)
                    report.failures.push_back({s, "defect",
                                               "defect=" + format_real(defect) +
                                                   " bound=" + format_real(bound),
                                               "system=" + name + ";n=" + std::to_string(n) +
                                                   ";seed=" + std::to_string(derive_seed(seed, s))});
            }
        }
    }
    return report;
}

std::string failures_csv(const SuiteReport& report) {
    std::string out = "suite,case,check,detail,input\n";
    for (const auto& f : report.failures)
        out += quote(report.suite) + "," + std::to_string(f.case_index) + "," + quote(f.check) + "," +
               quote(f.detail) + "," + quote(f.input) + "\n";
    return out;
}

} // namespace hyptimes::app
