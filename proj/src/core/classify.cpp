#include "hyptimes/classify.hpp"

#include "hyptimes/errors.hpp"
#include "hyptimes/hyperbolic_times.hpp"
#include "hyptimes/random.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace hyptimes {

namespace {

void check_horizon(std::size_t n) {
    if (n == 0) throw InvalidParameter("horizon n must be >= 1");
}

void check_index(const SystemSpec& system, int index, int lowest, int highest) {
    if (index < lowest || index > highest)
        throw IndexError("observable index " + std::to_string(index) + " out of range for " +
                         system.name());
}

void check_candidate(const CandidateParams& p) {
    detail::check_delta(p.delta);
    detail::check_window(p.window_m, "M");
    detail::check_window(p.window_n, "N");
    detail::check_window(p.window_p, "P");
}

DensityProfile make_profile(DensityProfile::Kind kind, int index, const DensityGrid& grid,
                            std::size_t n, const RealSequence& phi) {
    grid.validate();
    check_horizon(n);
    if (static_cast<std::size_t>(phi.size()) < profile_sequence_length(n, grid))
        throw InvalidParameter("observable sequence too short for the density grid");
    DensityProfile out;
    out.kind = kind;
    out.index = index;
    out.horizon = n;
    out.grid = grid;
    out.values.setZero(static_cast<Eigen::Index>(grid.deltas.size()),
                       static_cast<Eigen::Index>(grid.windows.size()));
    return out;
}

double mean_over(const RealSequence& a, std::size_t first, std::size_t last) {
    return a.segment(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(last - first))
        .mean();
}

} // namespace

void DensityGrid::validate() const {
    if (deltas.empty()) throw InvalidParameter("delta grid is empty");
    if (windows.empty()) throw InvalidParameter("M grid is empty");
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        detail::check_delta(deltas[j]);
        if (j > 0 && !(deltas[j] > deltas[j - 1]))
            throw InvalidParameter("delta grid must be strictly increasing");
    }
    for (std::size_t j = 0; j < windows.size(); ++j) {
        detail::check_window(windows[j], "M");
        if (j > 0 && windows[j] <= windows[j - 1])
            throw InvalidParameter("M grid must be strictly increasing");
    }
}

std::size_t profile_sequence_length(std::size_t n, const DensityGrid& grid) {
    return n + grid.max_window() + 1;
}

DensityProfile alpha_profile(const RealSequence& phi, int index, const DensityGrid& grid,
                             std::size_t n) {
    DensityProfile out = make_profile(DensityProfile::Kind::alpha, index, grid, n, phi);
    for (std::size_t r = 0; r < grid.deltas.size(); ++r) {
        const TimeSet e = hyperbolic_times(phi, grid.deltas[r]);
        for (std::size_t c = 0; c < grid.windows.size(); ++c)
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                density(dilate(e, grid.windows[c]), n);
    }
    return out;
}

DensityProfile beta_profile(const RealSequence& phi, int index, const DensityGrid& grid,
                            std::size_t n) {
    DensityProfile out = make_profile(DensityProfile::Kind::beta, index, grid, n, phi);
    const RealSequence negated = -phi;
    for (std::size_t r = 0; r < grid.deltas.size(); ++r)
        for (std::size_t c = 0; c < grid.windows.size(); ++c) {
            const std::size_t m = grid.windows[c];
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                density(dilate(weakly_hyperbolic_times(negated, grid.deltas[r], m), m), n);
        }
    return out;
}

DensityProfile alpha_profile(const SystemSpec& system, const TorusPoint& x0, int index,
                             const DensityGrid& grid, std::size_t n) {
    check_index(system, index, 0, system.observable_count() - 1);
    grid.validate();
    return alpha_profile(
        observable_sequence(system, x0, profile_sequence_length(n, grid), index), index, grid, n);
}

DensityProfile beta_profile(const SystemSpec& system, const TorusPoint& x0, int index,
                            const DensityGrid& grid, std::size_t n) {
    check_index(system, index, 0, system.observable_count() - 1);
    grid.validate();
    return beta_profile(
        observable_sequence(system, x0, profile_sequence_length(n, grid), index), index, grid, n);
}

std::string Label::to_string() const {
    switch (kind) {
    case Kind::hyperbolic_basin:
        return "HyperbolicBasin(" + std::to_string(index) + ")";
    case Kind::non_hyperbolic_component:
        return "NonHyperbolicComponent(" + std::to_string(index) + ")";
    case Kind::undetermined:
        break;
    }
    return "Undetermined";
}

Label classify_point(std::span<const double> alpha, std::span<const double> beta,
                     const Thresholds& thresholds) {
    if (alpha.size() != beta.size())
        throw IncompleteInput("alpha and beta summaries must cover the same indices");
    const std::size_t k = alpha.size();
    std::size_t i = 0;
    for (std::size_t j = 1; j <= k; ++j)
        if (alpha[j - 1] >= thresholds.alpha_high) i = j;
    const double beta_next = i < k ? beta[i] : 0.0;

    Label label;
    label.index = static_cast<int>(i);
    if (beta_next >= thresholds.beta_high)
        label.kind = Label::Kind::hyperbolic_basin;
    else if (beta_next <= thresholds.beta_low)
        label.kind = Label::Kind::non_hyperbolic_component;
    else
        label.kind = Label::Kind::undetermined;
    return label;
}

Label classify_point(const std::vector<DensityProfile>& alpha,
                     const std::vector<DensityProfile>& beta, int center_count,
                     const Thresholds& thresholds) {
    const auto k = static_cast<std::size_t>(center_count);
    if (center_count < 0 || alpha.size() != k || beta.size() != k)
        throw IncompleteInput("profiles required for every center index 1.." +
                              std::to_string(center_count));
    std::vector<double> a, b;
    for (std::size_t j = 0; j < k; ++j) {
        if (alpha[j].index != static_cast<int>(j + 1) || beta[j].index != static_cast<int>(j + 1) ||
            alpha[j].kind != DensityProfile::Kind::alpha ||
            beta[j].kind != DensityProfile::Kind::beta)
            throw IncompleteInput("profile for index " + std::to_string(j + 1) + " is missing");
        a.push_back(alpha[j].summary());
        b.push_back(beta[j].summary());
    }
    return classify_point(a, b, thresholds);
}

std::size_t candidate_sequence_length(std::size_t n, const CandidateParams& params) {
    return n + params.window_m + params.window_n + params.window_p + 1;
}

TimeSet srb_candidate_times(const RealSequence& phi, const RealSequence& phi_next,
                            const CandidateParams& params, std::size_t n) {
    check_candidate(params);
    check_horizon(n);
    const RealSequence negated = -phi_next;
    const TimeSet g = g_double(negated, params.delta, params.window_m, params.window_n);
    const TimeSet e = dilate(hyperbolic_times(phi, params.delta), params.window_p);
    return set_intersection(g, e).restricted(1, n);
}

PointMeasure srb_candidate_measure(const SystemSpec& system, const TorusPoint& x0, int index,
                                   const CandidateParams& params, std::size_t n) {
    check_index(system, index, 0, system.center_count());
    check_candidate(params);
    check_horizon(n);
    const Orbit path = orbit(system, x0, candidate_sequence_length(n, params));
    const TimeSet f = srb_candidate_times(observable_sequence(system, path, index),
                                          observable_sequence(system, path, index + 1), params, n);
    return empirical_measure_on(path, f, n).normalized();
}

RefinementReport refine_candidate(const TimeSet& candidate, const TimeSet& anchors,
                                  const CandidateParams& params, std::size_t n) {
    check_candidate(params);
    check_horizon(n);
    RefinementReport out;
    out.candidate = candidate;
    out.anchors = anchors;
    out.refined = interval_refine(candidate, anchors);
    out.discarded = density(set_difference(candidate, out.refined), n);
    const auto p = static_cast<double>(params.window_p);
    out.bound = p / static_cast<double>(params.window_n) + p / static_cast<double>(params.window_m) +
                p / static_cast<double>(n);
    return out;
}

RefinementReport refine_to_intervals(const SystemSpec& system, const TorusPoint& x0, int index,
                                     const CandidateParams& params, std::size_t n) {
    check_index(system, index, 0, system.center_count());
    check_candidate(params);
    check_horizon(n);
    const Orbit path = orbit(system, x0, candidate_sequence_length(n, params));
    const RealSequence phi = observable_sequence(system, path, index);
    const TimeSet candidate =
        srb_candidate_times(phi, observable_sequence(system, path, index + 1), params, n);
    return refine_candidate(candidate, hyperbolic_times(phi, params.delta), params, n);
}

ComplementDefect complement_mass_defect(const RealSequence& phi, double sup_norm, double delta,
                                        std::size_t m, std::size_t n) {
    detail::check_window(m, "M");
    check_horizon(n);
    const TimeSet e = hyperbolic_times(phi, delta);
    if (e.empty()) throw NoHyperbolicTime("sequence has no hyperbolic time");

    std::size_t used = e.front();
    for (auto k : e) {
        if (k > n) break;
        used = k;
    }

    const std::vector<char> chained = chain(e, m).mask(used);
    ComplementDefect out;
    out.horizon_used = used;
    for (std::size_t k = 0; k < used; ++k)
        if (!chained[k]) {
            out.integral += phi(static_cast<Eigen::Index>(k));
            out.mass += 1.0;
        }
    out.integral /= static_cast<double>(used);
    out.mass /= static_cast<double>(used);
    out.value = std::abs(out.integral - out.mass * delta) - sup_norm / static_cast<double>(m);
    return out;
}

ComplementDefect complement_mass_defect(const SystemSpec& system, const TorusPoint& x0, int index,
                                        double delta, std::size_t m, std::size_t n) {
    check_index(system, index, 0, system.observable_count() - 1);
    check_horizon(n);
    // Room to look past n when no hyperbolic time lies below it.
    const RealSequence phi = observable_sequence(system, x0, 2 * n + 1, index);
    return complement_mass_defect(phi, system.observable_sup_norm(index), delta, m, n);
}

ClassificationRecord classify_seed(const SystemSpec& system, const TorusPoint& x0,
                                   const ExperimentConfig& config) {
    validate_point(x0, system.dim());
    const std::size_t n = config.horizon;
    const DensityGrid grid{config.delta_grid, config.m_grid};
    grid.validate();
    if (config.burn_in >= n) throw InvalidParameter("burn_in must be below the horizon");
    const std::size_t length =
        std::max(profile_sequence_length(n, grid), candidate_sequence_length(n, config.candidate));
    const Orbit path = orbit(system, x0, length);
    const int k = system.center_count();

    std::vector<RealSequence> phi;
    for (int i = 0; i < system.observable_count(); ++i)
        phi.push_back(observable_sequence(system, path, i));

    ClassificationRecord rec;
    rec.x0 = x0;
    for (const auto& a : phi) rec.exponents.push_back(mean_over(a, config.burn_in, n));
    for (int i = 1; i <= k; ++i) {
        const auto& a = phi[static_cast<std::size_t>(i)];
        rec.alpha.push_back(alpha_profile(a, i, grid, n));
        rec.beta.push_back(beta_profile(a, i, grid, n));
    }
    rec.label = classify_point(rec.alpha, rec.beta, k);

    const TestFamily family = TestFamily::trigonometric(system.dim(), config.test_family_size);
    const Eigen::VectorXd reference = family.integrals(system.reference());
    const PointMeasure empirical = empirical_measure_on(path, TimeSet::interval(0, n, n), n);
    rec.empirical_distance = weak_star_distance(family.integrals(empirical), reference);

    const auto i = static_cast<std::size_t>(rec.label.index);
    const TimeSet f = srb_candidate_times(phi[i], phi[i + 1], config.candidate, n);
    rec.candidate_size = f.count_in(0, n - 1);
    if (rec.candidate_size > 0) {
        const PointMeasure candidate = empirical_measure_on(path, f, n).normalized();
        rec.candidate_distance = weak_star_distance(family.integrals(candidate), reference);
    }
    return rec;
}

EnsembleSummary summarize(const std::vector<ClassificationRecord>& records, int observable_count) {
    EnsembleSummary out;
    out.mean_exponents.assign(static_cast<std::size_t>(observable_count), 0.0);
    if (records.empty()) return out;
    double candidate_sum = 0.0;
    for (const auto& r : records) {
        ++out.label_counts[r.label.to_string()];
        for (std::size_t i = 0; i < out.mean_exponents.size() && i < r.exponents.size(); ++i)
            out.mean_exponents[i] += r.exponents[i];
        out.mean_empirical_distance += r.empirical_distance;
        if (!std::isnan(r.candidate_distance)) {
            candidate_sum += r.candidate_distance;
            ++out.candidate_count;
        }
    }
    const auto count = static_cast<double>(records.size());
    for (auto& e : out.mean_exponents) e /= count;
    out.mean_empirical_distance /= count;
    if (out.candidate_count > 0)
        out.mean_candidate_distance = candidate_sum / static_cast<double>(out.candidate_count);
    return out;
}

EnsembleResult ensemble_run(const ExperimentConfig& config) {
    validate(config);
    const SystemSpec system = make_system(config.system, config.params);

    EnsembleResult out;
    out.records.resize(config.seeds);
    std::vector<std::exception_ptr> errors(config.seeds);
    std::atomic<std::size_t> next{0};

    const auto work = [&] {
        for (std::size_t idx = next++; idx < config.seeds; idx = next++) {
            try {
                const std::uint64_t seed = derive_seed(config.master_seed, idx);
                ClassificationRecord rec = classify_seed(system, random_point(system.dim(), seed), config);
                rec.seed_index = idx;
                rec.seed = seed;
                out.records[idx] = std::move(rec);
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(config.seeds, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    out.summary = summarize(out.records, system.observable_count());
    return out;
}

} // namespace hyptimes
