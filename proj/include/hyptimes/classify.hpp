#pragma once

#include "hyptimes/config.hpp"
#include "hyptimes/measure.hpp"
#include "hyptimes/sequence.hpp"
#include "hyptimes/system.hpp"
#include "hyptimes/timeset.hpp"

#include <Eigen/Core>

#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hyptimes {

/// (delta, M) grid of a density profile; both axes strictly increasing.
struct DensityGrid {
    std::vector<double> deltas;
    std::vector<std::size_t> windows;

    void validate() const;
    std::size_t max_window() const { return windows.back(); }
};

/// Finite-horizon density table for one observable index.
///
/// alpha: entry(delta, M) = d_n(E^delta_{Phi_i}(M)), lower density of hyperbolic times.
/// beta:  entry(delta, M) = d_n(F^{delta,M}_{-Phi_i}(M)), weakly hyperbolic times of -phi^i.
struct DensityProfile {
    enum class Kind { alpha, beta };

    Kind kind = Kind::alpha;
    int index = 0;
    std::size_t horizon = 0;
    DensityGrid grid;
    Eigen::MatrixXd values;  // rows: deltas, columns: windows

    /// Max over the grid. For alpha this is the entry at the smallest delta and the
    /// largest M, since E^delta(M) shrinks with delta and grows with M.
    double summary() const { return values.size() ? values.maxCoeff() : 0.0; }
};

/// Length of the observable sequence needed so that every dilation in the grid is exact
/// on [1, n].
std::size_t profile_sequence_length(std::size_t n, const DensityGrid& grid);

DensityProfile alpha_profile(const RealSequence& phi, int index, const DensityGrid& grid,
                             std::size_t n);
DensityProfile beta_profile(const RealSequence& phi, int index, const DensityGrid& grid,
                            std::size_t n);
DensityProfile alpha_profile(const SystemSpec& system, const TorusPoint& x0, int index,
                             const DensityGrid& grid, std::size_t n);
DensityProfile beta_profile(const SystemSpec& system, const TorusPoint& x0, int index,
                            const DensityGrid& grid, std::size_t n);

struct Label {
    enum class Kind { hyperbolic_basin, non_hyperbolic_component, undetermined };

    Kind kind = Kind::undetermined;
    int index = 0;

    std::string to_string() const;
    friend bool operator==(const Label&, const Label&) = default;
};

struct Thresholds {
    double alpha_high = 0.99;
    double beta_low = 0.01;
    double beta_high = 0.1;
};

/// Picks the largest i in [0, k] with alpha_i >= alpha_high (alpha_0 = 1), then reads
/// beta_{i+1} (beta_{k+1} = 0): >= beta_high gives HyperbolicBasin(i), <= beta_low gives
/// NonHyperbolicComponent(i), anything between is Undetermined.
///
/// `alpha` and `beta` hold the summaries for i = 1 .. k.
Label classify_point(std::span<const double> alpha, std::span<const double> beta,
                     const Thresholds& thresholds = {});

/// Same decision from full profiles; throws IncompleteInput unless both lists cover
/// exactly i = 1 .. k in order.
Label classify_point(const std::vector<DensityProfile>& alpha,
                     const std::vector<DensityProfile>& beta, int center_count,
                     const Thresholds& thresholds = {});

/// Sequence length needed for the candidate time set to be exact on [1, n].
std::size_t candidate_sequence_length(std::size_t n, const CandidateParams& params);

/// G_{-phi_next}^{delta,M}((N)) ∩ E^delta_{phi}(P) ∩ [1, n].
TimeSet srb_candidate_times(const RealSequence& phi, const RealSequence& phi_next,
                            const CandidateParams& params, std::size_t n);

/// Normalized empirical measure of the orbit of x0 over the candidate time set for the
/// index pair (i, i + 1). Throws EmptyTimeSet when the set has no element in [1, n).
PointMeasure srb_candidate_measure(const SystemSpec& system, const TorusPoint& x0, int index,
                                   const CandidateParams& params, std::size_t n);

struct RefinementReport {
    TimeSet candidate;
    TimeSet anchors;
    TimeSet refined;
    double discarded = 0.0;  // d_n(candidate \ refined)
    double bound = 0.0;      // P/N + P/M + P/n

    bool within_bound() const { return discarded <= bound; }
};

/// Interval refinement of a candidate set against its anchors E^delta_{Phi_i}.
RefinementReport refine_candidate(const TimeSet& candidate, const TimeSet& anchors,
                                  const CandidateParams& params, std::size_t n);

RefinementReport refine_to_intervals(const SystemSpec& system, const TorusPoint& x0, int index,
                                     const CandidateParams& params, std::size_t n);

struct ComplementDefect {
    std::size_t horizon_used = 0;  // the hyperbolic time the measure is taken at
    double integral = 0.0;         // int phi d zeta
    double mass = 0.0;             // zeta(X)
    double value = 0.0;            // |integral - mass delta| - ||phi||/M
};

/// zeta = mu_x^{n'}[complement of E^delta<M> in [0, n')], taken at the hyperbolic time n'
/// closest to n from below (from above if none). Throws NoHyperbolicTime if E is empty.
ComplementDefect complement_mass_defect(const RealSequence& phi, double sup_norm, double delta,
                                        std::size_t m, std::size_t n);

ComplementDefect complement_mass_defect(const SystemSpec& system, const TorusPoint& x0, int index,
                                        double delta, std::size_t m, std::size_t n);

struct ClassificationRecord {
    std::size_t seed_index = 0;
    std::uint64_t seed = 0;
    TorusPoint x0;
    std::vector<double> exponents;        // phi^0 .. phi^{k+1}, averaged after burn-in
    std::vector<DensityProfile> alpha;    // i = 1 .. k
    std::vector<DensityProfile> beta;     // i = 1 .. k
    Label label;
    double empirical_distance = 0.0;      // d(mu_x^n, reference measure)
    double candidate_distance = std::numeric_limits<double>::quiet_NaN();
    std::size_t candidate_size = 0;
};

/// Full single-point pipeline: exponents, profiles, label, distances.
ClassificationRecord classify_seed(const SystemSpec& system, const TorusPoint& x0,
                                   const ExperimentConfig& config);

struct EnsembleSummary {
    std::map<std::string, std::size_t> label_counts;
    std::vector<double> mean_exponents;
    double mean_empirical_distance = 0.0;
    double mean_candidate_distance = std::numeric_limits<double>::quiet_NaN();
    std::size_t candidate_count = 0;
};

struct EnsembleResult {
    std::vector<ClassificationRecord> records;
    EnsembleSummary summary;
};

/// One record per seed, seed i starting at random_point(d, derive_seed(master, i)).
/// Seeds run on worker threads; records come back in seed order.
EnsembleResult ensemble_run(const ExperimentConfig& config);

EnsembleSummary summarize(const std::vector<ClassificationRecord>& records, int observable_count);

} // namespace hyptimes
