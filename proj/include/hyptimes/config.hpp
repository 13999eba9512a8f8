#pragma once

#include "hyptimes/system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyptimes {

/// Parameters of the SRB-candidate time set
/// G_{-Phi_{i+1}}^{delta,M}((N)) ∩ E^delta_{Phi_i}(P) ∩ [1, n].
struct CandidateParams {
    double delta = 0.03;
    std::size_t window_m = 100;
    std::size_t window_n = 100;
    std::size_t window_p = 100;
};

struct ExperimentConfig {
    std::string system = "catns";
    SystemParams params;
    std::uint64_t master_seed = 1;
    std::size_t seeds = 100;
    std::size_t horizon = 100000;
    std::size_t burn_in = 1000;
    std::vector<double> delta_grid{0.005, 0.01, 0.03, 0.1};
    std::vector<std::size_t> m_grid{10, 100, 1000};
    CandidateParams candidate;
    int resolution = 4;
    int test_family_size = 64;
    std::string output_dir = "out";

    // Entropy command.
    std::size_t decay_steps = 20;
    double segment_half_length = 0.05;
    /// Explicit sample for the entropy bounds; empty means `seeds` random points.
    std::vector<std::vector<double>> sample_points;
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& config);

} // namespace hyptimes
