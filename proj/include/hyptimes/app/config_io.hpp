#pragma once

#include "hyptimes/config.hpp"

#include <filesystem>
#include <string>

namespace hyptimes::app {

/// Strict JSON schema: unknown keys and wrong types raise ConfigError with the field path.
///
///   {
///     "system": {"name": "catns", "params": {"epsilon": 0.01}},
///     "master_seed": 1, "seeds": 100, "horizon": 100000, "burn_in": 1000,
///     "delta_grid": [0.005, 0.01, 0.03, 0.1], "m_grid": [10, 100, 1000],
///     "candidate": {"delta": 0.03, "m": 100, "n": 100, "p": 100},
///     "resolution": 4, "test_family_size": 64, "output_dir": "out",
///     "decay_steps": 20, "segment_half_length": 0.05, "sample_points": [[0.1, 0.2]]
///   }
///
/// Only "system" is required.
ExperimentConfig parse_config(const std::string& text);

/// Throws hyptimes::Error naming the path when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

std::string dump_config(const ExperimentConfig& config);

} // namespace hyptimes::app
