#include "hyptimes/config.hpp"

#include "hyptimes/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hyptimes {

namespace {

template <typename T>
void require_increasing(const std::vector<T>& grid, const std::string& path) {
    if (grid.empty()) throw ConfigError(path, "must not be empty");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const std::string at = path + "[" + std::to_string(j) + "]";
        if (!(grid[j] > T(0))) throw ConfigError(at, "must be positive");
        if (j > 0 && !(grid[j] > grid[j - 1])) throw ConfigError(at, "grid must be strictly increasing");
    }
}

} // namespace

void validate(const ExperimentConfig& c) {
    const auto names = builtin_system_names();
    if (std::find(names.begin(), names.end(), c.system) == names.end())
        throw ConfigError("system.name", "unknown system '" + c.system + "'");
    if (c.seeds == 0) throw ConfigError("seeds", "must be >= 1");
    if (c.horizon == 0) throw ConfigError("horizon", "must be >= 1");
    if (c.burn_in >= c.horizon) throw ConfigError("burn_in", "must be below horizon");
    require_increasing(c.delta_grid, "delta_grid");
    require_increasing(c.m_grid, "m_grid");
    if (!(c.candidate.delta > 0.0) || !std::isfinite(c.candidate.delta))
        throw ConfigError("candidate.delta", "must be positive");
    if (c.candidate.window_m == 0) throw ConfigError("candidate.m", "must be >= 1");
    if (c.candidate.window_n == 0) throw ConfigError("candidate.n", "must be >= 1");
    if (c.candidate.window_p == 0) throw ConfigError("candidate.p", "must be >= 1");
    if (c.resolution < 1 || c.resolution > 15) throw ConfigError("resolution", "must lie in 1..15");
    if (c.test_family_size < 1) throw ConfigError("test_family_size", "must be >= 1");
    if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
    if (c.decay_steps == 0) throw ConfigError("decay_steps", "must be >= 1");
    if (!(c.segment_half_length > 0.0 && c.segment_half_length < 0.5))
        throw ConfigError("segment_half_length", "must lie in (0, 0.5)");
    for (std::size_t j = 0; j < c.sample_points.size(); ++j)
        for (std::size_t i = 0; i < c.sample_points[j].size(); ++i) {
            const double v = c.sample_points[j][i];
            if (!(v >= 0.0 && v < 1.0))
                throw ConfigError("sample_points[" + std::to_string(j) + "][" + std::to_string(i) + "]",
                                  "coordinate must lie in [0, 1)");
        }
}

} // namespace hyptimes
