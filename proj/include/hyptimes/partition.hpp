#pragma once

#include "hyptimes/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace hyptimes {

/// Dyadic grid partition of the d-torus into boxes of side 2^-r.
///
/// Atom ids pack the per-axis box indices, r bits per axis, axis 0 in the low bits.
class GridPartition {
public:
    GridPartition(int dim, int resolution);

    int dim() const noexcept { return dim_; }
    int resolution() const noexcept { return resolution_; }
    std::uint64_t atom_count() const noexcept { return std::uint64_t{1} << (dim_ * resolution_); }
    double log_atom_count() const noexcept {
        return static_cast<double>(dim_ * resolution_) * std::log(2.0);
    }

    std::uint64_t atom_id(const double* x) const noexcept {
        std::uint64_t id = 0;
        for (int i = 0; i < dim_; ++i) id |= axis_index(x[i]) << (i * resolution_);
        return id;
    }
    std::uint64_t atom_id(const TorusPoint& x) const;

    /// Box index along one axis, clamped into [0, 2^r).
    std::uint64_t axis_index(double coordinate) const noexcept {
        const auto cells = std::uint64_t{1} << resolution_;
        auto idx = static_cast<std::int64_t>(std::floor(coordinate * static_cast<double>(cells)));
        idx = std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(cells) - 1);
        return static_cast<std::uint64_t>(idx);
    }

private:
    int dim_;
    int resolution_;
};

} // namespace hyptimes
