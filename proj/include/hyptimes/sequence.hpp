#pragma once

#include "hyptimes/errors.hpp"

#include <Eigen/Core>

#include <istream>
#include <string>
#include <vector>

namespace hyptimes {

/// Observable orbits and Birkhoff increments; entries are log-derivatives.
template <typename Scalar>
using Sequence = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealSequence = Sequence<double>;

/// Throws InvalidParameter for an empty sequence or a non-finite entry.
template <typename Derived>
void validate_sequence(const Eigen::MatrixBase<Derived>& a) {
    static_assert(Derived::ColsAtCompileTime == 1, "sequences are column vectors");
    if (a.size() < 1) throw InvalidParameter("sequence must have length >= 1");
    if (!a.allFinite()) throw InvalidParameter("sequence entries must be finite");
}

template <typename Derived>
typename Derived::Scalar sup_norm(const Eigen::MatrixBase<Derived>& a) {
    return a.size() == 0 ? typename Derived::Scalar(0) : a.cwiseAbs().maxCoeff();
}

/// Parses CSV text into sequences, one per non-empty row.
std::vector<RealSequence> read_sequences_csv(std::istream& in);

/// Formats a sequence as a single CSV row with 17 significant digits.
std::string format_sequence_row(const RealSequence& a);

} // namespace hyptimes
