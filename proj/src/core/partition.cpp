#include "hyptimes/partition.hpp"

#include "hyptimes/errors.hpp"

namespace hyptimes {

GridPartition::GridPartition(int dim, int resolution) : dim_(dim), resolution_(resolution) {
    if (dim < 1 || dim > 4) throw DimensionError("partition dimension must lie in 1..4");
    if (resolution < 1) throw InvalidParameter("partition resolution must be >= 1");
    // Atom ids must fit in 63 bits.
    if (dim * resolution > 63) throw InvalidParameter("partition has more than 2^63 atoms");
}

std::uint64_t GridPartition::atom_id(const TorusPoint& x) const {
    if (x.size() != dim_) throw DimensionError("point and partition dimensions differ");
    return atom_id(x.data());
}

} // namespace hyptimes
