#pragma once

#include <cstddef>
#include <vector>

namespace evoq {

/// Uniform weight vectors on the unit simplex (Das-Dennis construction).
struct ReferencePointSet {
    std::size_t dims = 0;
    std::vector<std::vector<double>> points; // each sums to 1, coords >= 0

    std::size_t size() const { return points.size(); }
};

/// All simplex lattice points with denominator p in m dimensions;
/// count = C(p+m-1, m-1). Throws std::invalid_argument for m < 2 or p < 1.
ReferencePointSet das_dennis_points(std::size_t m, std::size_t p);

/// Smallest p whose lattice has at least `minimum` points.
std::size_t das_dennis_divisions_for(std::size_t m, std::size_t minimum);

} // namespace evoq
