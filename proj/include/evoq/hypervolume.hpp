#pragma once

#include "evoq/rng.hpp"
#include "evoq/types.hpp"

#include <vector>

namespace evoq {

/// Upper corner of the measured region (minimization). Points with any
/// coordinate above the reference are filtered out, never errors.
struct HvReferencePoint {
    std::vector<double> coords;
};

/// Exact hypervolume of the union of boxes [y, r] via recursive
/// dimension sweep: sort on the last objective, slice, recurse down to a
/// 2-D sweep. Suited to small fronts and m <= 4.
double hypervolume(const std::vector<ObjectiveVector>& points, const HvReferencePoint& r);

struct McEstimate {
    double estimate = 0.0;
    double stderr_est = 0.0;
};

/// Monte-Carlo hypervolume: fraction of uniform samples in
/// [componentwise-min, r] dominated by some point, scaled by box volume.
/// Serves as an independent cross-check of the exact algorithm.
McEstimate hypervolume_monte_carlo(const std::vector<ObjectiveVector>& points,
                                   const HvReferencePoint& r, std::size_t samples, Rng& rng);

/// Hypervolume after an affine map sending ideal -> 0 and nadir_ref -> 1
/// per coordinate, measured against r = all-ones; result is in [0, 1].
/// Coordinates better than the ideal are clamped to 0; a degenerate range
/// (nadir == ideal) maps that coordinate to 0 and is logged once.
double normalized_hv(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ideal,
                     const HvReferencePoint& nadir_ref);

/// Per-generation hypervolume record for one optimization run.
struct HvTrace {
    std::vector<double> per_generation_hv;
    HvReferencePoint reference;

    double max_hv() const;
};

} // namespace evoq
