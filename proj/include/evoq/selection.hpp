#pragma once

#include "evoq/refpoints.hpp"
#include "evoq/rng.hpp"
#include "evoq/types.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace evoq {

/// Introspection record of one selection call, for tests and audits.
struct SelectionAudit {
    std::size_t partial_front = std::numeric_limits<std::size_t>::max();
    std::vector<int> assoc_ref;        // merged index -> associated reference, -1 if unconsidered
    std::vector<double> assoc_dist;    // perpendicular distance to that reference
    std::vector<ObjectiveVector> normalized; // merged index -> intercept-normalized objectives
    std::vector<int> niche_count;      // per reference, survivors only, after selection
    std::vector<std::size_t> survivors; // merged indices in selection order
};

/// Environmental selection: admit whole non-dominated fronts until the
/// partial front, then fill the remainder by reference-point niching
/// (ideal translation, extreme-point intercept normalization,
/// perpendicular-distance association, minimal-niche-count picks with
/// seeded random tie-breaking). Returns exactly n_survivors members.
/// Throws std::invalid_argument if merged has fewer than n_survivors.
Population nsga3_select(const Population& merged, const ReferencePointSet& refs,
                        std::size_t n_survivors, Rng& rng, SelectionAudit* audit = nullptr);

} // namespace evoq
