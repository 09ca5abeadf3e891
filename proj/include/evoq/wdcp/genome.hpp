#pragma once

#include "evoq/types.hpp"
#include "evoq/wdcp/scenario.hpp"

#include <array>
#include <vector>

namespace evoq::wdcp {

/// Decoded warehouse design.
///
/// Gene layout on [0,1]^n (n = scenario.genome_length()):
///   [0..3]   rule priorities; rules apply in ascending gene order
///   [4..8]   placement-rule parameters delta1..delta5
///   [9..9+R) resource counts, floor-scaled into [z_min, z_max]
///   rest     allocation weights per hall x width class x height class,
///            largest-remainder rounded so each hall sums to its capacity
struct WdcpGenome {
    std::array<int, 4> rule_order{};     // permutation of {0,1,2,3}
    std::array<double, 5> deltas{};      // each in [0,1]
    std::vector<int> resource_counts;    // per resource type
    // storage_alloc[hall][w * n_height + h]
    std::vector<std::vector<int>> storage_alloc;
};

WdcpGenome decode_genome(const DecisionVector& x, const SimScenario& scenario);
WdcpGenome decode_genome(const std::vector<double>& genes, const SimScenario& scenario);

/// Throws std::logic_error when a decoded genome violates its invariants
/// (rule order not a permutation, counts out of range, hall sums off).
void audit_genome(const WdcpGenome& genome, const SimScenario& scenario);

} // namespace evoq::wdcp
