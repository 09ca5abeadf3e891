#pragma once

#include "evoq/problems.hpp"
#include "evoq/wdcp/genome.hpp"
#include "evoq/wdcp/scenario.hpp"

namespace evoq::wdcp {

struct SimResult {
    double tardiness = 0.0;      // penalty-weighted minutes over outbound trucks
    double resource_cost = 0.0;  // sum of cost_i * Z_i
    int unplaceable = 0;         // products with no feasible location
};

/// Tardiness penalty factor by delay bracket: free below 30 minutes, half
/// weight between 30 and 120, full weight beyond.
double tardiness_factor(double delay_min);

/// Event-driven warehouse run. Inbound trucks dock FIFO at free docks and
/// unload through the product placement rules; outbound trucks retrieve
/// their manifests with the allocated resources. Statistics are collected
/// only after the warm-up period. Deterministic for a fixed
/// (genome, scenario) pair.
SimResult run_simulation(const WdcpGenome& genome, const SimScenario& scenario);

/// (tardiness, resource_cost, unplaceable) as a minimization vector.
ObjectiveVector wdcp_lite_eval(const std::vector<double>& genes, const SimScenario& scenario);

/// ProblemSpec over [0,1]^n backed by the simulator. The hypervolume
/// normalization box is calibrated once per scenario: exact bounds for the
/// resource-cost objective, seeded random-genome sampling with margin for
/// the other two.
ProblemSpec make_wdcp_problem(const SimScenario& scenario);

} // namespace evoq::wdcp
