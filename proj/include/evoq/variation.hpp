#pragma once

#include "evoq/rng.hpp"
#include "evoq/types.hpp"

#include <utility>

namespace evoq {

/// Variation operator settings. eta values are distribution indices
/// (higher = offspring closer to parents), indpb the per-gene mutation
/// probability.
struct VariationParams {
    double eta_sbx = 30.0;
    double eta_plm = 20.0;
    double indpb = 0.01;
    double crossover_prob = 1.0;

    void validate() const;
};

/// Spread factor for simulated binary crossover at uniform draw u.
double sbx_spread_factor(double u, double eta);

/// One-gene SBX: children of scalar parents a, b at draw u (no clipping).
std::pair<double, double> sbx_gene(double a, double b, double eta, double u);

/// One-gene polynomial mutation perturbation delta at draw u.
double plm_delta(double u, double eta);

/// Whole-vector SBX. Parents must share bounds. Children are clipped to
/// the bounds after variation. Throws std::invalid_argument for eta <= 0
/// or mismatched bounds.
std::pair<DecisionVector, DecisionVector>
sbx_crossover(const DecisionVector& p1, const DecisionVector& p2, double eta, Rng& rng);

/// Whole-vector polynomial mutation: each gene independently mutated with
/// probability indpb, x' = x + delta * (upper - lower), clipped.
DecisionVector polynomial_mutation(const DecisionVector& x, double eta, double indpb, Rng& rng);

} // namespace evoq
