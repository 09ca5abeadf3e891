#pragma once

#include "evoq/problems.hpp"
#include "evoq/refpoints.hpp"
#include "evoq/rng.hpp"
#include "evoq/selection.hpp"
#include "evoq/variation.hpp"

namespace evoq {

/// Uniformly sample and evaluate an initial population of size n.
Population initial_population(const ProblemSpec& problem, std::size_t n, Rng& rng);

/// One generational cycle: random pairing (uniform shuffle), SBX with
/// probability crossover_prob, polynomial mutation, child evaluation,
/// then reference-point selection over parents plus children.
/// generation_index increments by one.
Population evolve_generation(const Population& pop, const ProblemSpec& problem,
                             const VariationParams& params, const ReferencePointSet& refs,
                             Rng& rng);

} // namespace evoq
