#pragma once

#include "evoq/hypervolume.hpp"
#include "evoq/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace evoq {

/// Benchmark or simulation-backed problem behind one evaluation
/// interface. `evaluate` must be pure: identical genomes produce
/// identical objective vectors.
struct ProblemSpec {
    std::string name;
    std::size_t n_vars = 0;
    std::size_t n_objectives = 0;
    BoundsPtr bounds;
    std::function<ObjectiveVector(const std::vector<double>&)> evaluate;

    // True-front box when analytically known, else calibrated estimates.
    std::optional<ObjectiveVector> known_ideal;
    std::optional<ObjectiveVector> known_nadir;
    // Upper corner used for normalized hypervolume tracking.
    std::optional<HvReferencePoint> hv_reference;

    Individual make_individual(std::vector<double> genes) const;
    Individual& evaluate_in_place(Individual& ind) const;
};

/// DTLZ1: g = 100(k + sum((xi-0.5)^2 - cos(20 pi (xi-0.5)))) over the
/// k = n - m + 1 tail variables; linear front sum(fi) = 0.5 at g = 0.
ProblemSpec make_dtlz1(std::size_t n_vars, std::size_t m);

/// DTLZ2: g = sum((xi-0.5)^2) over the tail; spherical front with
/// sum(fi^2) = (1+g)^2.
ProblemSpec make_dtlz2(std::size_t n_vars, std::size_t m);

ObjectiveVector dtlz1_eval(const std::vector<double>& x, std::size_t m);
ObjectiveVector dtlz2_eval(const std::vector<double>& x, std::size_t m);

} // namespace evoq
