#pragma once

#include "evoq/types.hpp"

namespace evoq {

/// True iff a <= b componentwise and a < b in at least one component
/// (minimization). Throws std::invalid_argument on length mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Fast non-dominated sort over the whole population.
/// Deterministic: indices ascend within each front. Throws
/// std::logic_error if any member is unevaluated.
FrontPartition non_dominated_sort(const Population& pop);

/// Sort over raw objective vectors (no Population wrapper).
FrontPartition non_dominated_sort(const std::vector<ObjectiveVector>& objs);

} // namespace evoq
