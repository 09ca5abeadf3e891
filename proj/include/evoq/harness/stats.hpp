#pragma once

#include <cstddef>
#include <vector>

namespace evoq::harness {

double mean(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs); // n-1 denominator, 0 for n < 2
double median(std::vector<double> xs);

/// One-sided Mann-Whitney rank test of H1: xs stochastically greater than
/// ys. Normal approximation with midranks, tie correction and continuity
/// correction. Returns the p-value.
double mann_whitney_p_greater(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace evoq::harness
