#include "evoq/variation.hpp"

#include <cmath>
#include <stdexcept>

namespace evoq {

void VariationParams::validate() const {
    if (!(eta_sbx > 0.0) || !(eta_plm > 0.0))
        throw std::invalid_argument("VariationParams: eta values must be > 0");
    if (indpb < 0.0 || indpb > 1.0)
        throw std::invalid_argument("VariationParams: indpb must be in [0,1]");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("VariationParams: crossover_prob must be in [0,1]");
}

double sbx_spread_factor(double u, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("sbx_spread_factor: eta must be > 0");
    const double exponent = 1.0 / (eta + 1.0);
    if (u <= 0.5) return std::pow(2.0 * u, exponent);
    return std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
}

std::pair<double, double> sbx_gene(double a, double b, double eta, double u) {
    const double beta = sbx_spread_factor(u, eta);
    const double c1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
    const double c2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
    return {c1, c2};
}

double plm_delta(double u, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("plm_delta: eta must be > 0");
    const double exponent = 1.0 / (eta + 1.0);
    if (u < 0.5) return std::pow(2.0 * u, exponent) - 1.0;
    return 1.0 - std::pow(2.0 * (1.0 - u), exponent);
}

std::pair<DecisionVector, DecisionVector>
sbx_crossover(const DecisionVector& p1, const DecisionVector& p2, double eta, Rng& rng) {
    if (!(eta > 0.0)) throw std::invalid_argument("sbx_crossover: eta must be > 0");
    if (p1.bounds != p2.bounds && *p1.bounds != *p2.bounds)
        throw std::invalid_argument("sbx_crossover: parents must share bounds");
    if (p1.size() != p2.size())
        throw std::invalid_argument("sbx_crossover: parents differ in length");

    // Reference recombination structure: each gene is crossed with
    // probability 1/2 (copied otherwise) and the two spread sides land on
    // the children in random order. The spread itself is sbx_gene.
    DecisionVector c1 = p1;
    DecisionVector c2 = p2;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.uniform() >= 0.5) continue;
        auto [a, b] = sbx_gene(p1.values[i], p2.values[i], eta, rng.uniform());
        if (rng.uniform() < 0.5) std::swap(a, b);
        c1.values[i] = a;
        c2.values[i] = b;
    }
    c1.clip_to_bounds();
    c2.clip_to_bounds();
    return {std::move(c1), std::move(c2)};
}

DecisionVector polynomial_mutation(const DecisionVector& x, double eta, double indpb, Rng& rng) {
    if (!(eta > 0.0)) throw std::invalid_argument("polynomial_mutation: eta must be > 0");
    if (indpb < 0.0 || indpb > 1.0)
        throw std::invalid_argument("polynomial_mutation: indpb must be in [0,1]");

    DecisionVector out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (rng.uniform() >= indpb) continue;
        const auto& b = (*out.bounds)[i];
        out.values[i] += plm_delta(rng.uniform(), eta) * (b.upper - b.lower);
    }
    out.clip_to_bounds();
    return out;
}

} // namespace evoq
