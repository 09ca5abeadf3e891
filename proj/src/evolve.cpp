#include "evoq/evolve.hpp"

#include <numeric>
#include <stdexcept>

namespace evoq {

Population initial_population(const ProblemSpec& problem, std::size_t n, Rng& rng) {
    Population pop;
    pop.generation_index = 0;
    pop.members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> genes(problem.n_vars);
        for (std::size_t g = 0; g < problem.n_vars; ++g) {
            const auto& b = (*problem.bounds)[g];
            genes[g] = rng.uniform(b.lower, b.upper);
        }
        Individual ind = problem.make_individual(std::move(genes));
        problem.evaluate_in_place(ind);
        pop.members.push_back(std::move(ind));
    }
    return pop;
}

Population evolve_generation(const Population& pop, const ProblemSpec& problem,
                             const VariationParams& params, const ReferencePointSet& refs,
                             Rng& rng) {
    params.validate();
    const std::size_t n = pop.size();
    if (n < 2) throw std::invalid_argument("evolve_generation: population too small");
    for (const auto& ind : pop.members)
        if (!ind.evaluated())
            throw std::logic_error("evolve_generation: unevaluated parent");

    // Mating is pressure-free: shuffle into pairs. An odd-sized population
    // pairs its leftover with member 0 and the surplus child is dropped.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    if (n % 2 != 0) order.push_back(order.front());

    std::vector<Individual> children;
    children.reserve(order.size());
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
        const Individual& p1 = pop.members[order[i]];
        const Individual& p2 = pop.members[order[i + 1]];
        DecisionVector g1 = p1.genome;
        DecisionVector g2 = p2.genome;
        if (rng.uniform() < params.crossover_prob) {
            auto [c1, c2] = sbx_crossover(p1.genome, p2.genome, params.eta_sbx, rng);
            g1 = std::move(c1);
            g2 = std::move(c2);
        }
        g1 = polynomial_mutation(g1, params.eta_plm, params.indpb, rng);
        g2 = polynomial_mutation(g2, params.eta_plm, params.indpb, rng);
        children.push_back(Individual{std::move(g1), std::nullopt});
        children.push_back(Individual{std::move(g2), std::nullopt});
    }
    children.resize(n); // drop the surplus child of an odd pairing

    for (auto& child : children) problem.evaluate_in_place(child);

    Population merged;
    merged.generation_index = pop.generation_index;
    merged.members = pop.members;
    for (auto& child : children) merged.members.push_back(std::move(child));

    Population next = nsga3_select(merged, refs, n, rng);
    next.generation_index = pop.generation_index + 1;
    return next;
}

} // namespace evoq
