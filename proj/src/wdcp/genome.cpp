#include "evoq/wdcp/genome.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace evoq::wdcp {

namespace {

/// Proportional shares rounded to integers summing exactly to total
/// (largest remainder, ties to the lower index). All-zero weights fall
/// back to equal shares.
std::vector<int> largest_remainder(const std::vector<double>& weights, int total) {
    std::vector<double> w = weights;
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum <= 0.0) {
        std::fill(w.begin(), w.end(), 1.0);
        sum = static_cast<double>(w.size());
    }
    std::vector<int> counts(w.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double quota = static_cast<double>(total) * w[i] / sum;
        counts[i] = static_cast<int>(std::floor(quota));
        assigned += counts[i];
        remainders.push_back({quota - std::floor(quota), i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int r = 0; r < total - assigned; ++r) ++counts[remainders[static_cast<std::size_t>(r)].second];
    return counts;
}

} // namespace

WdcpGenome decode_genome(const std::vector<double>& genes, const SimScenario& scenario) {
    if (genes.size() != scenario.genome_length())
        throw std::invalid_argument("decode_genome: gene count does not match the scenario");

    WdcpGenome g;

    // ordinals: rank of the 4 priority genes, ties broken by gene index
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return genes[a] < genes[b]; });
    for (std::size_t i = 0; i < 4; ++i) g.rule_order[i] = static_cast<int>(order[i]);

    for (std::size_t i = 0; i < 5; ++i) g.deltas[i] = genes[4 + i];

    std::size_t pos = 9;
    for (const auto& r : scenario.resources) {
        const int span = r.z_max - r.z_min + 1;
        int z = r.z_min + static_cast<int>(std::floor(genes[pos] * span));
        z = std::min(z, r.z_max); // gene exactly 1.0 lands on z_max
        g.resource_counts.push_back(z);
        ++pos;
    }

    const std::size_t cells = scenario.width_classes.size() * scenario.height_classes.size();
    for (const auto& hall : scenario.halls) {
        std::vector<double> weights(genes.begin() + static_cast<std::ptrdiff_t>(pos),
                                    genes.begin() + static_cast<std::ptrdiff_t>(pos + cells));
        g.storage_alloc.push_back(largest_remainder(weights, hall.capacity));
        pos += cells;
    }
    return g;
}

WdcpGenome decode_genome(const DecisionVector& x, const SimScenario& scenario) {
    return decode_genome(x.values, scenario);
}

void audit_genome(const WdcpGenome& g, const SimScenario& scenario) {
    std::array<bool, 4> seen{};
    for (int r : g.rule_order) {
        if (r < 0 || r > 3 || seen[static_cast<std::size_t>(r)])
            throw std::logic_error("audit_genome: rule order is not a permutation");
        seen[static_cast<std::size_t>(r)] = true;
    }
    for (double d : g.deltas)
        if (d < 0.0 || d > 1.0) throw std::logic_error("audit_genome: delta outside [0,1]");
    if (g.resource_counts.size() != scenario.resources.size())
        throw std::logic_error("audit_genome: resource count size mismatch");
    for (std::size_t i = 0; i < g.resource_counts.size(); ++i) {
        const auto& r = scenario.resources[i];
        if (g.resource_counts[i] < r.z_min || g.resource_counts[i] > r.z_max)
            throw std::logic_error("audit_genome: resource count outside [z_min, z_max]");
    }
    if (g.storage_alloc.size() != scenario.halls.size())
        throw std::logic_error("audit_genome: hall count mismatch");
    const std::size_t cells = scenario.width_classes.size() * scenario.height_classes.size();
    for (std::size_t h = 0; h < g.storage_alloc.size(); ++h) {
        if (g.storage_alloc[h].size() != cells)
            throw std::logic_error("audit_genome: cell count mismatch");
        int sum = 0;
        for (int c : g.storage_alloc[h]) {
            if (c < 0) throw std::logic_error("audit_genome: negative allocation");
            sum += c;
        }
        if (sum != scenario.halls[h].capacity)
            throw std::logic_error("audit_genome: hall allocation does not meet capacity");
    }
}

} // namespace evoq::wdcp
