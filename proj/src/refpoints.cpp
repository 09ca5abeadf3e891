#include "evoq/refpoints.hpp"

#include <stdexcept>

namespace evoq {

namespace {

void enumerate(std::size_t m, std::size_t remaining, std::size_t denom,
               std::vector<double>& partial, std::vector<std::vector<double>>& out) {
    if (partial.size() == m - 1) {
        partial.push_back(static_cast<double>(remaining) / static_cast<double>(denom));
        out.push_back(partial);
        partial.pop_back();
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        partial.push_back(static_cast<double>(k) / static_cast<double>(denom));
        enumerate(m, remaining - k, denom, partial, out);
        partial.pop_back();
    }
}

} // namespace

ReferencePointSet das_dennis_points(std::size_t m, std::size_t p) {
    if (m < 2) throw std::invalid_argument("das_dennis_points: m must be >= 2");
    if (p < 1) throw std::invalid_argument("das_dennis_points: p must be >= 1");
    ReferencePointSet set;
    set.dims = m;
    std::vector<double> partial;
    enumerate(m, p, p, partial, set.points);
    return set;
}

std::size_t das_dennis_divisions_for(std::size_t m, std::size_t minimum) {
    // count(p) = C(p+m-1, m-1) grows fast; a linear scan is fine
    for (std::size_t p = 1;; ++p) {
        std::size_t count = 1;
        for (std::size_t i = 1; i < m; ++i)
            count = count * (p + i) / i; // exact: product is always divisible
        if (count >= minimum) return p;
    }
}

} // namespace evoq
