#include "evoq/dominance.hpp"

#include <stdexcept>

namespace evoq {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dominates: objective vectors differ in length");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

FrontPartition non_dominated_sort(const std::vector<ObjectiveVector>& objs) {
    const std::size_t n = objs.size();
    FrontPartition out;
    if (n == 0) return out;

    // Deb's fast non-dominated sort: O(n^2 m) dominance counts.
    std::vector<int> dominated_count(n, 0);
    std::vector<std::vector<std::size_t>> dominates_list(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objs[i], objs[j])) {
                dominates_list[i].push_back(j);
                ++dominated_count[j];
            } else if (dominates(objs[j], objs[i])) {
                dominates_list[j].push_back(i);
                ++dominated_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominated_count[i] == 0) current.push_back(i);

    while (!current.empty()) {
        out.fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominates_list[i]) {
                if (--dominated_count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return out;
}

FrontPartition non_dominated_sort(const Population& pop) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop.members) {
        if (!ind.evaluated())
            throw std::logic_error("non_dominated_sort: unevaluated population member");
        objs.push_back(ind.objs());
    }
    return non_dominated_sort(objs);
}

} // namespace evoq
