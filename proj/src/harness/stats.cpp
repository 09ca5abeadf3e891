#include "evoq/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evoq::harness {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double total = 0.0;
    for (double x : xs) total += x;
    return total / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double mann_whitney_p_greater(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n1 = xs.size();
    const std::size_t n2 = ys.size();
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("mann_whitney: empty sample");

    struct Tagged {
        double value;
        bool from_x;
    };
    std::vector<Tagged> pool;
    pool.reserve(n1 + n2);
    for (double x : xs) pool.push_back({x, true});
    for (double y : ys) pool.push_back({y, false});
    std::sort(pool.begin(), pool.end(),
              [](const Tagged& a, const Tagged& b) { return a.value < b.value; });

    // midranks plus tie-group bookkeeping for the variance correction
    const std::size_t n = pool.size();
    std::vector<double> rank(n);
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pool[j + 1].value == pool[i].value) ++j;
        const double shared = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) rank[k] = shared;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }

    double rank_sum_x = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (pool[k].from_x) rank_sum_x += rank[k];

    const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
    const double dn = dn1 + dn2;
    const double u = rank_sum_x - dn1 * (dn1 + 1.0) / 2.0;
    const double mu = dn1 * dn2 / 2.0;
    const double var = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var <= 0.0) return u > mu ? 0.0 : 1.0; // all values tied
    const double z = (u - mu - 0.5) / std::sqrt(var); // continuity-corrected
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace evoq::harness
