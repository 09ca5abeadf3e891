#include "evoq/hypervolume.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace evoq {

namespace {

void check_dims(const std::vector<ObjectiveVector>& points, std::size_t m) {
    for (const auto& p : points)
        if (p.size() != m)
            throw std::invalid_argument("hypervolume: point dimension mismatch");
}

/// Keep only points weakly inside the reference box.
std::vector<ObjectiveVector> filter_by_reference(const std::vector<ObjectiveVector>& points,
                                                 const std::vector<double>& r) {
    std::vector<ObjectiveVector> kept;
    kept.reserve(points.size());
    for (const auto& p : points) {
        bool inside = true;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (p[i] > r[i]) {
                inside = false;
                break;
            }
        }
        if (inside) kept.push_back(p);
    }
    return kept;
}

/// 2-D base case: sweep over points sorted by the first objective.
double hv2d(std::vector<ObjectiveVector> pts, double r0, double r1) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    double volume = 0.0;
    double best_f1 = r1;
    for (const auto& p : pts) {
        if (p[1] < best_f1) {
            volume += (r0 - p[0]) * (best_f1 - p[1]);
            best_f1 = p[1];
        }
    }
    return volume;
}

double hv_recursive(std::vector<ObjectiveVector> pts, const std::vector<double>& r) {
    const std::size_t m = r.size();
    if (pts.empty()) return 0.0;
    if (m == 1) {
        double lo = pts[0][0];
        for (const auto& p : pts) lo = std::min(lo, p[0]);
        return r[0] - lo;
    }
    if (m == 2) return hv2d(std::move(pts), r[0], r[1]);

    // Slice along the last objective: between consecutive cut heights the
    // dominated cross-section is constant and one dimension lower.
    std::sort(pts.begin(), pts.end(),
              [m](const auto& a, const auto& b) { return a[m - 1] < b[m - 1]; });
    std::vector<double> sub_r(r.begin(), r.end() - 1);
    std::vector<ObjectiveVector> active;
    active.reserve(pts.size());
    double volume = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ObjectiveVector proj(pts[i].begin(), pts[i].end() - 1);
        active.push_back(std::move(proj));
        const double z_lo = pts[i][m - 1];
        const double z_hi = (i + 1 < pts.size()) ? pts[i + 1][m - 1] : r[m - 1];
        if (z_hi > z_lo) volume += (z_hi - z_lo) * hv_recursive(active, sub_r);
    }
    return volume;
}

} // namespace

double hypervolume(const std::vector<ObjectiveVector>& points, const HvReferencePoint& r) {
    check_dims(points, r.coords.size());
    auto kept = filter_by_reference(points, r.coords);
    if (kept.empty()) return 0.0;
    return hv_recursive(std::move(kept), r.coords);
}

McEstimate hypervolume_monte_carlo(const std::vector<ObjectiveVector>& points,
                                   const HvReferencePoint& r, std::size_t samples, Rng& rng) {
    const std::size_t m = r.coords.size();
    check_dims(points, m);
    auto kept = filter_by_reference(points, r.coords);
    if (kept.empty()) return {0.0, 0.0};

    // Sampling box spans the componentwise minimum up to the reference.
    std::vector<double> lo(m);
    for (std::size_t j = 0; j < m; ++j) {
        lo[j] = kept[0][j];
        for (const auto& p : kept) lo[j] = std::min(lo[j], p[j]);
    }
    double box_volume = 1.0;
    for (std::size_t j = 0; j < m; ++j) box_volume *= r.coords[j] - lo[j];
    if (box_volume <= 0.0) return {0.0, 0.0};

    std::vector<double> sample(m);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < m; ++j) sample[j] = rng.uniform(lo[j], r.coords[j]);
        for (const auto& p : kept) {
            bool dominated = true;
            for (std::size_t j = 0; j < m; ++j) {
                if (p[j] > sample[j]) {
                    dominated = false;
                    break;
                }
            }
            if (dominated) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate est;
    est.estimate = frac * box_volume;
    est.stderr_est = box_volume * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return est;
}

double normalized_hv(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ideal,
                     const HvReferencePoint& nadir_ref) {
    const std::size_t m = ideal.size();
    if (nadir_ref.coords.size() != m)
        throw std::invalid_argument("normalized_hv: ideal/nadir dimension mismatch");
    check_dims(points, m);

    static bool warned_degenerate = false;
    std::vector<ObjectiveVector> mapped;
    mapped.reserve(points.size());
    for (const auto& p : points) {
        ObjectiveVector q(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double range = nadir_ref.coords[j] - ideal[j];
            if (range <= 0.0) {
                if (!warned_degenerate) {
                    std::clog << "normalized_hv: degenerate range on objective " << j
                              << ", coordinate mapped to 0\n";
                    warned_degenerate = true;
                }
                q[j] = 0.0;
            } else {
                q[j] = std::max(0.0, (p[j] - ideal[j]) / range);
            }
        }
        mapped.push_back(std::move(q));
    }
    HvReferencePoint unit{std::vector<double>(m, 1.0)};
    return hypervolume(mapped, unit);
}

double HvTrace::max_hv() const {
    double best = 0.0;
    for (double v : per_generation_hv) best = std::max(best, v);
    return best;
}

} // namespace evoq
