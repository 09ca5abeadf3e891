#include "evoq/selection.hpp"

#include "evoq/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evoq {

namespace {

constexpr double kAsfWeightEps = 1e-6;

double achievement_scalar(const ObjectiveVector& f, std::size_t axis) {
    double worst = -1.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double w = (j == axis) ? 1.0 : kAsfWeightEps;
        worst = std::max(worst, f[j] / w);
    }
    return worst;
}

/// Solve E * x = 1 for x = 1/intercepts by Gaussian elimination.
/// Returns false when the system is singular or yields non-positive
/// intercepts, in which case the caller falls back to the nadir estimate.
bool hyperplane_intercepts(std::vector<ObjectiveVector> extremes, std::vector<double>& intercepts) {
    const std::size_t m = extremes.size();
    std::vector<double> rhs(m, 1.0);
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < m; ++row)
            if (std::fabs(extremes[row][col]) > std::fabs(extremes[pivot][col])) pivot = row;
        if (std::fabs(extremes[pivot][col]) < 1e-12) return false;
        std::swap(extremes[col], extremes[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t row = 0; row < m; ++row) {
            if (row == col) continue;
            const double factor = extremes[row][col] / extremes[col][col];
            for (std::size_t k = col; k < m; ++k) extremes[row][k] -= factor * extremes[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    intercepts.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double inv = rhs[j] / extremes[j][j];
        if (!(inv > 1e-12) || !std::isfinite(inv)) return false;
        intercepts[j] = 1.0 / inv;
    }
    return true;
}

double perpendicular_distance(const std::vector<double>& w, const ObjectiveVector& f) {
    double dot = 0.0, norm_sq = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        dot += w[j] * f[j];
        norm_sq += w[j] * w[j];
    }
    const double scale = dot / norm_sq;
    double dist_sq = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double d = f[j] - scale * w[j];
        dist_sq += d * d;
    }
    return std::sqrt(dist_sq);
}

} // namespace

Population nsga3_select(const Population& merged, const ReferencePointSet& refs,
                        std::size_t n_survivors, Rng& rng, SelectionAudit* audit) {
    if (merged.size() < n_survivors)
        throw std::invalid_argument("nsga3_select: fewer members than survivors requested");
    if (refs.size() == 0) throw std::invalid_argument("nsga3_select: empty reference set");

    const FrontPartition partition = non_dominated_sort(merged);
    const std::size_t m = merged.members.front().objs().size();

    std::vector<std::size_t> survivors;
    survivors.reserve(n_survivors);
    std::size_t front_idx = 0;
    while (front_idx < partition.fronts.size() &&
           survivors.size() + partition.fronts[front_idx].size() <= n_survivors) {
        for (std::size_t i : partition.fronts[front_idx]) survivors.push_back(i);
        ++front_idx;
    }

    if (audit) {
        audit->assoc_ref.assign(merged.size(), -1);
        audit->assoc_dist.assign(merged.size(), 0.0);
        audit->niche_count.assign(refs.size(), 0);
        audit->partial_front = front_idx;
    }

    if (survivors.size() < n_survivors) {
        const std::vector<std::size_t>& partial = partition.fronts[front_idx];
        const std::size_t n_fill = n_survivors - survivors.size();

        // Considered set: admitted fronts plus the partial front.
        std::vector<std::size_t> considered = survivors;
        considered.insert(considered.end(), partial.begin(), partial.end());

        // Translate by the ideal point of the considered set.
        std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
        for (std::size_t idx : considered)
            for (std::size_t j = 0; j < m; ++j)
                ideal[j] = std::min(ideal[j], merged.members[idx].objs()[j]);

        std::vector<ObjectiveVector> translated(merged.size());
        for (std::size_t idx : considered) {
            ObjectiveVector t(m);
            for (std::size_t j = 0; j < m; ++j) t[j] = merged.members[idx].objs()[j] - ideal[j];
            translated[idx] = std::move(t);
        }

        // Extreme point per axis minimizes the axis-weighted achievement
        // scalarizing function; intercepts come from the hyperplane through
        // them, with the nadir of the considered set as fallback.
        std::vector<ObjectiveVector> extremes(m);
        for (std::size_t axis = 0; axis < m; ++axis) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_idx = considered.front();
            for (std::size_t idx : considered) {
                const double s = achievement_scalar(translated[idx], axis);
                if (s < best) {
                    best = s;
                    best_idx = idx;
                }
            }
            extremes[axis] = translated[best_idx];
        }
        std::vector<double> intercepts;
        if (!hyperplane_intercepts(extremes, intercepts)) {
            intercepts.assign(m, 0.0);
            for (std::size_t idx : considered)
                for (std::size_t j = 0; j < m; ++j)
                    intercepts[j] = std::max(intercepts[j], translated[idx][j]);
        }
        for (double& a : intercepts)
            if (a < 1e-12) a = 1e-12;

        // Associate every considered member with its nearest reference line.
        std::vector<int> assoc(merged.size(), -1);
        std::vector<double> dist(merged.size(), 0.0);
        std::vector<ObjectiveVector> normalized_all(merged.size());
        for (std::size_t idx : considered) {
            ObjectiveVector normalized(m);
            for (std::size_t j = 0; j < m; ++j) normalized[j] = translated[idx][j] / intercepts[j];
            int best_ref = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t rj = 0; rj < refs.size(); ++rj) {
                const double d = perpendicular_distance(refs.points[rj], normalized);
                if (d < best_dist) {
                    best_dist = d;
                    best_ref = static_cast<int>(rj);
                }
            }
            assoc[idx] = best_ref;
            dist[idx] = best_dist;
            normalized_all[idx] = std::move(normalized);
        }

        std::vector<int> niche_count(refs.size(), 0);
        for (std::size_t idx : survivors) ++niche_count[static_cast<std::size_t>(assoc[idx])];

        std::vector<std::vector<std::size_t>> candidates(refs.size());
        for (std::size_t idx : partial) candidates[static_cast<std::size_t>(assoc[idx])].push_back(idx);

        // Niching: repeatedly serve the least-crowded reference that still
        // has candidates; ties between references and between equally valid
        // candidates break by seeded uniform draw.
        std::size_t filled = 0;
        while (filled < n_fill) {
            int min_count = std::numeric_limits<int>::max();
            for (std::size_t rj = 0; rj < refs.size(); ++rj)
                if (!candidates[rj].empty()) min_count = std::min(min_count, niche_count[rj]);
            std::vector<std::size_t> tied_refs;
            for (std::size_t rj = 0; rj < refs.size(); ++rj)
                if (!candidates[rj].empty() && niche_count[rj] == min_count) tied_refs.push_back(rj);
            const std::size_t ref = tied_refs[rng.uniform_index(tied_refs.size())];

            auto& cand = candidates[ref];
            std::size_t pick_pos;
            if (niche_count[ref] == 0) {
                double best = std::numeric_limits<double>::infinity();
                std::vector<std::size_t> tied;
                for (std::size_t c = 0; c < cand.size(); ++c) {
                    if (dist[cand[c]] < best) {
                        best = dist[cand[c]];
                        tied.assign(1, c);
                    } else if (dist[cand[c]] == best) {
                        tied.push_back(c);
                    }
                }
                pick_pos = tied[rng.uniform_index(tied.size())];
            } else {
                pick_pos = rng.uniform_index(cand.size());
            }
            const std::size_t chosen = cand[pick_pos];
            cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(pick_pos));
            survivors.push_back(chosen);
            ++niche_count[ref];
            ++filled;
        }

        if (audit) {
            audit->assoc_ref = assoc;
            audit->assoc_dist = dist;
            audit->normalized = normalized_all;
            audit->niche_count = niche_count;
        }
    }

    Population out;
    out.generation_index = merged.generation_index;
    out.members.reserve(n_survivors);
    for (std::size_t idx : survivors) out.members.push_back(merged.members[idx]);
    if (audit) audit->survivors = std::move(survivors);
    return out;
}

} // namespace evoq
