#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace evoq {

/// Per-gene box constraint.
struct Bounds {
    double lower = 0.0;
    double upper = 1.0;

    bool operator==(const Bounds&) const = default;
};

using BoundsPtr = std::shared_ptr<const std::vector<Bounds>>;

inline BoundsPtr make_unit_bounds(std::size_t n) {
    return std::make_shared<const std::vector<Bounds>>(n, Bounds{0.0, 1.0});
}

/// Real-valued genome with shared box bounds.
struct DecisionVector {
    std::vector<double> values;
    BoundsPtr bounds;

    std::size_t size() const { return values.size(); }

    bool within_bounds(double tol = 0.0) const {
        if (!bounds || bounds->size() != values.size()) return false;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < (*bounds)[i].lower - tol || values[i] > (*bounds)[i].upper + tol)
                return false;
        }
        return true;
    }

    void clip_to_bounds() {
        for (std::size_t i = 0; i < values.size(); ++i) {
            const auto& b = (*bounds)[i];
            if (values[i] < b.lower) values[i] = b.lower;
            if (values[i] > b.upper) values[i] = b.upper;
        }
    }
};

/// Objective values under minimization convention.
using ObjectiveVector = std::vector<double>;

/// Genome plus (optionally evaluated) objectives.
struct Individual {
    DecisionVector genome;
    std::optional<ObjectiveVector> objectives;

    bool evaluated() const { return objectives.has_value(); }

    const ObjectiveVector& objs() const {
        if (!objectives) throw std::logic_error("Individual: objectives not evaluated");
        return *objectives;
    }
};

struct Population {
    std::vector<Individual> members;
    int generation_index = 0;

    std::size_t size() const { return members.size(); }
};

/// Non-dominated front partition. fronts[0] holds the mutually
/// non-dominated members; every member of fronts[k] (k >= 1) is dominated
/// by at least one member of fronts[k-1]. Indices ascend within a front.
struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts;
};

} // namespace evoq
