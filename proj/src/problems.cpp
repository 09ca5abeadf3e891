#include "evoq/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evoq {

namespace {

void check_unit_box(const std::vector<double>& x, std::size_t m) {
    if (x.size() < m)
        throw std::invalid_argument("dtlz: need at least m variables");
    for (double v : x)
        if (v < 0.0 || v > 1.0) throw std::domain_error("dtlz: gene outside [0,1]");
}

} // namespace

Individual ProblemSpec::make_individual(std::vector<double> genes) const {
    Individual ind;
    ind.genome.values = std::move(genes);
    ind.genome.bounds = bounds;
    return ind;
}

Individual& ProblemSpec::evaluate_in_place(Individual& ind) const {
    ind.objectives = evaluate(ind.genome.values);
    return ind;
}

ObjectiveVector dtlz2_eval(const std::vector<double>& x, std::size_t m) {
    check_unit_box(x, m);
    const std::size_t n = x.size();
    double g = 0.0;
    for (std::size_t i = m - 1; i < n; ++i) g += (x[i] - 0.5) * (x[i] - 0.5);

    const double half_pi = std::numbers::pi / 2.0;
    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 1.0 + g;
        for (std::size_t j = 0; j + i + 1 < m; ++j) v *= std::cos(x[j] * half_pi);
        if (i > 0) v *= std::sin(x[m - 1 - i] * half_pi);
        f[i] = v;
    }
    return f;
}

ObjectiveVector dtlz1_eval(const std::vector<double>& x, std::size_t m) {
    check_unit_box(x, m);
    const std::size_t n = x.size();
    const std::size_t k = n - m + 1;
    double g = static_cast<double>(k);
    for (std::size_t i = m - 1; i < n; ++i) {
        const double d = x[i] - 0.5;
        g += d * d - std::cos(20.0 * std::numbers::pi * d);
    }
    g *= 100.0;

    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 0.5 * (1.0 + g);
        for (std::size_t j = 0; j + i + 1 < m; ++j) v *= x[j];
        if (i > 0) v *= 1.0 - x[m - 1 - i];
        f[i] = v;
    }
    return f;
}

namespace {

ProblemSpec make_dtlz(std::string name, std::size_t n_vars, std::size_t m,
                      ObjectiveVector nadir,
                      ObjectiveVector (*eval)(const std::vector<double>&, std::size_t)) {
    if (m < 2) throw std::invalid_argument("dtlz: m must be >= 2");
    if (n_vars < m) throw std::invalid_argument("dtlz: n_vars must be >= m");
    ProblemSpec spec;
    spec.name = std::move(name);
    spec.n_vars = n_vars;
    spec.n_objectives = m;
    spec.bounds = make_unit_bounds(n_vars);
    spec.evaluate = [eval, m](const std::vector<double>& x) { return eval(x, m); };
    spec.known_ideal = ObjectiveVector(m, 0.0);
    spec.known_nadir = nadir;
    HvReferencePoint ref;
    ref.coords.resize(m);
    for (std::size_t j = 0; j < m; ++j) ref.coords[j] = nadir[j] * 1.1; // 10% margin
    spec.hv_reference = std::move(ref);
    return spec;
}

} // namespace

ProblemSpec make_dtlz1(std::size_t n_vars, std::size_t m) {
    return make_dtlz("dtlz1", n_vars, m, ObjectiveVector(m, 0.5), dtlz1_eval);
}

ProblemSpec make_dtlz2(std::size_t n_vars, std::size_t m) {
    return make_dtlz("dtlz2", n_vars, m, ObjectiveVector(m, 1.0), dtlz2_eval);
}

} // namespace evoq
