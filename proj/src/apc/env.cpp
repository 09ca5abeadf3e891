#include "evoq/apc/env.hpp"

#include "evoq/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evoq::apc {

namespace {

constexpr double kStagnationEps = 1e-6;
constexpr int kStagnationClip = 10;

} // namespace

ApcEnv::ApcEnv(const ProblemSpec& problem, const EpisodeConfig& config, std::uint64_t env_seed,
               bool track_archive)
    : problem_(problem), config_(config), rng_(env_seed), track_archive_(track_archive) {
    if (config_.generations < 1) throw std::invalid_argument("ApcEnv: generations must be >= 1");
    if (config_.population_size < 4)
        throw std::invalid_argument("ApcEnv: population size must be >= 4");

    const std::size_t p = config_.ref_divisions
                              ? *config_.ref_divisions
                              : das_dennis_divisions_for(
                                    problem_.n_objectives,
                                    static_cast<std::size_t>(config_.population_size));
    refs_ = das_dennis_points(problem_.n_objectives, p);

    // every evaluation funnels through this wrapper so the running
    // normalization bounds cover discarded children as well
    auto inner = problem_.evaluate;
    problem_.evaluate = [this, inner](const std::vector<double>& genes) {
        ObjectiveVector f = inner(genes);
        for (std::size_t j = 0; j < f.size(); ++j) {
            running_min_[j] = std::min(running_min_[j], f[j]);
            running_max_[j] = std::max(running_max_[j], f[j]);
        }
        return f;
    };

    running_min_.assign(problem_.n_objectives, std::numeric_limits<double>::infinity());
    running_max_.assign(problem_.n_objectives, -std::numeric_limits<double>::infinity());

    trace_.reference = problem_.hv_reference ? *problem_.hv_reference
                                             : HvReferencePoint{ObjectiveVector(
                                                   problem_.n_objectives, 1.0)};
}

StateVector ApcEnv::reset() {
    running_min_.assign(problem_.n_objectives, std::numeric_limits<double>::infinity());
    running_max_.assign(problem_.n_objectives, -std::numeric_limits<double>::infinity());
    pop_ = initial_population(problem_, static_cast<std::size_t>(config_.population_size), rng_);
    generation_ = 0;
    return_ = 0.0;
    stagnation_ = 0;
    started_ = true;
    trace_.per_generation_hv.clear();
    action_log_.clear();
    stagnation_log_.clear();
    archive_.clear();
    archive_hv_.clear();

    best_hv_ = front_hv();
    if (track_archive_) {
        absorb_evaluations(pop_);
        archive_hv_.push_back(normalized_hv(
            archive_, problem_.known_ideal ? *problem_.known_ideal : running_min_,
            problem_.hv_reference ? *problem_.hv_reference
                                  : HvReferencePoint{running_max_}));
    }
    last_state_ = compute_state();
    return last_state_;
}

double ApcEnv::front_hv() const {
    const auto partition = non_dominated_sort(pop_);
    std::vector<ObjectiveVector> front;
    front.reserve(partition.fronts[0].size());
    for (std::size_t idx : partition.fronts[0]) front.push_back(pop_.members[idx].objs());

    if (problem_.known_ideal && problem_.hv_reference)
        return normalized_hv(front, *problem_.known_ideal, *problem_.hv_reference);
    // no metadata: bound by the running envelope of this episode
    return normalized_hv(front, running_min_, HvReferencePoint{running_max_});
}

void ApcEnv::absorb_evaluations(const Population& pop) {
    for (const auto& ind : pop.members) {
        const auto& f = ind.objs();
        bool dominated = false;
        for (const auto& a : archive_) {
            if (dominates(a, f) || a == f) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::erase_if(archive_, [&](const ObjectiveVector& a) { return dominates(f, a); });
        archive_.push_back(f);
    }
}

ApcEnv::StepResult ApcEnv::step(int action_index) {
    const ApcAction action = decode_action(action_index);
    VariationParams params;
    params.eta_plm = action.eta_plm;
    params.indpb = action.indpb;
    return advance(params, action_index);
}

ApcEnv::StepResult ApcEnv::step_with_params(const VariationParams& params) {
    return advance(params, -1);
}

ApcEnv::StepResult ApcEnv::advance(const VariationParams& params, int logged_action) {
    if (!started_) throw std::logic_error("ApcEnv: step before reset");
    if (done()) throw std::logic_error("ApcEnv: step after episode end");

    pop_ = evolve_generation(pop_, problem_, params, refs_, rng_);
    ++generation_;

    const double hv = front_hv();
    if (hv > best_hv_ + kStagnationEps) {
        best_hv_ = hv;
        stagnation_ = 0;
    } else {
        stagnation_ = std::min(stagnation_ + 1, kStagnationClip);
    }

    return_ += hv;
    trace_.per_generation_hv.push_back(hv);
    action_log_.push_back(logged_action);
    stagnation_log_.push_back(stagnation_);
    if (track_archive_) {
        absorb_evaluations(pop_);
        archive_hv_.push_back(normalized_hv(
            archive_, problem_.known_ideal ? *problem_.known_ideal : running_min_,
            problem_.hv_reference ? *problem_.hv_reference
                                  : HvReferencePoint{running_max_}));
    }

    last_state_ = compute_state();
    StepResult out;
    out.state = last_state_;
    out.reward = hv;
    out.done = done();
    return out;
}

PopulationSummary summarize_population(const Population& pop, const ObjectiveVector& running_min,
                                       const ObjectiveVector& running_max) {
    const std::size_t m = running_min.size();
    const std::size_t n = pop.size();

    PopulationSummary s;
    double mean_total = 0.0, min_total = 0.0, sigma_total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double range = running_max[j] - running_min[j];
        if (!(range > 0.0)) continue; // degenerate: contributes zero
        double sum = 0.0, sum_sq = 0.0;
        double lowest = std::numeric_limits<double>::infinity();
        double highest = -std::numeric_limits<double>::infinity();
        for (const auto& ind : pop.members) {
            const double v = (ind.objs()[j] - running_min[j]) / range;
            sum += v;
            sum_sq += v * v;
            lowest = std::min(lowest, v);
            highest = std::max(highest, v);
        }
        const double mean = sum / static_cast<double>(n);
        // identical values yield exactly zero spread, no rounding residue
        const double var = highest == lowest
                               ? 0.0
                               : std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
        mean_total += mean;
        min_total += lowest;
        sigma_total += std::sqrt(var);
    }
    s.o_mean = mean_total / static_cast<double>(m);
    s.o_min = min_total / static_cast<double>(m);
    s.sigma = sigma_total / static_cast<double>(m);

    const auto partition = non_dominated_sort(pop);
    s.pareto_fill = static_cast<double>(partition.fronts[0].size()) / static_cast<double>(n);
    return s;
}

StateVector ApcEnv::compute_state() const {
    StateVector s;
    s.g_norm = static_cast<double>(generation_) / static_cast<double>(config_.generations);
    s.stagnation = static_cast<double>(stagnation_) / static_cast<double>(kStagnationClip);

    const PopulationSummary summary = summarize_population(pop_, running_min_, running_max_);
    s.o_mean = summary.o_mean;
    s.o_min = summary.o_min;
    s.sigma = summary.sigma;
    s.pareto_fill = summary.pareto_fill;

    s.hv = trace_.per_generation_hv.empty() ? best_hv_ : trace_.per_generation_hv.back();
    return s;
}

Policy random_policy() {
    return [](const StateVector&, Rng& rng) {
        return static_cast<int>(rng.uniform_index(kActionCount));
    };
}

EpisodeResult run_episode(const Policy& policy, const ProblemSpec& problem,
                          const EpisodeConfig& config, bool track_archive) {
    ApcEnv env(problem, config, mix_seed(config.seed, kStreamEnv), track_archive);
    Rng action_rng(mix_seed(config.seed, kStreamActions));

    EpisodeResult result;
    StateVector state = env.reset();
    for (int g = 0; g < config.generations; ++g) {
        const int action = policy(state, action_rng);
        const auto step = env.step(action);
        result.transitions.push_back(Transition{state, action, step.reward, step.state, step.done});
        result.actions.push_back(action);
        state = step.state;
    }
    result.total_return = env.episode_return();
    result.trace = env.trace();
    result.stagnation = env.stagnation_log();
    return result;
}

EpisodeResult run_fixed_episode(const ProblemSpec& problem, const EpisodeConfig& config,
                                const VariationParams& params, bool track_archive) {
    ApcEnv env(problem, config, mix_seed(config.seed, kStreamEnv), track_archive);
    env.reset();
    EpisodeResult result;
    for (int g = 0; g < config.generations; ++g) {
        env.step_with_params(params);
        result.actions.push_back(-1);
    }
    result.total_return = env.episode_return();
    result.trace = env.trace();
    result.stagnation = env.stagnation_log();
    return result;
}

} // namespace evoq::apc
