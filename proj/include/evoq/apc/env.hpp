#pragma once

#include "evoq/apc/actions.hpp"
#include "evoq/evolve.hpp"
#include "evoq/hypervolume.hpp"
#include "evoq/problems.hpp"
#include "evoq/refpoints.hpp"
#include "evoq/rng.hpp"
#include "evoq/variation.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace evoq::apc {

/// Seven normalized features summarizing optimizer progress: the agent's
/// observation. All components live in [0,1].
struct StateVector {
    double g_norm = 0.0;      // generation / episode length
    double stagnation = 0.0;  // stagnation counter / 10, clipped
    double o_mean = 0.0;      // mean normalized objective value, population-wide
    double o_min = 0.0;       // mean over objectives of normalized per-objective minima
    double sigma = 0.0;       // mean over objectives of normalized standard deviation
    double hv = 0.0;          // normalized hypervolume of the current first front
    double pareto_fill = 0.0; // |front 0| / N

    std::array<double, 7> as_array() const {
        return {g_norm, stagnation, o_mean, o_min, sigma, hv, pareto_fill};
    }
};

/// Population-derived slice of the state: o_mean, o_min, sigma and
/// pareto_fill computed against the given normalization envelope.
/// Degenerate objective ranges contribute zero.
struct PopulationSummary {
    double o_mean = 0.0;
    double o_min = 0.0;
    double sigma = 0.0;
    double pareto_fill = 0.0;
};

PopulationSummary summarize_population(const Population& pop, const ObjectiveVector& running_min,
                                       const ObjectiveVector& running_max);

/// Replay-buffer record.
struct Transition {
    StateVector state;
    int action = -1;
    double reward = 0.0;
    StateVector next_state;
    bool done = false;
};

struct EpisodeConfig {
    int generations = 200;
    int population_size = 20;
    std::string problem = "dtlz2";
    std::uint64_t seed = 1;
    std::optional<std::size_t> ref_divisions; // default: smallest p covering N
};

/// RL environment wrapping the evolutionary run: one generation per step,
/// mutation parameters from the decoded action, reward = normalized
/// hypervolume of the new first front. Objective features are normalized
/// by running per-objective min/max over every evaluation this episode;
/// the hypervolume uses the problem's calibrated box when available.
class ApcEnv {
public:
    struct StepResult {
        StateVector state;
        double reward = 0.0;
        bool done = false;
    };

    ApcEnv(const ProblemSpec& problem, const EpisodeConfig& config, std::uint64_t env_seed,
           bool track_archive = false);

    // the evaluation wrapper captures `this`
    ApcEnv(const ApcEnv&) = delete;
    ApcEnv& operator=(const ApcEnv&) = delete;

    StateVector reset();

    /// Applies the decoded mutation grid cell. Throws std::logic_error
    /// after the episode has finished.
    StepResult step(int action_index);

    /// Runs one generation under explicit parameters without any agent
    /// involvement (fixed-baseline mode; the trace logs action -1).
    StepResult step_with_params(const VariationParams& params);

    bool done() const { return generation_ >= config_.generations; }
    int generation() const { return generation_; }
    double episode_return() const { return return_; }
    const HvTrace& trace() const { return trace_; }
    const std::vector<int>& action_log() const { return action_log_; }
    const std::vector<int>& stagnation_log() const { return stagnation_log_; }
    const Population& population() const { return pop_; }

    /// Hypervolume of the episode's cumulative non-dominated archive
    /// (only maintained when track_archive was requested).
    const std::vector<double>& archive_hv_trace() const { return archive_hv_; }

    StateVector observe() const { return last_state_; }

private:
    StateVector compute_state() const;
    double front_hv() const;
    void absorb_evaluations(const Population& pop);
    StepResult advance(const VariationParams& params, int logged_action);

    ProblemSpec problem_;
    EpisodeConfig config_;
    ReferencePointSet refs_;
    Rng rng_;
    bool track_archive_ = false;

    Population pop_;
    int generation_ = 0;
    double return_ = 0.0;
    double best_hv_ = 0.0;
    int stagnation_ = 0;
    bool started_ = false;

    ObjectiveVector running_min_, running_max_; // over all evaluations this episode
    ObjectiveVector hv_ideal_;
    HvReferencePoint hv_ref_;

    StateVector last_state_;
    HvTrace trace_;
    std::vector<int> action_log_;
    std::vector<int> stagnation_log_;
    std::vector<ObjectiveVector> archive_; // non-dominated set over the episode
    std::vector<double> archive_hv_;
};

/// Maps a state (plus exploration rng) to an action index.
using Policy = std::function<int(const StateVector&, Rng&)>;

Policy random_policy();

struct EpisodeResult {
    double total_return = 0.0;
    HvTrace trace;
    std::vector<Transition> transitions;
    std::vector<int> actions;
    std::vector<int> stagnation; // per generation, clipped at 10
};

/// Full episode under a policy: seeded initial population, G steps,
/// per-generation trace and transitions recorded. The env and the policy
/// draw from independent streams derived from config.seed.
EpisodeResult run_episode(const Policy& policy, const ProblemSpec& problem,
                          const EpisodeConfig& config, bool track_archive = false);

/// Episode with constant variation parameters and no agent involvement.
EpisodeResult run_fixed_episode(const ProblemSpec& problem, const EpisodeConfig& config,
                                const VariationParams& params = VariationParams{},
                                bool track_archive = false);

// rng stream ids per episode seed
inline constexpr std::uint64_t kStreamEnv = 11;
inline constexpr std::uint64_t kStreamActions = 12;

} // namespace evoq::apc
