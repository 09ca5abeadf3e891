#pragma once

#include "evoq/apc/env.hpp"
#include "evoq/dqn/network.hpp"
#include "evoq/dqn/replay.hpp"
#include "evoq/problems.hpp"

#include <optional>
#include <vector>

namespace evoq::dqn {

struct AgentConfig {
    double gamma = 1.0;              // episodic finite-horizon return
    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    double epsilon_anneal_frac = 0.5; // fraction of total env steps to anneal over
    double learning_rate = 1e-3;
    std::size_t batch_size = 64;
    std::size_t buffer_capacity = 50000;
    std::size_t warmup_transitions = 1000; // buffer size before training starts
    int target_sync_period = 100;          // training steps between hard syncs
    std::vector<std::size_t> hidden = {64, 64};
    bool double_q = false; // decouple argmax (online) from evaluation (target)

    void validate() const;
};

/// Epsilon-greedy action: with probability epsilon uniform over the grid,
/// otherwise argmax Q with lowest-index tie-break.
int act(const MLPParams& params, const apc::StateVector& state, double epsilon, Rng& rng);

/// TD targets: y = r for terminal transitions, else
/// y = r + gamma * max_a Q_target(s', a) (double-Q variant evaluates the
/// online argmax under the target network).
std::vector<double> td_targets(const std::vector<apc::Transition>& batch,
                               const MLPParams& target_params, double gamma);
std::vector<double> td_targets_double(const std::vector<apc::Transition>& batch,
                                      const MLPParams& online_params,
                                      const MLPParams& target_params, double gamma);

/// One minibatch update; returns the pre-update loss, or nullopt (skip)
/// while the buffer holds fewer than batch_size transitions.
std::optional<double> train_step(MLPParams& params, const MLPParams& target_params,
                                 AdamState& opt, const ReplayBuffer& buffer,
                                 const AgentConfig& config, Rng& rng);

/// Hard copy of the online weights onto the target network.
void sync_target(const MLPParams& params, MLPParams& target_params);

struct EpisodeStats {
    int episode = 0;
    double total_return = 0.0;
    double epsilon = 0.0;
    double mean_loss = 0.0;
};

struct TrainResult {
    MLPParams params;
    std::vector<EpisodeStats> curve;
};

/// Interleaved training: one env step, one buffered transition, one
/// gradient step once the buffer is warm; epsilon anneals linearly over
/// the first epsilon_anneal_frac of all env steps; the target net hard-
/// syncs every target_sync_period training steps. Fully deterministic
/// under the seed.
TrainResult train_agent(const ProblemSpec& problem, const apc::EpisodeConfig& episode_config,
                        const AgentConfig& agent_config, int episodes, std::uint64_t seed);

/// Greedy policy backed by trained parameters (epsilon = 0).
apc::Policy greedy_policy(MLPParams params);

/// Exploration schedule: linear from epsilon_start to epsilon_end over the
/// first anneal_frac of total steps, constant afterwards.
double epsilon_at(const AgentConfig& config, std::size_t env_step, std::size_t total_steps);

// rng stream ids for training
inline constexpr std::uint64_t kStreamNetInit = 21;
inline constexpr std::uint64_t kStreamReplay = 22;
inline constexpr std::uint64_t kStreamEpisode = 23;

} // namespace evoq::dqn
