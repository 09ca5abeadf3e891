#include "evoq/dqn/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evoq::dqn {

void AgentConfig::validate() const {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("AgentConfig: gamma outside [0,1]");
    if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 || epsilon_end > 1.0)
        throw std::invalid_argument("AgentConfig: epsilon outside [0,1]");
    if (epsilon_anneal_frac <= 0.0 || epsilon_anneal_frac > 1.0)
        throw std::invalid_argument("AgentConfig: anneal fraction outside (0,1]");
    if (batch_size == 0 || buffer_capacity == 0)
        throw std::invalid_argument("AgentConfig: zero batch or buffer size");
    if (target_sync_period < 1) throw std::invalid_argument("AgentConfig: sync period < 1");
    if (hidden.empty()) throw std::invalid_argument("AgentConfig: no hidden layers");
}

int act(const MLPParams& params, const apc::StateVector& state, double epsilon, Rng& rng) {
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("act: epsilon outside [0,1]");
    if (epsilon > 0.0 && rng.uniform() < epsilon)
        return static_cast<int>(rng.uniform_index(apc::kActionCount));
    const auto out = forward(params, state);
    int best = 0;
    for (int k = 1; k < apc::kActionCount; ++k)
        if (out.q[static_cast<std::size_t>(k)] > out.q[static_cast<std::size_t>(best)]) best = k;
    return best;
}

std::vector<double> td_targets(const std::vector<apc::Transition>& batch,
                               const MLPParams& target_params, double gamma) {
    if (batch.empty()) throw std::invalid_argument("td_targets: empty batch");
    std::vector<double> ys;
    ys.reserve(batch.size());
    for (const auto& t : batch) {
        double y = t.reward;
        if (!t.done && gamma > 0.0) {
            const auto out = forward(target_params, t.next_state);
            y += gamma * *std::max_element(out.q.begin(), out.q.end());
        }
        ys.push_back(y);
    }
    return ys;
}

std::vector<double> td_targets_double(const std::vector<apc::Transition>& batch,
                                      const MLPParams& online_params,
                                      const MLPParams& target_params, double gamma) {
    if (batch.empty()) throw std::invalid_argument("td_targets_double: empty batch");
    std::vector<double> ys;
    ys.reserve(batch.size());
    for (const auto& t : batch) {
        double y = t.reward;
        if (!t.done && gamma > 0.0) {
            const auto online = forward(online_params, t.next_state);
            std::size_t best = 0;
            for (std::size_t k = 1; k < online.q.size(); ++k)
                if (online.q[k] > online.q[best]) best = k;
            const auto target = forward(target_params, t.next_state);
            y += gamma * target.q[best];
        }
        ys.push_back(y);
    }
    return ys;
}

std::optional<double> train_step(MLPParams& params, const MLPParams& target_params,
                                 AdamState& opt, const ReplayBuffer& buffer,
                                 const AgentConfig& config, Rng& rng) {
    if (buffer.size() < config.batch_size) return std::nullopt;
    const auto batch = buffer.sample(config.batch_size, rng);
    const auto ys = config.double_q ? td_targets_double(batch, params, target_params, config.gamma)
                                    : td_targets(batch, target_params, config.gamma);
    std::vector<QSample> samples;
    samples.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i)
        samples.push_back(QSample{batch[i].state, batch[i].action, ys[i]});

    ParamMirror grad;
    const double loss = td_loss_gradient(params, samples, grad);
    opt.apply(params, grad);
    return loss;
}

void sync_target(const MLPParams& params, MLPParams& target_params) {
    if (!params.same_shape(target_params))
        throw std::invalid_argument("sync_target: shape mismatch");
    target_params = params;
}

double epsilon_at(const AgentConfig& config, std::size_t env_step, std::size_t total_steps) {
    const double anneal_steps =
        std::max(1.0, config.epsilon_anneal_frac * static_cast<double>(total_steps));
    const double frac = std::min(1.0, static_cast<double>(env_step) / anneal_steps);
    return config.epsilon_start + (config.epsilon_end - config.epsilon_start) * frac;
}

TrainResult train_agent(const ProblemSpec& problem, const apc::EpisodeConfig& episode_config,
                        const AgentConfig& agent_config, int episodes, std::uint64_t seed) {
    agent_config.validate();
    if (episodes < 1) throw std::invalid_argument("train_agent: episodes must be >= 1");

    Rng net_rng(mix_seed(seed, kStreamNetInit));
    Rng replay_rng(mix_seed(seed, kStreamReplay));
    MLPParams params = MLPParams::init(agent_config.hidden, net_rng);
    MLPParams target = params;
    AdamState opt = AdamState::for_params(params, agent_config.learning_rate);
    ReplayBuffer buffer(agent_config.buffer_capacity);

    const std::size_t total_steps = static_cast<std::size_t>(episodes) *
                                    static_cast<std::size_t>(episode_config.generations);
    std::size_t env_step = 0;
    long train_steps = 0;

    TrainResult result;
    for (int ep = 0; ep < episodes; ++ep) {
        const std::uint64_t ep_seed = mix_seed(seed, kStreamEpisode + static_cast<std::uint64_t>(ep));
        apc::ApcEnv env(problem, episode_config, mix_seed(ep_seed, apc::kStreamEnv));
        Rng action_rng(mix_seed(ep_seed, apc::kStreamActions));

        apc::StateVector state = env.reset();
        double loss_sum = 0.0;
        long loss_count = 0;
        double epsilon = epsilon_at(agent_config, env_step, total_steps);
        while (!env.done()) {
            epsilon = epsilon_at(agent_config, env_step, total_steps);
            const int action = act(params, state, epsilon, action_rng);
            const auto step = env.step(action);
            buffer.push(apc::Transition{state, action, step.reward, step.state, step.done});
            state = step.state;
            ++env_step;

            if (buffer.size() >= agent_config.warmup_transitions) {
                const auto loss = train_step(params, target, opt, buffer, agent_config, replay_rng);
                if (loss) {
                    loss_sum += *loss;
                    ++loss_count;
                    if (++train_steps % agent_config.target_sync_period == 0)
                        sync_target(params, target);
                }
            }
        }

        EpisodeStats stats;
        stats.episode = ep;
        stats.total_return = env.episode_return();
        stats.epsilon = epsilon;
        stats.mean_loss = loss_count > 0 ? loss_sum / static_cast<double>(loss_count) : 0.0;
        result.curve.push_back(stats);
    }
    result.params = std::move(params);
    return result;
}

apc::Policy greedy_policy(MLPParams params) {
    return [params = std::move(params)](const apc::StateVector& state, Rng& rng) {
        return act(params, state, 0.0, rng);
    };
}

} // namespace evoq::dqn
