#pragma once

#include "evoq/apc/actions.hpp"
#include "evoq/apc/env.hpp"
#include "evoq/rng.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace evoq::dqn {

inline constexpr std::size_t kStateDim = 7;

/// Weights of the dueling Q-network: a shared rectifier trunk feeding a
/// scalar state-value head and a 15-wide advantage head, both linear.
/// Q_a = V + (A_a - mean(A)).
struct MLPParams {
    std::vector<std::size_t> layer_sizes;    // {7, hidden..., trunk_out}
    std::vector<std::vector<double>> trunk_w; // [layer][out * in], row-major
    std::vector<std::vector<double>> trunk_b; // [layer][out]
    std::vector<double> value_w;              // [trunk_out]
    std::vector<double> value_b;              // [1]
    std::vector<double> adv_w;                // [15 * trunk_out]
    std::vector<double> adv_b;                // [15]

    static MLPParams init(const std::vector<std::size_t>& hidden, Rng& rng);

    std::size_t trunk_out() const { return layer_sizes.back(); }

    /// All parameter blocks in a fixed order (trunk weights and biases,
    /// then the two heads); gradient and optimizer state mirror this.
    std::vector<std::vector<double>*> blocks();
    std::vector<const std::vector<double>*> blocks() const;

    bool same_shape(const MLPParams& other) const;
};

/// Gradient (or any other per-parameter) mirror of MLPParams.
struct ParamMirror {
    std::vector<std::vector<double>> blocks;

    static ParamMirror zeros_like(const MLPParams& params);
};

struct ForwardResult {
    double v = 0.0;
    std::array<double, apc::kActionCount> a{};
    std::array<double, apc::kActionCount> q{};
};

/// Deterministic forward pass. Throws std::invalid_argument on non-finite
/// input.
ForwardResult forward(const MLPParams& params, const apc::StateVector& state);

/// One training example for the TD regression.
struct QSample {
    apc::StateVector state;
    int action = 0;
    double target = 0.0;
};

/// Mean squared TD error over the batch: mean_i (Q_{a_i}(s_i) - y_i)^2.
double td_loss(const MLPParams& params, const std::vector<QSample>& batch);

/// Loss plus its gradient via backpropagation through both heads and the
/// mean-centred aggregation.
double td_loss_gradient(const MLPParams& params, const std::vector<QSample>& batch,
                        ParamMirror& grad);

/// Adaptive-moment-estimation update state.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    ParamMirror m, v;

    static AdamState for_params(const MLPParams& params, double lr);
    void apply(MLPParams& params, const ParamMirror& grad);
};

} // namespace evoq::dqn
