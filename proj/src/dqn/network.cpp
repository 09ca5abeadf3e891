#include "evoq/dqn/network.hpp"

#include <cmath>
#include <stdexcept>

namespace evoq::dqn {

namespace {

constexpr std::size_t K = apc::kActionCount;

struct TrunkCache {
    // h[0] is the input; h[l+1] = relu(W_l h[l] + b_l); z holds pre-activations
    std::vector<std::vector<double>> h;
    std::vector<std::vector<double>> z;
};

std::vector<double> trunk_forward(const MLPParams& p, const std::array<double, kStateDim>& input,
                                  TrunkCache* cache) {
    std::vector<double> h(input.begin(), input.end());
    if (cache) cache->h.push_back(h);
    for (std::size_t l = 0; l + 1 < p.layer_sizes.size(); ++l) {
        const std::size_t in = p.layer_sizes[l];
        const std::size_t out = p.layer_sizes[l + 1];
        std::vector<double> z(out);
        for (std::size_t r = 0; r < out; ++r) {
            double acc = p.trunk_b[l][r];
            const double* row = &p.trunk_w[l][r * in];
            for (std::size_t c = 0; c < in; ++c) acc += row[c] * h[c];
            z[r] = acc;
        }
        if (cache) cache->z.push_back(z);
        for (auto& v : z) v = v > 0.0 ? v : 0.0;
        h = std::move(z);
        if (cache) cache->h.push_back(h);
    }
    return h;
}

ForwardResult heads_forward(const MLPParams& p, const std::vector<double>& trunk) {
    const std::size_t t = p.trunk_out();
    ForwardResult r;
    r.v = p.value_b[0];
    for (std::size_t c = 0; c < t; ++c) r.v += p.value_w[c] * trunk[c];
    double mean_a = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        double acc = p.adv_b[k];
        const double* row = &p.adv_w[k * t];
        for (std::size_t c = 0; c < t; ++c) acc += row[c] * trunk[c];
        r.a[k] = acc;
        mean_a += acc;
    }
    mean_a /= static_cast<double>(K);
    for (std::size_t k = 0; k < K; ++k) r.q[k] = r.v + r.a[k] - mean_a;
    return r;
}

} // namespace

MLPParams MLPParams::init(const std::vector<std::size_t>& hidden, Rng& rng) {
    if (hidden.empty()) throw std::invalid_argument("MLPParams: need at least one hidden layer");
    MLPParams p;
    p.layer_sizes.push_back(kStateDim);
    for (std::size_t h : hidden) {
        if (h == 0) throw std::invalid_argument("MLPParams: zero-width layer");
        p.layer_sizes.push_back(h);
    }
    auto uniform_block = [&rng](std::size_t n, double limit) {
        std::vector<double> block(n);
        for (auto& v : block) v = rng.uniform(-limit, limit);
        return block;
    };
    for (std::size_t l = 0; l + 1 < p.layer_sizes.size(); ++l) {
        const std::size_t in = p.layer_sizes[l];
        const std::size_t out = p.layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(in));
        p.trunk_w.push_back(uniform_block(in * out, limit));
        p.trunk_b.push_back(std::vector<double>(out, 0.0));
    }
    const std::size_t t = p.trunk_out();
    const double head_limit = std::sqrt(6.0 / static_cast<double>(t));
    p.value_w = uniform_block(t, head_limit);
    p.value_b = {0.0};
    p.adv_w = uniform_block(K * t, head_limit);
    p.adv_b = std::vector<double>(K, 0.0);
    return p;
}

std::vector<std::vector<double>*> MLPParams::blocks() {
    std::vector<std::vector<double>*> out;
    for (auto& w : trunk_w) out.push_back(&w);
    for (auto& b : trunk_b) out.push_back(&b);
    out.push_back(&value_w);
    out.push_back(&value_b);
    out.push_back(&adv_w);
    out.push_back(&adv_b);
    return out;
}

std::vector<const std::vector<double>*> MLPParams::blocks() const {
    std::vector<const std::vector<double>*> out;
    for (const auto& w : trunk_w) out.push_back(&w);
    for (const auto& b : trunk_b) out.push_back(&b);
    out.push_back(&value_w);
    out.push_back(&value_b);
    out.push_back(&adv_w);
    out.push_back(&adv_b);
    return out;
}

bool MLPParams::same_shape(const MLPParams& other) const {
    if (layer_sizes != other.layer_sizes) return false;
    auto a = blocks();
    auto b = other.blocks();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]->size() != b[i]->size()) return false;
    return true;
}

ParamMirror ParamMirror::zeros_like(const MLPParams& params) {
    ParamMirror m;
    for (const auto* block : params.blocks()) m.blocks.emplace_back(block->size(), 0.0);
    return m;
}

ForwardResult forward(const MLPParams& params, const apc::StateVector& state) {
    const auto input = state.as_array();
    for (double v : input)
        if (!std::isfinite(v)) throw std::invalid_argument("forward: non-finite state feature");
    return heads_forward(params, trunk_forward(params, input, nullptr));
}

double td_loss(const MLPParams& params, const std::vector<QSample>& batch) {
    if (batch.empty()) throw std::invalid_argument("td_loss: empty batch");
    double loss = 0.0;
    for (const auto& s : batch) {
        const auto out = forward(params, s.state);
        const double e = out.q[static_cast<std::size_t>(s.action)] - s.target;
        loss += e * e;
    }
    return loss / static_cast<double>(batch.size());
}

double td_loss_gradient(const MLPParams& params, const std::vector<QSample>& batch,
                        ParamMirror& grad) {
    if (batch.empty()) throw std::invalid_argument("td_loss_gradient: empty batch");
    grad = ParamMirror::zeros_like(params);

    const std::size_t n_layers = params.trunk_w.size();
    const std::size_t t = params.trunk_out();
    // block layout: [0..L) trunk_w, [L..2L) trunk_b, 2L value_w, 2L+1 value_b,
    // 2L+2 adv_w, 2L+3 adv_b
    auto& g_value_w = grad.blocks[2 * n_layers];
    auto& g_value_b = grad.blocks[2 * n_layers + 1];
    auto& g_adv_w = grad.blocks[2 * n_layers + 2];
    auto& g_adv_b = grad.blocks[2 * n_layers + 3];

    double loss = 0.0;
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (const auto& sample : batch) {
        TrunkCache cache;
        const auto input = sample.state.as_array();
        const auto trunk = trunk_forward(params, input, &cache);
        const auto out = heads_forward(params, trunk);

        const auto a_idx = static_cast<std::size_t>(sample.action);
        const double err = out.q[a_idx] - sample.target;
        loss += err * err;

        const double g_q = 2.0 * err * inv_b;

        // value head: dQ_a/dV = 1
        std::vector<double> d_trunk(t, 0.0);
        g_value_b[0] += g_q;
        for (std::size_t c = 0; c < t; ++c) {
            g_value_w[c] += g_q * trunk[c];
            d_trunk[c] += g_q * params.value_w[c];
        }
        // advantage head: dQ_a/dA_k = [k == a] - 1/K
        for (std::size_t k = 0; k < K; ++k) {
            const double g_a = g_q * ((k == a_idx ? 1.0 : 0.0) - 1.0 / static_cast<double>(K));
            g_adv_b[k] += g_a;
            const double* row = &params.adv_w[k * t];
            double* g_row = &g_adv_w[k * t];
            for (std::size_t c = 0; c < t; ++c) {
                g_row[c] += g_a * trunk[c];
                d_trunk[c] += g_a * row[c];
            }
        }
        // trunk: rectifier backprop
        std::vector<double> d_h = std::move(d_trunk);
        for (std::size_t l = n_layers; l-- > 0;) {
            const std::size_t in = params.layer_sizes[l];
            const std::size_t out_dim = params.layer_sizes[l + 1];
            std::vector<double> dz(out_dim);
            for (std::size_t r = 0; r < out_dim; ++r)
                dz[r] = cache.z[l][r] > 0.0 ? d_h[r] : 0.0;
            auto& g_w = grad.blocks[l];
            auto& g_b = grad.blocks[n_layers + l];
            const auto& h_prev = cache.h[l];
            std::vector<double> d_prev(in, 0.0);
            for (std::size_t r = 0; r < out_dim; ++r) {
                g_b[r] += dz[r];
                const double* row = &params.trunk_w[l][r * in];
                double* g_row = &g_w[r * in];
                for (std::size_t c = 0; c < in; ++c) {
                    g_row[c] += dz[r] * h_prev[c];
                    d_prev[c] += dz[r] * row[c];
                }
            }
            d_h = std::move(d_prev);
        }
    }
    return loss * inv_b;
}

AdamState AdamState::for_params(const MLPParams& params, double lr_) {
    AdamState s;
    s.lr = lr_;
    s.m = ParamMirror::zeros_like(params);
    s.v = ParamMirror::zeros_like(params);
    return s;
}

void AdamState::apply(MLPParams& params, const ParamMirror& grad) {
    ++step;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
    auto blocks = params.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto& p = *blocks[b];
        const auto& g = grad.blocks[b];
        auto& mb = m.blocks[b];
        auto& vb = v.blocks[b];
        for (std::size_t i = 0; i < p.size(); ++i) {
            mb[i] = beta1 * mb[i] + (1.0 - beta1) * g[i];
            vb[i] = beta2 * vb[i] + (1.0 - beta2) * g[i] * g[i];
            const double m_hat = mb[i] / bc1;
            const double v_hat = vb[i] / bc2;
            p[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
        }
    }
}

} // namespace evoq::dqn
