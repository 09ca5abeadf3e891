#include "evoq/dqn/replay.hpp"

#include <stdexcept>

namespace evoq::dqn {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ReplayBuffer: zero capacity");
    data_.reserve(capacity);
}

void ReplayBuffer::push(apc::Transition t) {
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[next_] = std::move(t); // overwrite the oldest slot
    }
    next_ = (next_ + 1) % capacity_;
    ++inserted_;
}

std::vector<apc::Transition> ReplayBuffer::sample(std::size_t count, Rng& rng) const {
    if (count > data_.size())
        throw std::invalid_argument("ReplayBuffer: sample larger than buffer");
    // partial Fisher-Yates over an index vector: without replacement
    std::vector<std::size_t> idx(data_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<apc::Transition> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t j = k + rng.uniform_index(idx.size() - k);
        std::swap(idx[k], idx[j]);
        out.push_back(data_[idx[k]]);
    }
    return out;
}

} // namespace evoq::dqn
