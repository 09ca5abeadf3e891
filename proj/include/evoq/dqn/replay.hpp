#pragma once

#include "evoq/apc/env.hpp"
#include "evoq/rng.hpp"

#include <cstddef>
#include <vector>

namespace evoq::dqn {

/// Fixed-capacity ring buffer of transitions with oldest-first eviction.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(apc::Transition t);

    /// Uniform sample of `count` distinct transitions; throws
    /// std::invalid_argument when count exceeds the current size.
    std::vector<apc::Transition> sample(std::size_t count, Rng& rng) const;

    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t inserted() const { return inserted_; }

    const apc::Transition& at(std::size_t i) const { return data_[i]; }

private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::size_t inserted_ = 0;
    std::vector<apc::Transition> data_;
};

} // namespace evoq::dqn
