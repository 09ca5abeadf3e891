#pragma once

#include "evoq/dqn/network.hpp"

#include <filesystem>

namespace evoq::dqn {

/// Versioned plain-text policy format: a header carrying the format and
/// state-schema versions, activation tag, layer shapes and action count,
/// followed by the parameter blocks in fixed order with full decimal
/// precision. A load/save round trip is byte-identical.
void save_policy(const MLPParams& params, const std::filesystem::path& file);

/// Throws std::runtime_error with a diagnostic on missing files, version
/// or schema mismatches, shape inconsistencies and truncation.
MLPParams load_policy(const std::filesystem::path& file);

} // namespace evoq::dqn
