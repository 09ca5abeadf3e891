#pragma once

#include <array>

namespace evoq::apc {

inline constexpr int kActionCount = 15;
inline constexpr std::array<double, 5> kEtaGrid = {1.0, 5.0, 10.0, 20.0, 40.0};
inline constexpr std::array<double, 3> kIndpbGrid = {0.01, 0.05, 0.10};

/// One cell of the mutation-control grid.
struct ApcAction {
    int index = 0;
    double eta_plm = 0.0;
    double indpb = 0.0;
};

/// Row-major bijection over eta x indpb: index = eta_row * 3 + indpb_col.
/// Lower eta / higher indpb means more radical mutation. Throws
/// std::invalid_argument outside [0, 15).
ApcAction decode_action(int index);

} // namespace evoq::apc
