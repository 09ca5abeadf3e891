#include "evoq/apc/actions.hpp"

#include <stdexcept>

namespace evoq::apc {

ApcAction decode_action(int index) {
    if (index < 0 || index >= kActionCount)
        throw std::invalid_argument("decode_action: index outside [0,15)");
    ApcAction a;
    a.index = index;
    a.eta_plm = kEtaGrid[static_cast<std::size_t>(index / 3)];
    a.indpb = kIndpbGrid[static_cast<std::size_t>(index % 3)];
    return a;
}

} // namespace evoq::apc
