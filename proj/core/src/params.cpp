#include "vbs/params.hpp"

#include <cmath>

#include "vbs/errors.hpp"

namespace vbs {

LDParam::LDParam(double eta) : eta_(eta) {
    if (!std::isfinite(eta) || eta < 0.0)
        throw InvalidArgument("Lamb-Dicke parameter must be finite and >= 0, got " + std::to_string(eta));
}

void TrapParams::validate() const {
    if (!std::isfinite(omega_t) || omega_t <= 0.0)
        throw InvalidArgument("trap frequency must be finite and > 0");
    if (!std::isfinite(rabi) || rabi < 0.0)
        throw InvalidArgument("Rabi frequency must be finite and >= 0");
    if (!std::isfinite(delta))
        throw InvalidArgument("detuning must be finite");
}

void validate(SidebandId sideband) {
    if (sideband.n_g < 0 || sideband.n_e < 0)
        throw InvalidArgument("vibrational quantum numbers must be >= 0");
}

std::string to_string(SidebandKind kind) {
    switch (kind) {
        case SidebandKind::carrier: return "carrier";
        case SidebandKind::blue: return "blue";
        case SidebandKind::red: return "red";
    }
    return "unknown";
}

std::string to_string(Internal state) {
    return state == Internal::g ? "g" : "e";
}

}  // namespace vbs
