#pragma once

#include <string>

namespace vbs {

/// Lamb-Dicke parameter: laser wavenumber times the ground-state extent of the trap.
/// Always finite and non-negative; eta = 0 is the decoupled limit.
class LDParam {
public:
    LDParam() = default;
    explicit LDParam(double eta);

    double value() const noexcept { return eta_; }
    double squared() const noexcept { return eta_ * eta_; }

    friend bool operator==(LDParam, LDParam) = default;

private:
    double eta_ = 0.0;
};

/// Problem definition in a consistent unit system (hbar = 1).
///
/// The library works with omega_t = 1 throughout; the CLI converts physical
/// inputs before calling in.  `delta` is the laser detuning omega_L - omega_0.
struct TrapParams {
    double omega_t = 1.0;
    double rabi = 0.0;
    LDParam eta{};
    double delta = 0.0;

    /// Throws InvalidArgument unless omega_t > 0, rabi >= 0 and everything is finite.
    void validate() const;

    /// False once rabi/omega_t exceeds 0.1; the perturbative formulas are then suspect.
    bool perturbative() const noexcept { return rabi <= 0.1 * omega_t; }

    TrapParams with_delta(double d) const {
        TrapParams p = *this;
        p.delta = d;
        return p;
    }
};

enum class Internal { g, e };

enum class SidebandKind { carrier, blue, red };

/// Identifies the |g,n_g> <-> |e,n_e> resonance.
struct SidebandId {
    int n_g = 0;
    int n_e = 0;

    int order() const noexcept { return n_e - n_g; }

    SidebandKind kind() const noexcept {
        if (n_e == n_g)
            return SidebandKind::carrier;
        return n_e > n_g ? SidebandKind::blue : SidebandKind::red;
    }

    bool is_carrier() const noexcept { return n_e == n_g; }

    SidebandId swapped() const noexcept { return {n_e, n_g}; }

    friend bool operator==(SidebandId, SidebandId) = default;
};

/// Throws InvalidArgument for negative vibrational indices.
void validate(SidebandId sideband);

std::string to_string(SidebandKind kind);
std::string to_string(Internal state);

}  // namespace vbs
