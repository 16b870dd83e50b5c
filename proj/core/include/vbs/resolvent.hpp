#pragma once

#include <optional>

#include "vbs/params.hpp"

namespace vbs {

/// Leading-order level-shift operator restricted to {|g,n_g>, |e,n_e>},
/// evaluated at the bare crossing energy.
struct LevelShiftElements {
    double r_gg = 0.0;
    double r_ee = 0.0;
    double r_ge_abs = 0.0;
    double e0 = 0.0;
    /// Largest vibrational index retained in the sums.
    int k_max_used = 0;
    /// Upper bound on the neglected tails of r_gg and r_ee.
    double tail_bound = 0.0;
    bool converged = true;
    /// r_ge_abs <= 0.1 omega_t; above that the two-level picture is not isolated.
    bool isolated = true;
};

/// Vibrational Bloch-Siegert shift of a resonance position and its pieces.
/// Fields a given routine does not compute are left empty.
struct PerturbativeShift {
    std::optional<double> delta_omega_full;
    std::optional<double> delta_omega_ld;
    std::optional<double> delta_omega_lit;
    /// Off-resonant carrier and adjacent-sideband parts of delta_omega_ld.
    double carrier_term = 0.0;
    double sideband_term = 0.0;
    int k_max_used = 0;
    double tail_bound = 0.0;
    bool converged = true;
};

/// max(n_g, n_e) + 60.
int default_k_max(SidebandId sideband);

/// Second-order R_gg, R_ee with energy denominators taken from the bare
/// levels at the crossing point, and |R_ge| = |Omega_{n_g n_e}|/2.
/// `k_max` <= 0 selects default_k_max().
LevelShiftElements level_shift_diag(SidebandId sideband, const TrapParams& params, int k_max = 0);

/// Shift to all orders in eta from the two Stark sums over trap levels.
/// Exactly antisymmetric under n_g <-> n_e and exactly zero for carriers.
PerturbativeShift bs_shift(SidebandId sideband, const TrapParams& params, int k_max = 0);

/// Lamb-Dicke expansion through eta^2.  Throws DomainError for carriers.
PerturbativeShift bs_shift_ld(SidebandId sideband, const TrapParams& params);

/// Omega_R^2/(2 omega_t) + eta^2 Omega_R^2/(4 omega_t), the earlier first-red-sideband
/// result.  Throws DomainError unless sideband == (1, 0).
double bs_shift_literature(SidebandId sideband, const TrapParams& params);

/// -Omega_R^2 / (2 delta0).  Throws DomainError for carriers.
double eta_zero_shift(SidebandId sideband, const TrapParams& params);

/// bs_shift, plus the LD and literature values wherever they are defined.
PerturbativeShift perturbative_shift(SidebandId sideband, const TrapParams& params, int k_max = 0);

}  // namespace vbs
