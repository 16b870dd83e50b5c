#pragma once

#include <Eigen/Core>

#include "vbs/fock.hpp"
#include "vbs/params.hpp"

namespace vbs {

/// Bare (Omega_R = 0) level: E_{g,n} = n omega_t + delta/2, E_{e,n} = n omega_t - delta/2.
double bare_energy(Internal state, int n, const TrapParams& params);

struct CrossingPoint {
    double energy;
    double detuning;
};

/// Where the bare lines of |g,n_g> and |e,n_e> cross in the (E, delta) plane.
CrossingPoint crossing_point(SidebandId sideband, const TrapParams& params);

/// Default truncation: max(n_g, n_e) + 15 + ceil(25 eta^2).
int default_n_max(SidebandId sideband, LDParam eta);

/// Basis position of |state, n> in a basis truncated at n_max.
/// The g-block occupies 0..n_max, the e-block n_max+1..2 n_max+1.
inline int basis_index(Internal state, int n, int n_max) noexcept {
    return state == Internal::g ? n : n_max + 1 + n;
}

/// Hermitian matrix of the laser-ion Hamiltonian in the field-adapted frame.
class HamiltonianMatrix {
public:
    HamiltonianMatrix(int n_max, Eigen::MatrixXcd entries);

    int n_max() const noexcept { return n_max_; }
    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    int index(Internal state, int n) const noexcept { return basis_index(state, n, n_max_); }

    complex operator()(int row, int col) const { return entries_(row, col); }
    const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }

private:
    int n_max_;
    Eigen::MatrixXcd entries_;
};

/// Diagonal bare energies plus (Omega_R/2) chi_{n n'} in the g-e block.
HamiltonianMatrix build_hamiltonian(const TrapParams& params, int n_max);

/// The same Hamiltonian after the unitary |alpha,n> -> i^n |alpha,n> on both
/// internal sectors, which makes every entry real.  Spectra and |overlaps|
/// with bare states are unchanged.
///
/// Built once per (eta, rabi, n_max); only the diagonal depends on delta, so
/// detuning sweeps reuse the coupling block.
class RealGaugeHamiltonian {
public:
    RealGaugeHamiltonian(const TrapParams& params, int n_max);

    int n_max() const noexcept { return n_max_; }
    int dim() const noexcept { return 2 * (n_max_ + 1); }
    const TrapParams& params() const noexcept { return params_; }

    Eigen::MatrixXd at(double delta) const;

private:
    TrapParams params_;
    int n_max_;
    Eigen::MatrixXd off_diagonal_;
};

}  // namespace vbs
