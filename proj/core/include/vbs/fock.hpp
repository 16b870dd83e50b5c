#pragma once

#include <complex>

#include <Eigen/Core>

#include "vbs/params.hpp"

namespace vbs {

using complex = std::complex<double>;

/// Generalized Laguerre function L_n^alpha(x) by the three-term recurrence in n.
/// Throws InvalidArgument for negative n or alpha, or non-finite x.
double laguerre(int n, int alpha, double x);

/// <n| exp(i eta (a + a^dag)) |n'>, with the phase convention i^{|n-n'|}.
complex chi(int n, int nprime, LDParam eta);

/// Omega_{n n'} = Omega_R * chi_{n n'}.
complex rabi_coupling(int n, int nprime, const TrapParams& params);

/// Immutable square table of displacement-operator matrix elements over |0>..|n_max>.
class CouplingTable {
public:
    explicit CouplingTable(Eigen::MatrixXcd entries);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    int n_max() const noexcept { return dim() - 1; }

    complex operator()(int n, int nprime) const { return entries_(n, nprime); }

    const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }

    /// Sum_k |chi_{n k}|^2 over the retained basis.
    double row_norm(int n) const;

private:
    Eigen::MatrixXcd entries_;
};

/// Table of chi over 0 <= n, n' <= n_max from the closed-form Laguerre expression.
CouplingTable coupling_table(LDParam eta, int n_max);

/// Basis padding used by displacement_oracle: max(20, 4 * ceil(eta * sqrt(n_max))).
int oracle_pad(LDParam eta, int n_max);

/// Independent route to the same table: exponentiates the truncated tridiagonal
/// i eta (a + a^dag) by scaling and squaring of a Taylor series on a padded
/// basis, then crops.  Throws NumericError if the series does not converge.
CouplingTable displacement_oracle(LDParam eta, int n_max);
CouplingTable displacement_oracle(LDParam eta, int n_max, int pad);

}  // namespace vbs
