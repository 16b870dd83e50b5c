#include "vbs/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <string>

#include "vbs/errors.hpp"

namespace vbs {

namespace {

void check_n_max(int n_max) {
    if (n_max < 0)
        throw InvalidArgument("n_max must be >= 0");
    // dim^2 complex entries must stay addressable
    if (n_max > 20000)
        throw ResourceError("n_max " + std::to_string(n_max) + " exceeds the supported basis size");
}

// i^{-n} * i^{n'} * chi_{n n'} is real: (-1)^d above the diagonal, unchanged below.
double gauged_coupling(const CouplingTable& table, int n, int nprime) {
    const complex c = table(n, nprime);
    const int d = std::abs(n - nprime);
    const double magnitude_with_sign = (d % 2 == 0) ? c.real() : c.imag();
    // chi carries i^d; removing it leaves (-1)^{d/2} or (-1)^{(d-1)/2} in front of the real part.
    const double unphased = ((d / 2) % 2 == 0) ? magnitude_with_sign : -magnitude_with_sign;
    return (nprime >= n && d % 2 == 1) ? -unphased : unphased;
}

}  // namespace

double bare_energy(Internal state, int n, const TrapParams& params) {
    if (n < 0)
        throw InvalidArgument("bare_energy: n must be >= 0");
    const double half_delta = 0.5 * params.delta;
    return n * params.omega_t + (state == Internal::g ? half_delta : -half_delta);
}

CrossingPoint crossing_point(SidebandId sideband, const TrapParams& params) {
    return {0.5 * params.omega_t * (sideband.n_g + sideband.n_e),
            (sideband.n_e - sideband.n_g) * params.omega_t};
}

int default_n_max(SidebandId sideband, LDParam eta) {
    return std::max(sideband.n_g, sideband.n_e) + 15 + static_cast<int>(std::ceil(25.0 * eta.squared() * (1.0 - 1e-12)));
}

HamiltonianMatrix::HamiltonianMatrix(int n_max, Eigen::MatrixXcd entries)
    : n_max_(n_max), entries_(std::move(entries)) {
    if (entries_.rows() != 2 * (n_max + 1) || entries_.cols() != entries_.rows())
        throw InvalidArgument("HamiltonianMatrix: dimension must be 2(n_max+1)");
}

HamiltonianMatrix build_hamiltonian(const TrapParams& params, int n_max) {
    params.validate();
    check_n_max(n_max);
    try {
        const int dim = 2 * (n_max + 1);
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
        for (int n = 0; n <= n_max; ++n) {
            h(basis_index(Internal::g, n, n_max), basis_index(Internal::g, n, n_max)) = bare_energy(Internal::g, n, params);
            h(basis_index(Internal::e, n, n_max), basis_index(Internal::e, n, n_max)) = bare_energy(Internal::e, n, params);
        }
        if (params.rabi > 0.0) {
            const CouplingTable table = coupling_table(params.eta, n_max);
            for (int n = 0; n <= n_max; ++n)
                for (int m = 0; m <= n_max; ++m) {
                    // <g,n| H |e,m> = (Omega_R/2) chi_{n m}
                    const complex element = 0.5 * params.rabi * table(n, m);
                    h(basis_index(Internal::g, n, n_max), basis_index(Internal::e, m, n_max)) = element;
                    h(basis_index(Internal::e, m, n_max), basis_index(Internal::g, n, n_max)) = std::conj(element);
                }
        }
        return HamiltonianMatrix(n_max, std::move(h));
    } catch (const std::bad_alloc&) {
        throw ResourceError("build_hamiltonian: cannot allocate basis of size " + std::to_string(2 * (n_max + 1)));
    }
}

RealGaugeHamiltonian::RealGaugeHamiltonian(const TrapParams& params, int n_max)
    : params_(params), n_max_(n_max) {
    params_.validate();
    check_n_max(n_max);
    try {
        off_diagonal_ = Eigen::MatrixXd::Zero(dim(), dim());
        if (params_.rabi > 0.0) {
            const CouplingTable table = coupling_table(params_.eta, n_max);
            for (int n = 0; n <= n_max; ++n)
                for (int m = 0; m <= n_max; ++m) {
                    const double element = 0.5 * params_.rabi * gauged_coupling(table, n, m);
                    off_diagonal_(basis_index(Internal::g, n, n_max), basis_index(Internal::e, m, n_max)) = element;
                    off_diagonal_(basis_index(Internal::e, m, n_max), basis_index(Internal::g, n, n_max)) = element;
                }
        }
    } catch (const std::bad_alloc&) {
        throw ResourceError("RealGaugeHamiltonian: cannot allocate basis of size " + std::to_string(dim()));
    }
}

Eigen::MatrixXd RealGaugeHamiltonian::at(double delta) const {
    Eigen::MatrixXd h = off_diagonal_;
    const TrapParams p = params_.with_delta(delta);
    for (int n = 0; n <= n_max_; ++n) {
        h(basis_index(Internal::g, n, n_max_), basis_index(Internal::g, n, n_max_)) = bare_energy(Internal::g, n, p);
        h(basis_index(Internal::e, n, n_max_), basis_index(Internal::e, n, n_max_)) = bare_energy(Internal::e, n, p);
    }
    return h;
}

}  // namespace vbs
