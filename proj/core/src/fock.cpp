#include "vbs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

#include "vbs/errors.hpp"

namespace vbs {

double laguerre(int n, int alpha, double x) {
    if (n < 0 || alpha < 0)
        throw InvalidArgument("laguerre: n and alpha must be >= 0");
    if (!std::isfinite(x))
        throw InvalidArgument("laguerre: x must be finite");

    double previous = 1.0;
    if (n == 0)
        return previous;
    double current = 1.0 + alpha - x;
    // (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * current - (k + alpha) * previous) / (k + 1.0);
        previous = current;
        current = next;
    }
    return current;
}

complex chi(int n, int nprime, LDParam eta) {
    if (n < 0 || nprime < 0)
        throw InvalidArgument("chi: vibrational indices must be >= 0");

    const int lesser = std::min(n, nprime);
    const int greater = std::max(n, nprime);
    const int d = greater - lesser;
    const double x = eta.squared();

    double magnitude = 0.0;
    if (d == 0) {
        magnitude = std::exp(-0.5 * x) * laguerre(lesser, 0, x);
    } else if (eta.value() > 0.0) {
        const double log_prefactor = -0.5 * x + d * std::log(eta.value())
            + 0.5 * (std::lgamma(lesser + 1.0) - std::lgamma(greater + 1.0));
        magnitude = std::exp(log_prefactor) * laguerre(lesser, d, x);
    }

    switch (d % 4) {
        case 0: return {magnitude, 0.0};
        case 1: return {0.0, magnitude};
        case 2: return {-magnitude, 0.0};
        default: return {0.0, -magnitude};
    }
}

complex rabi_coupling(int n, int nprime, const TrapParams& params) {
    return params.rabi * chi(n, nprime, params.eta);
}

CouplingTable::CouplingTable(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw InvalidArgument("CouplingTable must be square");
}

double CouplingTable::row_norm(int n) const {
    return entries_.row(n).squaredNorm();
}

CouplingTable coupling_table(LDParam eta, int n_max) {
    if (n_max < 0)
        throw InvalidArgument("coupling_table: n_max must be >= 0");
    try {
        const int dim = n_max + 1;
        Eigen::MatrixXcd entries(dim, dim);
        for (int n = 0; n < dim; ++n)
            for (int m = n; m < dim; ++m) {
                entries(n, m) = chi(n, m, eta);
                entries(m, n) = entries(n, m);
            }
        return CouplingTable(std::move(entries));
    } catch (const std::bad_alloc&) {
        throw ResourceError("coupling_table: cannot allocate " + std::to_string(n_max + 1) + "^2 table");
    }
}

int oracle_pad(LDParam eta, int n_max) {
    const int spread = static_cast<int>(std::ceil(eta.value() * std::sqrt(static_cast<double>(n_max))));
    return std::max(20, 4 * spread);
}

CouplingTable displacement_oracle(LDParam eta, int n_max) {
    return displacement_oracle(eta, n_max, oracle_pad(eta, n_max));
}

CouplingTable displacement_oracle(LDParam eta, int n_max, int pad) {
    if (n_max < 0 || pad < 0)
        throw InvalidArgument("displacement_oracle: n_max and pad must be >= 0");

    const int dim = n_max + 1 + pad;
    Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        const complex element{0.0, eta.value() * std::sqrt(k + 1.0)};
        generator(k, k + 1) = element;
        generator(k + 1, k) = element;
    }

    // Scale until the 1-norm is below 1/2, sum the Taylor series, square back.
    const double norm = 2.0 * eta.value() * std::sqrt(static_cast<double>(dim));
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.5)
        ++squarings;
    generator /= std::ldexp(1.0, squarings);

    constexpr int kMaxTerms = 60;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
    bool converged = false;
    for (int j = 1; j <= kMaxTerms; ++j) {
        term = (term * generator) / static_cast<double>(j);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError("displacement_oracle: Taylor series did not converge in "
                           + std::to_string(kMaxTerms) + " terms");

    for (int s = 0; s < squarings; ++s)
        sum = (sum * sum).eval();

    return CouplingTable(sum.topLeftCorner(n_max + 1, n_max + 1));
}

}  // namespace vbs
