#include <cmath>
#include <random>

#include <doctest.h>

#include "vbs/errors.hpp"
#include "vbs/fock.hpp"

using namespace vbs;

namespace {

// Binomial-sum definition of L_n^alpha(x); independent of the recurrence.
double laguerre_binomial(int n, int alpha, double x) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double binom = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n - k + 1.0) - std::lgamma(alpha + k + 1.0));
        sum += ((k % 2) ? -1.0 : 1.0) * binom * std::pow(x, k) / std::tgamma(k + 1.0);
    }
    return sum;
}

}  // namespace

TEST_CASE("laguerre: closed forms") {
    for (int alpha : {0, 1, 5})
        for (double x : {0.0, 0.3, 2.0})
            CHECK(laguerre(0, alpha, x) == 1.0);
    for (double x : {0.0, 0.25, 1.0, 3.5})
        CHECK(laguerre(1, 0, x) == doctest::Approx(1.0 - x).epsilon(1e-15));
    // 3 - 3x + x^2/2 at x = 0.04
    CHECK(laguerre(2, 1, 0.04) == doctest::Approx(2.8808).epsilon(1e-14));
}

TEST_CASE("laguerre: recurrence matches binomial sum") {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
        for (int alpha = 0; alpha <= 10; ++alpha)
            for (double x : {0.0, 0.01, 0.0064, 0.16, 0.5, 0.64, 1.0}) {
                const double reference = laguerre_binomial(n, alpha, x);
                const double relative = std::abs(laguerre(n, alpha, x) - reference) / std::max(std::abs(reference), 1e-300);
                worst = std::max(worst, relative);
            }
    CHECK(worst <= 1e-12);
}

TEST_CASE("laguerre: contract violations") {
    CHECK_THROWS_AS(laguerre(2, 0, std::nan("")), InvalidArgument);
    CHECK_THROWS_AS(laguerre(2, 0, INFINITY), InvalidArgument);
    CHECK_THROWS_AS(laguerre(-1, 0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(laguerre(1, -2, 0.5), InvalidArgument);
}

TEST_CASE("LDParam rejects negative and non-finite values") {
    CHECK_THROWS_AS(LDParam(-0.1), InvalidArgument);
    CHECK_THROWS_AS(LDParam(std::nan("")), InvalidArgument);
    CHECK_NOTHROW(LDParam(0.0));
}

TEST_CASE("chi: values") {
    const complex c00 = chi(0, 0, LDParam(0.4));
    CHECK(c00.real() == doctest::Approx(std::exp(-0.08)).epsilon(1e-15));
    CHECK(c00.imag() == 0.0);

    const complex c01 = chi(0, 1, LDParam(0.1));
    CHECK(c01.real() == 0.0);
    CHECK(c01.imag() == doctest::Approx(0.1 * std::exp(-0.005)).epsilon(1e-15));
    CHECK(c01.imag() == doctest::Approx(0.099501).epsilon(1e-5));

    for (int n = 0; n < 6; ++n)
        for (int m = 0; m < 6; ++m)
            CHECK(chi(n, m, LDParam(0.0)) == complex(n == m ? 1.0 : 0.0, 0.0));
}

TEST_CASE("chi: large indices stay finite") {
    const complex c = chi(150, 190, LDParam(0.3));
    CHECK(std::isfinite(c.real()));
    CHECK(std::isfinite(c.imag()));
    // far off-diagonal elements are tiny but unitarity of row 180 still holds
    double norm = 0.0;
    for (int k = 0; k <= 260; ++k)
        norm += std::norm(chi(180, k, LDParam(0.3)));
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("chi: symmetry and phase properties") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> index(0, 30);
    std::uniform_real_distribution<double> eta_dist(0.0, 1.2);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = index(rng);
        const int m = index(rng);
        const LDParam eta(eta_dist(rng));
        const complex a = chi(n, m, eta);
        const complex b = chi(m, n, eta);
        CHECK(std::abs(std::abs(a) - std::abs(b)) <= 1e-15);
        // the phase is i^{|n-m|} times a real number
        const int d = std::abs(n - m);
        if (d % 2 == 0)
            CHECK(a.imag() == 0.0);
        else
            CHECK(a.real() == 0.0);
        if (n == m)
            CHECK(a.imag() == 0.0);
    }
}

TEST_CASE("chi: row norms increase monotonically to one") {
    for (double eta : {0.05, 0.3, 0.8, 1.0})
        for (int n : {0, 3, 10}) {
            double sum = 0.0;
            double previous = 0.0;
            for (int k = 0; k <= n + 50; ++k) {
                sum += std::norm(chi(n, k, LDParam(eta)));
                CHECK(sum >= previous);
                previous = sum;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-10);
        }
}

TEST_CASE("rabi_coupling") {
    TrapParams p;
    p.rabi = 0.0;
    p.eta = LDParam(0.3);
    CHECK(rabi_coupling(1, 2, p) == complex(0.0, 0.0));

    p.rabi = 0.01;
    p.eta = LDParam(0.0);
    CHECK(rabi_coupling(0, 0, p).real() == doctest::Approx(0.01));

    p.eta = LDParam(0.1);
    CHECK(rabi_coupling(0, 1, p).imag() == doctest::Approx(9.9501e-4).epsilon(1e-5));
    CHECK(rabi_coupling(0, 1, p).imag() == doctest::Approx(0.01 * 0.1 * std::exp(-0.005)).epsilon(1e-15));
}

TEST_CASE("coupling_table: examples") {
    const CouplingTable identity = coupling_table(LDParam(0.0), 5);
    CHECK(identity.dim() == 6);
    CHECK(identity.matrix().isApprox(Eigen::MatrixXcd::Identity(6, 6), 0.0));

    const CouplingTable small = coupling_table(LDParam(0.1), 1);
    CHECK(small(0, 0).real() == doctest::Approx(0.99501).epsilon(1e-5));
    CHECK(small(0, 1).imag() == doctest::Approx(0.099501).epsilon(1e-5));
    CHECK(small(1, 0).imag() == doctest::Approx(0.099501).epsilon(1e-5));
    CHECK(small(1, 1).real() == doctest::Approx(std::exp(-0.005) * 0.99).epsilon(1e-15));
    CHECK(small(1, 1).real() == doctest::Approx(0.98506).epsilon(1e-5));

    const CouplingTable wide = coupling_table(LDParam(0.3), 40);
    CHECK(std::abs(wide.row_norm(0) - 1.0) <= 1e-12);

    CHECK_THROWS_AS(coupling_table(LDParam(0.1), -1), InvalidArgument);
}

TEST_CASE("displacement_oracle: agrees with the Laguerre route") {
    CHECK(displacement_oracle(LDParam(0.0), 5).matrix().isApprox(Eigen::MatrixXcd::Identity(6, 6)));

    const CouplingTable oracle = displacement_oracle(LDParam(0.1), 5);
    CHECK(std::abs(oracle(0, 1) - chi(0, 1, LDParam(0.1))) <= 1e-10);

    CHECK(oracle_pad(LDParam(0.4), 10) == 20);
    CHECK(oracle_pad(LDParam(2.0), 100) == 80);
    const double diff04 = (displacement_oracle(LDParam(0.4), 10, 20).matrix() - coupling_table(LDParam(0.4), 10).matrix())
                              .cwiseAbs()
                              .maxCoeff();
    CHECK(diff04 <= 1e-8);

    for (double eta : {0.05, 0.1, 0.3, 0.8}) {
        const double diff =
            (displacement_oracle(LDParam(eta), 20).matrix() - coupling_table(LDParam(eta), 20).matrix()).cwiseAbs().maxCoeff();
        CAPTURE(eta);
        CHECK(diff <= 1e-8);
    }
}

TEST_CASE("displacement_oracle: truncation without padding is visibly wrong") {
    // the unpadded exponential corrupts the last rows; padding is what makes the oracle valid
    const double unpadded =
        (displacement_oracle(LDParam(0.8), 10, 0).matrix() - coupling_table(LDParam(0.8), 10).matrix()).cwiseAbs().maxCoeff();
    CHECK(unpadded > 1e-3);
}
