#include "vbs/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vbs/compensated_sum.hpp"
#include "vbs/errors.hpp"
#include "vbs/fock.hpp"
#include "vbs/hamiltonian.hpp"

namespace vbs {

namespace {

struct StarkSum {
    double value = 0.0;
    double tail_bound = 0.0;
    int k_max_used = 0;
};

// log of eta^{2d} (n+d)! / (n! (d!)^2), which bounds |chi_{n k}|^2 for |n - k| = d.
double log_majorant(double log_eta, int n, int d) {
    return 2.0 * d * log_eta + std::lgamma(n + d + 1.0) - std::lgamma(n + 1.0) - 2.0 * std::lgamma(d + 1.0);
}

// Sum over k != excluded, 0 <= k <= k_max, of |chi_{coupled,k}|^2 / denominator(k),
// in ascending |k - coupled|.  Every |denominator(k)| must be >= min_denominator.
template <typename Denominator>
StarkSum stark_sum(int coupled, int excluded, LDParam eta, int k_max, double min_denominator,
                   Denominator denominator) {
    CompensatedSum sum;
    double magnitude = 0.0;
    StarkSum result;

    auto add = [&](int k) {
        if (k == excluded)
            return;
        const double weight = std::norm(chi(coupled, k, eta));
        const double term = weight / denominator(k);
        sum += term;
        magnitude += std::abs(term);
        result.k_max_used = std::max(result.k_max_used, k);
    };

    add(coupled);
    if (eta.value() == 0.0) {
        result.value = sum.value();
        return result;
    }

    const double log_eta = std::log(eta.value());
    int d = 1;
    for (; coupled + d <= k_max; ++d) {
        add(coupled + d);
        if (coupled - d >= 0)
            add(coupled - d);

        // both neighbours at distance d+1 are bounded by the same majorant
        const double next = 2.0 * std::exp(log_majorant(log_eta, coupled, d + 1)) / min_denominator;
        const double ratio = eta.squared() * (coupled + d + 2.0) / ((d + 2.0) * (d + 2.0));
        if (ratio <= 0.5 && next < 1e-16 * magnitude) {
            result.value = sum.value();
            result.tail_bound = next / (1.0 - ratio);
            return result;
        }
    }

    // truncated by k_max; bound what remains if the majorants decay at all
    const double next = 2.0 * std::exp(log_majorant(log_eta, coupled, d)) / min_denominator;
    const double ratio = eta.squared() * (coupled + d + 1.0) / ((d + 1.0) * (d + 1.0));
    result.value = sum.value();
    result.tail_bound = ratio < 1.0 ? next / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    return result;
}

int resolve_k_max(SidebandId sideband, int k_max) {
    validate(sideband);
    if (k_max <= 0)
        return default_k_max(sideband);
    if (k_max < std::max(sideband.n_g, sideband.n_e) + 1)
        throw InvalidArgument("k_max must be at least max(n_g, n_e) + 1");
    return k_max;
}

}  // namespace

int default_k_max(SidebandId sideband) {
    return std::max(sideband.n_g, sideband.n_e) + 60;
}

LevelShiftElements level_shift_diag(SidebandId sideband, const TrapParams& params, int k_max) {
    params.validate();
    k_max = resolve_k_max(sideband, k_max);

    const CrossingPoint crossing = crossing_point(sideband, params);
    const TrapParams at_crossing = params.with_delta(crossing.detuning);
    const double omega = params.omega_t;
    const double coupling = 0.25 * params.rabi * params.rabi;

    // R_gg: |g,n_g> couples to |e,k>, k != n_e
    const StarkSum gg = stark_sum(sideband.n_g, sideband.n_e, params.eta, k_max, omega, [&](int k) {
        return crossing.energy - bare_energy(Internal::e, k, at_crossing);
    });
    // R_ee: |e,n_e> couples to |g,k>, k != n_g
    const StarkSum ee = stark_sum(sideband.n_e, sideband.n_g, params.eta, k_max, omega, [&](int k) {
        return crossing.energy - bare_energy(Internal::g, k, at_crossing);
    });

    LevelShiftElements elements;
    elements.r_gg = coupling * gg.value;
    elements.r_ee = coupling * ee.value;
    elements.r_ge_abs = 0.5 * std::abs(rabi_coupling(sideband.n_g, sideband.n_e, params));
    elements.e0 = crossing.energy;
    elements.k_max_used = std::max(gg.k_max_used, ee.k_max_used);
    elements.tail_bound = coupling * std::max(gg.tail_bound, ee.tail_bound);
    elements.converged = params.rabi == 0.0
        || elements.tail_bound <= 1e-3 * std::max(std::abs(elements.r_gg), std::abs(elements.r_ee));
    elements.isolated = elements.r_ge_abs <= 0.1 * omega;
    return elements;
}

PerturbativeShift bs_shift(SidebandId sideband, const TrapParams& params, int k_max) {
    params.validate();
    k_max = resolve_k_max(sideband, k_max);
    const int n_g = sideband.n_g;
    const int n_e = sideband.n_e;

    const StarkSum excited = stark_sum(n_e, n_g, params.eta, k_max, 1.0, [&](int k) { return double(n_g - k); });
    const StarkSum ground = stark_sum(n_g, n_e, params.eta, k_max, 1.0, [&](int k) { return double(n_e - k); });

    const double prefactor = params.rabi * params.rabi / (4.0 * params.omega_t);
    PerturbativeShift shift;
    shift.delta_omega_full = prefactor * (excited.value - ground.value);
    shift.k_max_used = std::max(excited.k_max_used, ground.k_max_used);
    shift.tail_bound = prefactor * (excited.tail_bound + ground.tail_bound);
    const double scale = prefactor * std::max(std::abs(excited.value), std::abs(ground.value));
    shift.converged = params.rabi == 0.0 || shift.tail_bound <= 1e-3 * scale;
    return shift;
}

PerturbativeShift bs_shift_ld(SidebandId sideband, const TrapParams& params) {
    validate(sideband);
    params.validate();
    if (sideband.is_carrier())
        throw DomainError("Lamb-Dicke expansion of the shift is valid only for n_g != n_e");

    const double rabi2 = params.rabi * params.rabi;
    const double eta2 = params.eta.squared();
    const double omega = params.omega_t;
    const int difference = sideband.n_g - sideband.n_e;
    const double total = sideband.n_g + sideband.n_e + 1.0;

    PerturbativeShift shift;
    shift.carrier_term = rabi2 * (1.0 - eta2 * total) / (2.0 * difference * omega);
    double adjacent = 0.0;
    for (int k : {1, -1})
        if (difference + k != 0)
            adjacent += total / (difference + k);
    shift.sideband_term = eta2 * rabi2 / (4.0 * omega) * adjacent;
    shift.delta_omega_ld = shift.carrier_term + shift.sideband_term;
    return shift;
}

double bs_shift_literature(SidebandId sideband, const TrapParams& params) {
    params.validate();
    if (!(sideband == SidebandId{1, 0}))
        throw DomainError("the literature shift formula applies only to the first red sideband (n_g=1, n_e=0)");
    const double rabi2 = params.rabi * params.rabi;
    return rabi2 / (2.0 * params.omega_t) + params.eta.squared() * rabi2 / (4.0 * params.omega_t);
}

double eta_zero_shift(SidebandId sideband, const TrapParams& params) {
    validate(sideband);
    params.validate();
    if (sideband.is_carrier())
        throw DomainError("eta = 0 shift is undefined for the carrier (delta0 = 0)");
    const double delta0 = crossing_point(sideband, params).detuning;
    return -params.rabi * params.rabi / (2.0 * delta0);
}

PerturbativeShift perturbative_shift(SidebandId sideband, const TrapParams& params, int k_max) {
    PerturbativeShift shift = bs_shift(sideband, params, k_max);
    if (!sideband.is_carrier()) {
        const PerturbativeShift ld = bs_shift_ld(sideband, params);
        shift.delta_omega_ld = ld.delta_omega_ld;
        shift.carrier_term = ld.carrier_term;
        shift.sideband_term = ld.sideband_term;
    }
    if (sideband == SidebandId{1, 0})
        shift.delta_omega_lit = bs_shift_literature(sideband, params);
    return shift;
}

}  // namespace vbs
