#include <cmath>

#include "vbs/resolvent.hpp"

int main() {
    vbs::TrapParams p;
    p.rabi = 0.01;
    p.eta = vbs::LDParam(0.1);
    const double shift = vbs::bs_shift({0, 1}, p).delta_omega_full.value();
    return std::abs(shift + 4.925497922902111e-05) < 1e-15 ? 0 : 1;
}
