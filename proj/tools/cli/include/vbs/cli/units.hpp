#pragma once

#include <string>
#include <string_view>

namespace vbs::cli {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

/// A frequency as given on the command line.
struct Frequency {
    /// Angular frequency in rad/s when `physical`, otherwise a pure number in units of omega_t.
    double angular = 0.0;
    bool physical = false;
};

/// Accepts "2pi*1.36MHz" (angular written as 2pi times an ordinary frequency),
/// "1.36MHz" (ordinary frequency), "8.5e6rad/s", or a bare number, which is
/// dimensionless.  Units: Hz, kHz, MHz, GHz, rad/s.  Throws InvalidArgument.
Frequency parse_frequency(std::string_view text);

/// "2pi*<value><unit>" with the unit chosen so that 1 <= value < 1000 when possible.
std::string format_frequency(double angular);

/// Laser wavenumber in rad/m: "2pi/729nm", "2pi/0.729um" or a bare number in rad/m.
double parse_wavenumber(std::string_view text);

/// Ion mass in kg: "40u", "40amu", "6.6e-26kg" or a bare number in kg.
double parse_mass(std::string_view text);

/// eta = k_L sqrt(hbar / (2 m omega_t)), with omega_t in rad/s.
double lamb_dicke_parameter(double wavenumber, double mass, double omega_t);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace vbs::cli
