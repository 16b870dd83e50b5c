#include "vbs/cli/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "vbs/errors.hpp"

namespace vbs::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

// Splits "<number><suffix>" and parses the number.
std::pair<double, std::string_view> split_number(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end == text.data())
        throw InvalidArgument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    if (!std::isfinite(value))
        throw InvalidArgument(std::string(what) + " must be finite");
    return {value, trim(std::string_view(end, text.data() + text.size() - end))};
}

bool strip_two_pi_prefix(std::string_view& text) {
    for (std::string_view prefix : {"2pi*", "2*pi*", "2pi", "2*pi"}) {
        if (text.substr(0, prefix.size()) == prefix) {
            text.remove_prefix(prefix.size());
            if (!text.empty() && text.front() == '*')
                text.remove_prefix(1);
            return true;
        }
    }
    return false;
}

struct UnitScale {
    std::string_view name;
    double scale;
};

constexpr std::array<UnitScale, 4> kFrequencyUnits{{{"GHz", 1e9}, {"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0}}};

}  // namespace

Frequency parse_frequency(std::string_view text) {
    std::string_view body = trim(text);
    const bool two_pi = strip_two_pi_prefix(body);
    const auto [value, unit] = split_number(body, "frequency");

    if (unit.empty()) {
        if (two_pi)
            throw InvalidArgument("'2pi*' requires a unit (Hz, kHz, MHz, GHz)");
        return {value, false};
    }
    if (unit == "rad/s") {
        if (two_pi)
            throw InvalidArgument("'2pi*' cannot be combined with rad/s");
        return {value, true};
    }
    for (const UnitScale& u : kFrequencyUnits)
        if (unit == u.name)
            return {kTwoPi * value * u.scale, true};
    throw InvalidArgument("unknown frequency unit '" + std::string(unit) + "'");
}

namespace {

// 15 significant digits hide the ulp noise of the 2pi and unit divisions
std::string format_mantissa(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 15);
    return std::string(buffer, result.ptr);
}

}  // namespace

std::string format_frequency(double angular) {
    const double ordinary = angular / kTwoPi;
    for (const UnitScale& u : kFrequencyUnits)
        if (std::abs(ordinary) >= u.scale)
            return "2pi*" + format_mantissa(ordinary / u.scale) + std::string(u.name);
    return "2pi*" + format_mantissa(ordinary) + "Hz";
}

double parse_wavenumber(std::string_view text) {
    std::string_view body = trim(text);
    if (body.substr(0, 4) == "2pi/") {
        body.remove_prefix(4);
        const auto [value, unit] = split_number(body, "wavelength");
        double scale = 0.0;
        if (unit == "nm")
            scale = 1e-9;
        else if (unit == "um")
            scale = 1e-6;
        else if (unit == "m")
            scale = 1.0;
        else
            throw InvalidArgument("unknown wavelength unit '" + std::string(unit) + "'");
        if (value <= 0.0)
            throw InvalidArgument("wavelength must be > 0");
        return kTwoPi / (value * scale);
    }
    const auto [value, unit] = split_number(body, "wavenumber");
    if (!unit.empty() && unit != "1/m" && unit != "rad/m")
        throw InvalidArgument("unknown wavenumber unit '" + std::string(unit) + "'");
    if (value <= 0.0)
        throw InvalidArgument("wavenumber must be > 0");
    return value;
}

double parse_mass(std::string_view text) {
    const auto [value, unit] = split_number(text, "mass");
    if (value <= 0.0)
        throw InvalidArgument("mass must be > 0");
    if (unit == "u" || unit == "amu")
        return value * kAtomicMassUnit;
    if (unit.empty() || unit == "kg")
        return value;
    throw InvalidArgument("unknown mass unit '" + std::string(unit) + "'");
}

double lamb_dicke_parameter(double wavenumber, double mass, double omega_t) {
    return wavenumber * std::sqrt(kHbar / (2.0 * mass * omega_t));
}

std::string format_number(double value) {
    std::array<char, 32> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

}  // namespace vbs::cli
