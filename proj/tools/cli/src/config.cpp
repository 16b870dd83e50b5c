#include "vbs/cli/config.hpp"

#include "vbs/cli/units.hpp"
#include "vbs/errors.hpp"

namespace vbs::cli {

std::string to_string(Command command) {
    switch (command) {
        case Command::shift: return "shift";
        case Command::sweep: return "sweep";
        case Command::scan_eta: return "scan-eta";
        case Command::sidebands: return "sidebands";
        case Command::check: return "check";
    }
    return "unknown";
}

namespace {

template <typename T>
void fill(std::optional<T>& field, const nlohmann::json& document, const char* key) {
    if (field || !document.contains(key))
        return;
    try {
        field = document.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
    }
}

// frequencies and masses may be written as numbers or strings in the file
void fill_text(std::optional<std::string>& field, const nlohmann::json& document, const char* key) {
    if (field || !document.contains(key))
        return;
    const nlohmann::json& value = document.at(key);
    if (value.is_string())
        field = value.get<std::string>();
    else if (value.is_number())
        field = format_number(value.get<double>());
    else
        throw InvalidArgument(std::string("config key '") + key + "' must be a string or number");
}

}  // namespace

void merge_json(RunConfig& config, const nlohmann::json& document) {
    if (!document.is_object())
        throw InvalidArgument("config file must hold a JSON object");
    fill_text(config.trap_freq, document, "trap-freq");
    fill_text(config.rabi, document, "rabi");
    fill(config.eta, document, "eta");
    fill_text(config.k_laser, document, "k-laser");
    fill_text(config.mass, document, "mass");
    fill(config.n_g, document, "ng");
    fill(config.n_e, document, "ne");
    fill(config.delta_min, document, "delta-min");
    fill(config.delta_max, document, "delta-max");
    fill(config.points, document, "points");
    fill(config.eta_min, document, "eta-min");
    fill(config.eta_max, document, "eta-max");
    fill(config.n_max, document, "nmax");
    fill(config.k_max, document, "kmax");
    fill(config.format, document, "format");
    fill(config.out, document, "out");
    fill(config.units, document, "units");
    fill(config.preset, document, "preset");
    fill(config.max_order, document, "max-order");
    fill(config.tighten, document, "tighten");
    if (!config.bare && document.contains("bare"))
        config.bare = document.at("bare").get<bool>();
    if (!config.ld && document.contains("ld"))
        config.ld = document.at("ld").get<bool>();
}

OutputFormat parse_format(const std::optional<std::string>& format) {
    if (!format || *format == "csv")
        return OutputFormat::csv;
    if (*format == "json")
        return OutputFormat::json;
    throw InvalidArgument("unknown output format '" + *format + "' (csv or json)");
}

ResolvedProblem resolve(const RunConfig& config, const ProblemDefaults& defaults) {
    ResolvedProblem problem;
    problem.format = parse_format(config.format);

    const Frequency trap = parse_frequency(config.trap_freq.value_or(defaults.trap_freq));
    const Frequency rabi = parse_frequency(config.rabi.value_or(defaults.rabi));
    if (trap.angular <= 0.0)
        throw InvalidArgument("trap frequency must be > 0");
    if (rabi.angular < 0.0)
        throw InvalidArgument("Rabi frequency must be >= 0");
    if (rabi.physical && !trap.physical)
        throw InvalidArgument("a Rabi frequency with units needs a trap frequency with units");

    // a bare Rabi number next to a physical trap frequency is the ratio Omega_R/omega_T
    const double ratio = (rabi.physical || !trap.physical) ? rabi.angular / trap.angular : rabi.angular;
    if (trap.physical)
        problem.omega_t = trap.angular;

    const bool has_k = config.k_laser.has_value();
    const bool has_mass = config.mass.has_value();
    if (config.eta && (has_k || has_mass))
        throw InvalidArgument("give either --eta or (--k-laser, --mass), not both");
    if (has_k != has_mass)
        throw InvalidArgument("--k-laser and --mass must be given together");
    double eta = defaults.eta;
    if (config.eta) {
        eta = *config.eta;
    } else if (has_k) {
        if (!trap.physical)
            throw InvalidArgument("deriving eta from --k-laser and --mass needs a trap frequency with units");
        eta = lamb_dicke_parameter(parse_wavenumber(*config.k_laser), parse_mass(*config.mass), trap.angular);
    }

    problem.params.omega_t = 1.0;
    problem.params.rabi = ratio;
    problem.params.eta = LDParam(eta);
    problem.params.validate();

    problem.sideband = {config.n_g.value_or(defaults.sideband.n_g), config.n_e.value_or(defaults.sideband.n_e)};
    validate(problem.sideband);

    if (!config.units)
        problem.physical_output = trap.physical;
    else if (*config.units == "physical") {
        if (!trap.physical)
            throw InvalidArgument("--units physical needs a trap frequency with units");
        problem.physical_output = true;
    } else if (*config.units == "dimensionless")
        problem.physical_output = false;
    else
        throw InvalidArgument("unknown --units '" + *config.units + "' (dimensionless or physical)");

    if (config.n_max && *config.n_max < 0)
        throw InvalidArgument("--nmax must be >= 0");
    if (config.k_max && *config.k_max < 0)
        throw InvalidArgument("--kmax must be >= 0");
    return problem;
}

}  // namespace vbs::cli
