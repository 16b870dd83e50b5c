#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "vbs/cli/table.hpp"
#include "vbs/params.hpp"

namespace vbs::cli {

enum class Command { shift, sweep, scan_eta, sidebands, check };

std::string to_string(Command command);

/// Everything a run can be configured with.  Unset fields fall back to the
/// per-command defaults, which reproduce the published figures.
struct RunConfig {
    Command command = Command::shift;

    std::optional<std::string> trap_freq;
    std::optional<std::string> rabi;
    std::optional<double> eta;
    std::optional<std::string> k_laser;
    std::optional<std::string> mass;
    std::optional<int> n_g;
    std::optional<int> n_e;
    std::optional<double> delta_min;
    std::optional<double> delta_max;
    std::optional<int> points;
    std::optional<double> eta_min;
    std::optional<double> eta_max;
    std::optional<int> n_max;
    std::optional<int> k_max;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<std::string> units;
    std::optional<std::string> preset;
    std::optional<int> max_order;
    std::optional<double> tighten;
    bool bare = false;
    bool ld = false;
};

/// Fills every field still unset in `config` from a JSON object whose keys are
/// the long flag names ("trap-freq", "eta", "ng", ...).  Flags win on conflict.
void merge_json(RunConfig& config, const nlohmann::json& document);

/// Physical problem after unit handling; the library only ever sees `params`
/// (omega_t = 1).
struct ResolvedProblem {
    TrapParams params;
    /// Trap angular frequency in rad/s, if the inputs carried units.
    std::optional<double> omega_t;
    bool physical_output = false;
    SidebandId sideband;
    OutputFormat format = OutputFormat::csv;
};

struct ProblemDefaults {
    std::string trap_freq;
    std::string rabi;
    double eta = 0.0;
    SidebandId sideband;
};

/// Applies units, derives eta from (k_laser, mass) if requested, and checks
/// that the combination is consistent.  Throws InvalidArgument.
ResolvedProblem resolve(const RunConfig& config, const ProblemDefaults& defaults);

OutputFormat parse_format(const std::optional<std::string>& format);

}  // namespace vbs::cli
