#include "vbs/cli/app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vbs/cli/commands.hpp"
#include "vbs/errors.hpp"

namespace vbs::cli {

namespace {

void add_common(CLI::App& app, RunConfig& c, std::string& config_path) {
    app.add_option("--config", config_path, "JSON file with option values; flags win");
    app.add_option("--trap-freq", c.trap_freq, "trap frequency, e.g. 2pi*1.36MHz or 1");
    app.add_option("--rabi", c.rabi, "Rabi frequency, e.g. 2pi*53kHz, or a ratio to the trap frequency");
    app.add_option("--eta", c.eta, "Lamb-Dicke parameter");
    app.add_option("--k-laser", c.k_laser, "laser wavenumber, e.g. 2pi/729nm");
    app.add_option("--mass", c.mass, "ion mass, e.g. 40u");
    app.add_option("--nmax", c.n_max, "Fock truncation (start value for convergence)");
    app.add_option("--kmax", c.k_max, "cut-off of the Stark sums");
    app.add_option("--format", c.format, "csv or json");
    app.add_option("--out", c.out, "output file");
    app.add_option("--units", c.units, "dimensionless or physical");
}

void add_sideband(CLI::App& app, RunConfig& c) {
    app.add_option("--ng", c.n_g, "vibrational number in the ground state");
    app.add_option("--ne", c.n_e, "vibrational number in the excited state");
}

void write(const CommandResult& result, std::ostream& out) {
    if (result.format == OutputFormat::json)
        write_json(out, result.table, result.config);
    else
        write_csv(out, result.table);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vibrational Bloch-Siegert shifts of trapped-ion sidebands", "vbshift"};
    app.require_subcommand(1);
    RunConfig config;
    std::string config_path;

    CLI::App* shift = app.add_subcommand("shift", "shift of one sideband, perturbative and exact");
    add_common(*shift, config, config_path);
    add_sideband(*shift, config);
    shift->add_flag("--ld", config.ld, "require the Lamb-Dicke expansion (rejected for carriers)");

    CLI::App* sweep = app.add_subcommand("sweep", "dressed levels against detuning");
    add_common(*sweep, config, config_path);
    sweep->add_option("--delta-min", config.delta_min);
    sweep->add_option("--delta-max", config.delta_max);
    sweep->add_option("--points", config.points);
    sweep->add_option("--preset", config.preset, "wide or blue");
    sweep->add_flag("--bare", config.bare, "add bare energies of each branch tag");

    CLI::App* scan = app.add_subcommand("scan-eta", "shift against the Lamb-Dicke parameter");
    add_common(*scan, config, config_path);
    add_sideband(*scan, config);
    scan->add_option("--eta-min", config.eta_min);
    scan->add_option("--eta-max", config.eta_max);
    scan->add_option("--points", config.points);
    scan->add_flag("--ld", config.ld);

    CLI::App* sidebands = app.add_subcommand("sidebands", "shifts of the first few red and blue sidebands");
    add_common(*sidebands, config, config_path);
    sidebands->add_option("--max-order", config.max_order, "highest sideband order");

    CLI::App* check = app.add_subcommand("check", "self-test battery");
    check->add_option("--format", config.format, "csv or json");
    check->add_option("--out", config.out, "output file");
    check->add_option("--tighten", config.tighten, "divide every tolerance by this factor");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "vbshift: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (*shift)
        config.command = Command::shift;
    else if (*sweep)
        config.command = Command::sweep;
    else if (*scan)
        config.command = Command::scan_eta;
    else if (*sidebands)
        config.command = Command::sidebands;
    else
        config.command = Command::check;

    try {
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file)
                throw InvalidArgument("cannot open config file " + config_path);
            nlohmann::json document;
            try {
                document = nlohmann::json::parse(file);
            } catch (const nlohmann::json::exception& e) {
                throw InvalidArgument("config file " + config_path + ": " + e.what());
            }
            merge_json(config, document);
        }

        const CommandResult result = dispatch(config);
        for (const auto& warning : result.warnings)
            err << "vbshift: warning: " << warning << '\n';

        if (config.out) {
            std::ostringstream buffer;
            write(result, buffer);
            std::ofstream file(*config.out, std::ios::binary);
            if (!file || !(file << buffer.str()))
                throw InvalidArgument("cannot write " + *config.out);
        } else {
            write(result, out);
        }
        return result.exit_code;
    } catch (const InvalidArgument& e) {
        err << "vbshift: invalid configuration: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const DomainError& e) {
        err << "vbshift: invalid configuration: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ResourceError& e) {
        err << "vbshift: invalid configuration: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericError& e) {
        err << "vbshift: numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "vbshift: internal error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

}  // namespace vbs::cli
