#include "vbs/cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "vbs/cli/units.hpp"
#include "vbs/errors.hpp"
#include "vbs/fock.hpp"
#include "vbs/hamiltonian.hpp"
#include "vbs/resolvent.hpp"
#include "vbs/spectrum.hpp"

namespace vbs::cli {

namespace {

const ProblemDefaults kCalcium{"2pi*1.36MHz", "2pi*53kHz", 0.083, {0, 1}};

Cell opt(const std::optional<double>& value) {
    if (value)
        return *value;
    return std::monostate{};
}

Cell integer(int value) { return static_cast<std::int64_t>(value); }

nlohmann::ordered_json base_config(const RunConfig& config, const ResolvedProblem& problem) {
    nlohmann::ordered_json out;
    out["command"] = to_string(config.command);
    if (problem.omega_t)
        out["trap_freq"] = format_frequency(*problem.omega_t);
    else
        out["trap_freq"] = 1.0;
    out["rabi_over_trap"] = problem.params.rabi;
    out["eta"] = problem.params.eta.value();
    out["units"] = problem.physical_output ? "physical" : "dimensionless";
    return out;
}

void add_sideband(nlohmann::ordered_json& out, SidebandId sideband) {
    out["ng"] = sideband.n_g;
    out["ne"] = sideband.n_e;
}

// trap-frequency units to Hz
double to_hz(double shift, const ResolvedProblem& problem) { return shift * *problem.omega_t / kTwoPi; }

int positive_points(const std::optional<int>& points, int fallback) {
    const int value = points.value_or(fallback);
    if (value < 2)
        throw InvalidArgument("--points must be >= 2");
    return value;
}

}  // namespace

CommandResult cmd_shift(const RunConfig& config) {
    const ResolvedProblem problem = resolve(config, kCalcium);
    const SidebandId sb = problem.sideband;
    const TrapParams& p = problem.params;
    if (config.ld && sb.is_carrier())
        throw DomainError("--ld requested for a carrier; the expansion is only defined for sidebands");

    CommandResult result;
    result.format = problem.format;
    result.config = base_config(config, problem);
    add_sideband(result.config, sb);
    result.config["ld"] = config.ld;

    const int k_max = config.k_max.value_or(0);
    const PerturbativeShift pert = perturbative_shift(sb, p, k_max);
    const LevelShiftElements elements = level_shift_diag(sb, p, k_max);
    std::optional<double> eta0;
    if (!sb.is_carrier())
        eta0 = eta_zero_shift(sb, p);

    const int n_start = config.n_max.value_or(default_n_max(sb, p.eta));
    if (n_start < std::max(sb.n_g, sb.n_e))
        throw InvalidArgument("--nmax below the sideband's vibrational index");
    const ConvergenceResult exact = convergence(sb, p, n_start);
    const double coupling = std::abs(rabi_coupling(sb.n_g, sb.n_e, p));

    if (!p.perturbative())
        result.warnings.push_back("Rabi frequency above 0.1 omega_T; perturbative columns are outside their range");
    if (!elements.isolated)
        result.warnings.push_back("resonance not isolated: level shift above 0.1 omega_T");

    std::vector<std::string> columns = {"ng", "ne", "kind", "delta0", "shift_full", "shift_ld", "shift_lit",
                                        "shift_eta0", "shift_exact", "delta_star", "method", "gap",
                                        "coupling_half", "coupling_full", "r_gg", "r_ee", "n_max", "k_max",
                                        "tail_bound", "converged"};
    if (problem.physical_output)
        for (const char* name : {"shift_full_hz", "shift_ld_hz", "shift_lit_hz", "shift_exact_hz"})
            columns.emplace_back(name);
    result.table.columns = columns;

    const bool converged = exact.converged && pert.converged;
    std::vector<Cell> row = {integer(sb.n_g),
                             integer(sb.n_e),
                             to_string(sb.kind()),
                             crossing_point(sb, p).detuning,
                             opt(pert.delta_omega_full),
                             opt(pert.delta_omega_ld),
                             opt(pert.delta_omega_lit),
                             opt(eta0),
                             exact.delta_omega,
                             exact.report.delta_star,
                             to_string(exact.report.method),
                             exact.report.gap,
                             coupling / 2.0,
                             coupling,
                             elements.r_gg,
                             elements.r_ee,
                             integer(exact.n_max_final),
                             integer(pert.k_max_used),
                             pert.tail_bound,
                             converged};
    if (problem.physical_output) {
        auto hz = [&](const std::optional<double>& v) -> Cell {
            if (v)
                return to_hz(*v, problem);
            return std::monostate{};
        };
        row.push_back(hz(pert.delta_omega_full));
        row.push_back(hz(pert.delta_omega_ld));
        row.push_back(hz(pert.delta_omega_lit));
        row.push_back(to_hz(exact.delta_omega, problem));
    }
    result.table.add_row(std::move(row));
    if (!converged) {
        result.warnings.push_back("shift not converged");
        result.exit_code = kExitNumeric;
    }
    return result;
}

CommandResult cmd_sweep(const RunConfig& config) {
    const std::string preset = config.preset.value_or("wide");
    double eta = 0.4, lo = -2.5, hi = 2.5;
    if (preset == "blue") {
        eta = 0.1;
        lo = 0.8;
        hi = 1.2;
    } else if (preset != "wide") {
        throw InvalidArgument("unknown --preset '" + preset + "' (wide or blue)");
    }
    const ResolvedProblem problem = resolve(config, {"1", "0.3", eta, {0, 1}});
    const TrapParams& p = problem.params;
    lo = config.delta_min.value_or(lo);
    hi = config.delta_max.value_or(hi);
    if (!(lo < hi))
        throw InvalidArgument("--delta-min must be below --delta-max");
    const std::vector<double> grid = linear_grid(lo, hi, positive_points(config.points, 101));
    const int reach = static_cast<int>(std::ceil(std::max(std::abs(lo), std::abs(hi))));
    const int n_max = config.n_max.value_or(default_n_max({0, reach}, p.eta));
    if (n_max < 0)
        throw InvalidArgument("--nmax must be >= 0");

    CommandResult result;
    result.format = problem.format;
    result.config = base_config(config, problem);
    result.config["preset"] = preset;
    result.config["delta_min"] = lo;
    result.config["delta_max"] = hi;
    result.config["points"] = grid.size();
    result.config["nmax"] = n_max;
    result.config["bare"] = config.bare;

    const DressedSpectrum spectrum = sweep_spectrum(p, grid, n_max);
    result.table.columns = {"delta", "branch_id", "tag", "energy", "overlap_tag"};
    if (config.bare)
        result.table.columns.emplace_back("bare_energy");
    const double scale = problem.physical_output ? *problem.omega_t / kTwoPi : 1.0;
    if (problem.physical_output)
        for (auto& column : result.table.columns)
            if (column == "delta" || column == "energy" || column == "bare_energy")
                column += "_hz";

    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t b = 0; b < spectrum.branches.size(); ++b) {
            const Branch& branch = spectrum.branches[b];
            std::vector<Cell> row = {grid[i] * scale, static_cast<std::int64_t>(b), to_string(branch.tag),
                                     branch.energies[i] * scale, branch.overlaps[i]};
            if (config.bare)
                row.emplace_back(bare_energy(branch.tag.state, branch.tag.n, p.with_delta(grid[i])) * scale);
            result.table.add_row(std::move(row));
        }
    }
    return result;
}

CommandResult cmd_scan_eta(const RunConfig& config) {
    const ResolvedProblem problem = resolve(config, {"1", "0.01", 0.0, {1, 0}});
    const SidebandId sb = problem.sideband;
    if (config.ld && sb.is_carrier())
        throw DomainError("--ld requested for a carrier; the expansion is only defined for sidebands");
    const double lo = config.eta_min.value_or(0.0);
    const double hi = config.eta_max.value_or(0.5);
    if (lo < 0.0 || !(lo < hi))
        throw InvalidArgument("eta grid needs 0 <= --eta-min < --eta-max");
    const std::vector<double> etas = linear_grid(lo, hi, positive_points(config.points, 26));

    CommandResult result;
    result.format = problem.format;
    result.config = base_config(config, problem);
    result.config.erase("eta");
    add_sideband(result.config, sb);
    result.config["eta_min"] = lo;
    result.config["eta_max"] = hi;
    result.config["points"] = etas.size();
    result.table.columns = {"eta", "shift_exact", "shift_full", "shift_ld", "shift_lit"};

    bool converged = true;
    for (double eta : etas) {
        TrapParams p = problem.params;
        p.eta = LDParam(eta);
        const PerturbativeShift pert = perturbative_shift(sb, p, config.k_max.value_or(0));
        const int n_start = config.n_max.value_or(default_n_max(sb, p.eta));
        const ConvergenceResult exact = convergence(sb, p, n_start);
        converged = converged && exact.converged && pert.converged;
        result.table.add_row({eta, exact.delta_omega, opt(pert.delta_omega_full), opt(pert.delta_omega_ld),
                              opt(pert.delta_omega_lit)});
    }
    if (!converged) {
        result.warnings.push_back("some grid points did not converge");
        result.exit_code = kExitNumeric;
    }
    return result;
}

CommandResult cmd_sidebands(const RunConfig& config) {
    const ResolvedProblem problem = resolve(config, kCalcium);
    const int max_order = config.max_order.value_or(3);
    if (max_order < 1)
        throw InvalidArgument("--max-order must be >= 1");
    const TrapParams& p = problem.params;

    CommandResult result;
    result.format = problem.format;
    result.config = base_config(config, problem);
    result.config["max_order"] = max_order;
    result.table.columns = {"kind", "order", "n", "ng", "ne", "shift_over_trap"};
    if (problem.physical_output)
        result.table.columns.emplace_back("shift_hz");

    auto emit = [&](SidebandId sb, int order, int n) {
        const PerturbativeShift pert = perturbative_shift(sb, p, config.k_max.value_or(0));
        if (!pert.converged)
            result.exit_code = kExitNumeric;
        const double shift = pert.delta_omega_full.value_or(0.0);
        std::vector<Cell> row = {to_string(sb.kind()), integer(order), integer(n), integer(sb.n_g),
                                 integer(sb.n_e), shift};
        if (problem.physical_output)
            row.emplace_back(to_hz(shift, problem));
        result.table.add_row(std::move(row));
    };
    // n is the lower vibrational number of the pair, so red and blue rows mirror each other
    for (int order = max_order; order >= 1; --order)
        for (int n = 0; n <= 3; ++n)
            emit({n + order, n}, -order, n);
    for (int n = 0; n <= 3; ++n)
        emit({n, n}, 0, n);
    for (int order = 1; order <= max_order; ++order)
        for (int n = 0; n <= 3; ++n)
            emit({n, n + order}, order, n);
    if (result.exit_code != kExitOk)
        result.warnings.push_back("some sidebands did not converge");
    return result;
}

CommandResult cmd_check(const RunConfig& config) {
    const double tighten = config.tighten.value_or(1.0);
    if (!(tighten >= 1.0) || !std::isfinite(tighten))
        throw InvalidArgument("--tighten must be a finite factor >= 1");

    CommandResult result;
    result.format = parse_format(config.format);
    result.config["command"] = "check";
    result.config["tighten"] = tighten;
    result.table.columns = {"check", "observed", "tolerance", "margin", "pass"};

    auto report = [&](const std::string& name, double observed, double tolerance) {
        tolerance /= tighten;
        const bool pass = observed <= tolerance;
        result.table.add_row({name, observed, tolerance, (tolerance - observed) / tolerance, pass});
        if (!pass)
            result.exit_code = kExitCheckFailed;
    };

    {
        double worst = 0.0;
        for (double eta : {0.1, 0.4, 0.8}) {
            const CouplingTable a = coupling_table(LDParam(eta), 20);
            const CouplingTable b = displacement_oracle(LDParam(eta), 20);
            worst = std::max(worst, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff());
        }
        report("bch_oracle", worst, 1e-8);
    }

    TrapParams p{1.0, 0.01, LDParam(0.0), 0.0};
    {
        double worst = 0.0;
        for (int n = 0; n <= 3; ++n)
            for (double eta : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
                p.eta = LDParam(eta);
                worst = std::max(worst, std::abs(bs_shift({n, n}, p).delta_omega_full.value()));
            }
        report("carrier_null_perturbative", worst, 1e-15);
    }
    {
        double worst = 0.0;
        for (int n = 0; n <= 3; ++n)
            for (double eta : {0.1, 0.3, 0.5}) {
                p.eta = LDParam(eta);
                const SidebandId sb{n, n};
                worst = std::max(worst, std::abs(find_resonance(sb, p, default_n_max(sb, p.eta)).delta_omega_numeric));
            }
        report("carrier_null_numeric", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (double eta : {0.0, 0.1, 0.25, 0.5}) {
            p.eta = LDParam(eta);
            for (int a = 0; a <= 4; ++a)
                for (int b = 0; b <= 4; ++b) {
                    if (a == b)
                        continue;
                    const double x = bs_shift({a, b}, p).delta_omega_full.value();
                    const double y = bs_shift({b, a}, p).delta_omega_full.value();
                    worst = std::max(worst, std::abs(x + y) / std::max(std::abs(x), std::abs(y)));
                }
        }
        report("swap_antisymmetry", worst, 1e-15);
    }
    {
        TrapParams q{1.0, 1e-3, LDParam(0.0), 0.0};
        double worst = 0.0;
        for (SidebandId sb : {SidebandId{0, 1}, SidebandId{1, 0}}) {
            const double expected = -q.rabi * q.rabi / (2.0 * crossing_point(sb, q).detuning);
            worst = std::max(worst, std::abs(bs_shift(sb, q).delta_omega_full.value() - expected));
            worst = std::max(worst, std::abs(find_resonance(sb, q, default_n_max(sb, q.eta)).delta_omega_numeric -
                                             expected));
        }
        report("eta_zero_limit", worst, 1e-12);
    }
    {
        p.eta = LDParam(0.1);
        double worst = 0.0;
        for (SidebandId sb : {SidebandId{0, 1}, SidebandId{1, 0}, SidebandId{0, 2}, SidebandId{1, 2}}) {
            const double pert = bs_shift(sb, p).delta_omega_full.value();
            const ConvergenceResult exact = convergence(sb, p, default_n_max(sb, p.eta));
            worst = std::max(worst, std::abs(pert - exact.delta_omega) / std::abs(exact.delta_omega));
        }
        report("perturbative_vs_exact", worst, 1e-2);
    }
    return result;
}

CommandResult dispatch(const RunConfig& config) {
    switch (config.command) {
        case Command::shift: return cmd_shift(config);
        case Command::sweep: return cmd_sweep(config);
        case Command::scan_eta: return cmd_scan_eta(config);
        case Command::sidebands: return cmd_sidebands(config);
        case Command::check: return cmd_check(config);
    }
    throw InvalidArgument("unknown command");
}

}  // namespace vbs::cli
