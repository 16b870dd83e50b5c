// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbs/cli/app.hpp"
#include "vbs/cli/units.hpp"
#include "vbs/fock.hpp"
#include "vbs/hamiltonian.hpp"
#include "vbs/resolvent.hpp"
#include "vbs/spectrum.hpp"

using namespace vbs;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

TrapParams params(double rabi, double eta) {
    TrapParams p;
    p.rabi = rabi;
    p.eta = LDParam(eta);
    return p;
}

double full(SidebandId sb, const TrapParams& p) { return bs_shift(sb, p).delta_omega_full.value(); }

double exact(SidebandId sb, const TrapParams& p) {
    return convergence(sb, p, default_n_max(sb, p.eta)).delta_omega;
}

std::vector<double> grid(double lo, double hi, int points) { return linear_grid(lo, hi, points); }

const std::vector<SidebandId> kOracleSidebands = {{0, 1}, {1, 0}, {0, 2}, {1, 2}};

Outcome calcium() {
    const auto start = Clock::now();
    const double omega_t = cli::parse_frequency("2pi*1.36MHz").angular;
    const double rabi = cli::parse_frequency("2pi*53kHz").angular;
    const TrapParams p = params(rabi / omega_t, 0.083);
    const double shift = full({0, 1}, p);
    const double numeric = exact({0, 1}, p);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const double hz = std::abs(shift) * omega_t / cli::kTwoPi;
    const double hz_numeric = std::abs(numeric) * omega_t / cli::kTwoPi;
    const double relative = std::abs(shift);
    const bool pass = hz >= 900.0 && hz <= 1100.0 && hz_numeric >= 900.0 && hz_numeric <= 1100.0 &&
                      relative >= 5e-4 && relative <= 2e-3 && seconds < 1.0;
    return {pass, fmt("|dw|/2pi = %.2f Hz (exact %.2f Hz), |dw|/w_T = %.3e, %.3f s", hz, hz_numeric, relative,
                      seconds)};
}

Outcome oracle_equivalence() {
    const auto start = Clock::now();
    double worst_ratio = 0.0;
    std::string worst;
    for (double eta : {0.05, 0.1, 0.2, 0.3})
        for (SidebandId sb : kOracleSidebands) {
            const TrapParams p = params(0.01, eta);
            const double a = full(sb, p);
            const double b = exact(sb, p);
            const double allowed = std::max(0.01 * std::abs(b), 1e-9);
            const double ratio = std::abs(a - b) / allowed;
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst = fmt("(%d,%d) eta=%.2f diff %.3e", sb.n_g, sb.n_e, eta, std::abs(a - b));
            }
        }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return {worst_ratio <= 1.0 && seconds < 30.0,
            fmt("worst %s = %.3e of tolerance, %.2f s", worst.c_str(), worst_ratio, seconds)};
}

Outcome carrier_null() {
    double worst_pert = 0.0, worst_num = 0.0;
    for (int n = 0; n <= 3; ++n)
        for (double eta : grid(0.0, 0.5, 11)) {
            const TrapParams p = params(0.01, eta);
            const SidebandId sb{n, n};
            worst_pert = std::max(worst_pert, std::abs(full(sb, p)));
            worst_num = std::max(worst_num, std::abs(find_resonance(sb, p, default_n_max(sb, p.eta)).delta_omega_numeric));
        }
    return {worst_pert <= 1e-15 && worst_num <= 1e-10,
            fmt("max |dw| perturbative %.3e, numeric %.3e", worst_pert, worst_num)};
}

Outcome eta_zero_limit() {
    const TrapParams p = params(1e-3, 0.0);
    double worst = 0.0, worst_gap = 0.0;
    bool crossing = true;
    for (SidebandId sb : {SidebandId{0, 1}, SidebandId{1, 0}}) {
        const double expected = -p.rabi * p.rabi / (2.0 * crossing_point(sb, p).detuning);
        const ShiftReport r = find_resonance(sb, p, default_n_max(sb, p.eta));
        worst = std::max({worst, std::abs(full(sb, p) - expected), std::abs(r.delta_omega_numeric - expected)});
        worst_gap = std::max(worst_gap, r.gap);
        crossing = crossing && r.method == ResonanceMethod::intersection && r.gap < 1e-10;
    }
    // informational: at 0.01 the exact crossing sits Omega^4/8 away from the leading-order value
    const TrapParams q = params(0.01, 0.0);
    const double info = std::abs(find_resonance({0, 1}, q, default_n_max({0, 1}, q.eta)).delta_omega_numeric + 0.5e-4);
    return {worst <= 1e-12 && crossing,
            fmt("Omega=1e-3: max deviation %.3e, max gap %.3e, crossing %s; Omega=0.01 numeric deviation %.3e",
                worst, worst_gap, crossing ? "yes" : "no", info)};
}

Outcome ld_remainder() {
    bool pass = true;
    std::string detail;
    for (SidebandId sb : {SidebandId{0, 1}, SidebandId{1, 0}}) {
        auto remainder = [&](double eta) {
            const TrapParams p = params(0.01, eta);
            return std::abs(full(sb, p) - bs_shift_ld(sb, p).delta_omega_ld.value());
        };
        const double ratio = remainder(0.1) / remainder(0.05);
        pass = pass && std::abs(ratio - 16.0) <= 0.2 * 16.0;
        detail += fmt("(%d,%d) ratio %.3f ", sb.n_g, sb.n_e, ratio);
    }
    return {pass, detail};
}

Outcome literature() {
    double worst = 0.0;
    for (double eta : grid(0.0, 0.3, 31)) {
        const TrapParams p = params(0.01, eta);
        const double ld = bs_shift_ld({1, 0}, p).delta_omega_ld.value();
        const double lit = bs_shift_literature({1, 0}, p);
        const double expected = -eta * eta * p.rabi * p.rabi;
        worst = std::max(worst, std::abs((ld - lit) - expected) / std::abs(lit));
    }
    return {worst <= 1e-12, fmt("max relative deviation %.3e over 31 eta values", worst)};
}

Outcome bch_consistency() {
    double worst = 0.0, worst_norm = 0.0;
    for (double eta : {0.1, 0.4, 0.8}) {
        const CouplingTable a = coupling_table(LDParam(eta), 20);
        const CouplingTable b = displacement_oracle(LDParam(eta), 20);
        worst = std::max(worst, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff());
        // rows n <= 20 of a table padded to 80 levels
        const CouplingTable wide = coupling_table(LDParam(eta), 80);
        for (int n = 0; n <= 20; ++n)
            worst_norm = std::max(worst_norm, std::abs(wide.row_norm(n) - 1.0));
    }
    return {worst <= 1e-8 && worst_norm <= 1e-10,
            fmt("max entry difference %.3e, max row-norm defect %.3e", worst, worst_norm)};
}

Outcome splitting() {
    bool pass = true;
    std::string detail;
    const TrapParams p = params(0.01, 0.1);
    for (SidebandId sb : {SidebandId{0, 1}, SidebandId{1, 2}}) {
        const double gap = measure_splitting(sb, p, default_n_max(sb, p.eta));
        const double coupling = std::abs(rabi_coupling(sb.n_g, sb.n_e, p));
        const double rel = std::abs(gap - coupling) / coupling;
        pass = pass && rel <= 0.01;
        detail += fmt("(%d,%d) gap %.6e vs |Omega_nn'| %.6e (half %.6e) rel %.2e; ", sb.n_g, sb.n_e, gap, coupling,
                      coupling / 2.0, rel);
    }
    return {pass, detail};
}

Outcome swap_antisymmetry() {
    double worst = 0.0;
    for (double eta : grid(0.0, 0.5, 11)) {
        const TrapParams p = params(0.01, eta);
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 4; ++b) {
                if (a == b)
                    continue;
                const double x = full({a, b}, p);
                const double y = full({b, a}, p);
                worst = std::max(worst, std::abs(x + y) / std::max(std::abs(x), std::abs(y)));
            }
    }
    return {worst <= 1e-15, fmt("max relative |sum| %.3e", worst)};
}

struct DataRun {
    std::vector<std::string> args;
    std::vector<std::string> columns;
    std::size_t rows;
};

Outcome plot_data() {
    const auto start = Clock::now();
    const std::vector<DataRun> runs = {
        {{"sweep", "--preset", "wide"}, {"delta", "branch_id", "tag", "energy", "overlap_tag"}, 0},
        {{"sweep", "--preset", "blue"}, {"delta", "branch_id", "tag", "energy", "overlap_tag"}, 0},
        {{"scan-eta"}, {"eta", "shift_exact", "shift_full", "shift_ld", "shift_lit"}, 26},
        {{"sidebands"}, {"kind", "order", "n", "ng", "ne", "shift_over_trap", "shift_hz"}, 28},
    };
    std::string problems;
    for (const DataRun& run : runs) {
        auto args = run.args;
        args.insert(args.end(), {"--format", "json"});
        std::ostringstream first, second, err;
        const int code = cli::run(args, first, err);
        const int again = cli::run(args, second, err);
        const std::string name = run.args.size() > 1 ? run.args[2] : run.args[0];
        if (code != 0 || again != 0) {
            problems += name + ": exit code; ";
            continue;
        }
        if (first.str() != second.str())
            problems += name + ": not deterministic; ";
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(first.str());
        } catch (const std::exception&) {
            problems += name + ": not JSON; ";
            continue;
        }
        if (!doc.is_object() || doc.size() != 3 || !doc.contains("config") || !doc["config"].is_object() ||
            !doc.contains("columns") || !doc.contains("rows") || !doc["rows"].is_array()) {
            problems += name + ": top-level keys; ";
            continue;
        }
        if (doc["columns"] != nlohmann::json(run.columns))
            problems += name + ": columns; ";
        if (run.rows != 0 && doc["rows"].size() != run.rows)
            problems += name + ": row count; ";
        if (doc["rows"].empty())
            problems += name + ": empty; ";
        for (const auto& row : doc["rows"]) {
            if (!row.is_array() || row.size() != run.columns.size()) {
                problems += name + ": row width; ";
                break;
            }
        }
        // sweeps: delta-major, with the same branch count at every delta
        if (run.args[0] == "sweep") {
            const auto& rows = doc["rows"];
            std::size_t per_delta = 0;
            while (per_delta < rows.size() && rows[per_delta][0] == rows[0][0])
                ++per_delta;
            bool ordered = per_delta > 0 && rows.size() % per_delta == 0;
            for (std::size_t i = 0; ordered && i < rows.size(); ++i)
                ordered = rows[i][1].get<std::size_t>() == i % per_delta &&
                          (i % per_delta == 0 || rows[i][0] == rows[i - 1][0]) && rows[i][3].is_number();
            if (!ordered)
                problems += name + ": row order; ";
        }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds >= 60.0)
        problems += "too slow; ";
    return {problems.empty(), fmt("%s%.2f s for 4 data runs (each twice)", problems.c_str(), seconds)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"calcium calibration", calcium},
        {"oracle equivalence", oracle_equivalence},
        {"carrier null", carrier_null},
        {"eta = 0 limit", eta_zero_limit},
        {"Lamb-Dicke remainder scaling", ld_remainder},
        {"literature discrepancy", literature},
        {"displacement oracle consistency", bch_consistency},
        {"splitting", splitting},
        {"swap antisymmetry", swap_antisymmetry},
        {"plot data regeneration", plot_data},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass)
            ++failures;
        std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
