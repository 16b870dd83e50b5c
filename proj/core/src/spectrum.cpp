#include "vbs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "vbs/errors.hpp"

namespace vbs {

namespace {

template <typename Matrix>
void require_success(const Eigen::SelfAdjointEigenSolver<Matrix>& solver, const Matrix& h) {
    if (solver.info() == Eigen::Success)
        return;
    std::ostringstream msg;
    msg << "eigensolver failed: dim=" << h.rows() << " norm=" << h.norm()
        << " asymmetry=" << (h - h.adjoint()).cwiseAbs().maxCoeff();
    throw NumericError(msg.str());
}

}  // namespace

EigenLevels eigenlevels(const HamiltonianMatrix& h) {
    return eigenlevels(h.matrix());
}

EigenLevels eigenlevels(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw InvalidArgument("eigenlevels: matrix must be square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidArgument("eigenlevels: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    require_success(solver, h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealEigenLevels eigenlevels(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols())
        throw InvalidArgument("eigenlevels: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    require_success(solver, h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double level_slope(const RealEigenLevels& levels, int index, int n_max) {
    // dH/d(delta) = diag(+1/2 on g, -1/2 on e)
    const auto v = levels.vectors.col(index);
    const int block = n_max + 1;
    return 0.5 * (v.head(block).squaredNorm() - v.tail(block).squaredNorm());
}

std::string to_string(BareTag tag) {
    return to_string(tag.state) + std::to_string(tag.n);
}

std::string to_string(ResonanceMethod method) {
    switch (method) {
        case ResonanceMethod::extremum: return "extremum";
        case ResonanceMethod::intersection: return "intersection";
        case ResonanceMethod::carrier: return "carrier";
    }
    return "unknown";
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 1)
        throw InvalidArgument("grid needs at least one point");
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw InvalidArgument("grid bounds must be finite with lo <= hi");
    if (points == 1)
        return {lo};
    std::vector<double> grid(points);
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i)
        grid[i] = lo + i * step;
    grid.back() = hi;
    return grid;
}

// ---------------------------------------------------------------------------
// Branch tracking

namespace {

struct Sample {
    double delta;
    RealEigenLevels levels;
};

BareTag dominant_tag(const RealEigenLevels& levels, int index, int n_max) {
    Eigen::Index row = 0;
    levels.vectors.col(index).cwiseAbs2().maxCoeff(&row);
    const int r = static_cast<int>(row);
    return r <= n_max ? BareTag{Internal::g, r} : BareTag{Internal::e, r - n_max - 1};
}

class BranchTracker {
public:
    BranchTracker(const TrapParams& params, int n_max, const TrackingOptions& options)
        : h_(params, n_max), options_(options) {}

    int n_max() const { return h_.n_max(); }

    Sample solve(double delta) const { return {delta, eigenlevels(h_.at(delta))}; }

    // Advances the eigen-index of every followed branch from `from` to `to_delta`,
    // bisecting the interval while any continuation is ambiguous.
    Sample advance(const Sample& from, std::vector<int>& indices, double to_delta, int depth = 0) const {
        Sample to = solve(to_delta);
        std::vector<int> next;
        if (continue_indices(from, to, indices, next)) {
            indices = std::move(next);
            return to;
        }
        if (depth >= options_.max_refinements) {
            std::ostringstream msg;
            msg << "branch tracking ambiguous in delta window [" << from.delta << ", " << to_delta
                << "] after " << depth << " refinements";
            throw GridRefinementRequired(msg.str(), from.delta, to_delta);
        }
        const double mid = 0.5 * (from.delta + to_delta);
        const Sample middle = advance(from, indices, mid, depth + 1);
        return advance(middle, indices, to_delta, depth + 1);
    }

private:
    bool continue_indices(const Sample& from, const Sample& to, const std::vector<int>& indices,
                          std::vector<int>& next) const {
        const Eigen::Index dim = to.levels.values.size();
        const double scale = std::max(1.0, to.levels.values.cwiseAbs().maxCoeff());
        std::vector<char> taken(dim, 0);
        next.resize(indices.size());
        for (std::size_t b = 0; b < indices.size(); ++b) {
            const Eigen::VectorXd overlaps =
                (to.levels.vectors.transpose() * from.levels.vectors.col(indices[b])).cwiseAbs2();
            Eigen::Index best = 0;
            const double best_value = overlaps.maxCoeff(&best);
            double second_value = 0.0;
            Eigen::Index second = -1;
            for (Eigen::Index j = 0; j < dim; ++j)
                if (j != best && overlaps[j] > second_value) {
                    second_value = overlaps[j];
                    second = j;
                }
            const bool degenerate = second >= 0
                && std::abs(to.levels.values[best] - to.levels.values[second]) <= 1e-12 * scale;
            const bool clear = best_value >= options_.min_overlap
                && best_value - second_value >= options_.ambiguity_margin;
            if ((!clear && !degenerate) || taken[best])
                return false;
            taken[best] = 1;
            next[b] = static_cast<int>(best);
        }
        return true;
    }

    RealGaugeHamiltonian h_;
    TrackingOptions options_;
};

void check_grid(std::span<const double> grid) {
    if (grid.empty())
        throw InvalidArgument("detuning grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            throw InvalidArgument("detuning grid contains a non-finite value");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw InvalidArgument("detuning grid must be strictly increasing");
    }
}

}  // namespace

DressedSpectrum sweep_spectrum(const TrapParams& params, std::span<const double> grid, int n_max,
                               const TrackingOptions& options) {
    check_grid(grid);
    const BranchTracker tracker(params, n_max, options);
    const int dim = 2 * (n_max + 1);

    DressedSpectrum spectrum;
    spectrum.grid.assign(grid.begin(), grid.end());

    Sample sample = tracker.solve(grid.front());
    std::vector<int> indices(dim);
    std::iota(indices.begin(), indices.end(), 0);
    spectrum.branches.resize(dim);
    for (int b = 0; b < dim; ++b) {
        spectrum.branches[b].tag = dominant_tag(sample.levels, b, n_max);
        spectrum.branches[b].energies.reserve(grid.size());
        spectrum.branches[b].overlaps.reserve(grid.size());
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0)
            sample = tracker.advance(sample, indices, grid[i]);
        for (int b = 0; b < dim; ++b) {
            Branch& branch = spectrum.branches[b];
            const int row = basis_index(branch.tag.state, branch.tag.n, n_max);
            branch.energies.push_back(sample.levels.values[indices[b]]);
            branch.overlaps.push_back(std::pow(sample.levels.vectors(row, indices[b]), 2));
        }
    }
    return spectrum;
}

Branch track_branch(const TrapParams& params, std::span<const double> grid, BareTag tag, int n_max,
                    const TrackingOptions& options) {
    check_grid(grid);
    if (tag.n < 0 || tag.n > n_max)
        throw InvalidArgument("track_branch: tag outside the truncated basis");
    const BranchTracker tracker(params, n_max, options);
    const int row = basis_index(tag.state, tag.n, n_max);

    Sample sample = tracker.solve(grid.front());
    Eigen::Index start = 0;
    sample.levels.vectors.row(row).cwiseAbs2().maxCoeff(&start);
    std::vector<int> indices{static_cast<int>(start)};

    Branch branch;
    branch.tag = tag;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0)
            sample = tracker.advance(sample, indices, grid[i]);
        branch.energies.push_back(sample.levels.values[indices[0]]);
        branch.overlaps.push_back(std::pow(sample.levels.vectors(row, indices[0]), 2));
    }
    return branch;
}

// ---------------------------------------------------------------------------
// Resonance location

namespace {

constexpr int kCoarsePoints = 101;
constexpr double kMaxHalfWindow = 0.45;  // in units of omega_t; keeps the pair index stable

struct PairSample {
    double delta = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double lower_slope = 0.0;
    // |<g,n_g|v>|^2 of the lower and upper level
    double lower_g = 0.0;
    double upper_g = 0.0;

    double gap() const { return upper - lower; }
    // E(g-tagged) - E(e-tagged); continuous through a true crossing
    double tagged_difference() const { return lower_g >= upper_g ? lower - upper : upper - lower; }
};

class ResonantPair {
public:
    ResonantPair(SidebandId sideband, const TrapParams& params, int n_max)
        : sideband_(sideband), h_(params, n_max), crossing_(crossing_point(sideband, params)) {
        if (std::max(sideband.n_g, sideband.n_e) > n_max)
            throw InvalidArgument("find_resonance: sideband lies outside the truncated basis");
    }

    double omega_t() const { return h_.params().omega_t; }
    const CrossingPoint& crossing() const { return crossing_; }

    PairSample at(double delta) const {
        const RealEigenLevels levels = eigenlevels(h_.at(delta));
        const Eigen::VectorXd& w = levels.values;
        const double threshold = crossing_.energy - 0.5 * omega_t();
        const auto it = std::lower_bound(w.data(), w.data() + w.size(), threshold);
        const int index = static_cast<int>(it - w.data());
        if (index + 1 >= w.size() || w[index + 1] >= crossing_.energy + 0.5 * omega_t()) {
            std::ostringstream msg;
            msg << "resonant pair of sideband (" << sideband_.n_g << "," << sideband_.n_e
                << ") not isolated at delta=" << delta << "; reduce rabi or enlarge n_max";
            throw NumericError(msg.str());
        }
        const int row_g = basis_index(Internal::g, sideband_.n_g, h_.n_max());
        PairSample s;
        s.delta = delta;
        s.lower = w[index];
        s.upper = w[index + 1];
        s.lower_slope = level_slope(levels, index, h_.n_max());
        s.lower_g = std::pow(levels.vectors(row_g, index), 2);
        s.upper_g = std::pow(levels.vectors(row_g, index + 1), 2);
        return s;
    }

private:
    SidebandId sideband_;
    RealGaugeHamiltonian h_;
    CrossingPoint crossing_;
};

template <typename F>
double bracketed_root(F f, double lo, double hi) {
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50),
                                                         iterations);
    if (iterations >= 200)
        throw NumericError("root refinement did not converge");
    return 0.5 * (a + b);
}

std::optional<std::size_t> sign_change(const std::vector<PairSample>& scan, auto value, double near) {
    std::optional<std::size_t> found;
    double best_distance = 0.0;
    for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
        const double a = value(scan[i]);
        const double b = value(scan[i + 1]);
        if (a * b <= 0.0 && (a != 0.0 || b != 0.0)) {
            const double distance = std::abs(0.5 * (scan[i].delta + scan[i + 1].delta) - near);
            if (!found || distance < best_distance) {
                found = i;
                best_distance = distance;
            }
        }
    }
    return found;
}

}  // namespace

ShiftReport find_resonance(SidebandId sideband, const TrapParams& params, int n_max) {
    validate(sideband);
    params.validate();
    const ResonantPair pair(sideband, params, n_max);
    const double omega = params.omega_t;
    const double delta0 = pair.crossing().detuning;

    ShiftReport report;
    report.sideband = sideband;
    report.delta0 = delta0;
    report.n_max_used = n_max;

    const double gap_estimate = std::abs(rabi_coupling(sideband.n_g, sideband.n_e, params));
    double half = std::min(std::max(5.0 * gap_estimate, 0.1 * omega), kMaxHalfWindow * omega);

    for (;;) {
        const std::vector<double> grid = linear_grid(delta0 - half, delta0 + half, kCoarsePoints);
        std::vector<PairSample> scan;
        scan.reserve(grid.size());
        for (double d : grid)
            scan.push_back(pair.at(d));

        const auto crossing_interval = sign_change(scan, [](const PairSample& s) { return s.tagged_difference(); }, delta0);
        const auto slope_interval = sign_change(scan, [](const PairSample& s) { return s.lower_slope; }, delta0);

        if (crossing_interval) {
            const std::size_t i = *crossing_interval;
            const double crossing = bracketed_root([&](double d) { return pair.at(d).tagged_difference(); },
                                                   scan[i].delta, scan[i + 1].delta);
            const double gap_at_crossing = pair.at(crossing).gap();
            if (gap_at_crossing < kGapFloor * omega) {
                report.delta_star = crossing;
                report.gap = gap_at_crossing;
                report.method = sideband.is_carrier() ? ResonanceMethod::carrier : ResonanceMethod::intersection;
                report.delta_omega_numeric = crossing - delta0;
                return report;
            }
        }

        if (slope_interval) {
            const std::size_t i = *slope_interval;
            report.delta_star = bracketed_root([&](double d) { return pair.at(d).lower_slope; },
                                               scan[i].delta, scan[i + 1].delta);
            report.delta_omega_numeric = report.delta_star - delta0;
            report.method = sideband.is_carrier() ? ResonanceMethod::carrier : ResonanceMethod::extremum;

            // closest approach: bracket the coarse gap minimum by its neighbours
            std::size_t j = 0;
            for (std::size_t k = 1; k < scan.size(); ++k)
                if (scan[k].gap() < scan[j].gap())
                    j = k;
            const double lo = scan[j == 0 ? 0 : j - 1].delta;
            const double hi = scan[std::min(j + 1, scan.size() - 1)].delta;
            const auto [where, gap] = boost::math::tools::brent_find_minima(
                [&](double d) { return pair.at(d).gap(); }, lo, hi, 40);
            report.gap = std::min({gap, scan[j].gap(), pair.at(report.delta_star).gap()});
            (void)where;
            return report;
        }

        if (half >= kMaxHalfWindow * omega) {
            std::ostringstream msg;
            msg << "no extremum or crossing of sideband (" << sideband.n_g << "," << sideband.n_e
                << ") within delta0 +- " << half;
            throw NumericError(msg.str());
        }
        half = std::min(2.0 * half, kMaxHalfWindow * omega);
    }
}

double measure_splitting(SidebandId sideband, const TrapParams& params, int n_max) {
    return find_resonance(sideband, params, n_max).gap;
}

ConvergenceResult convergence(SidebandId sideband, const TrapParams& params, int n_max_start) {
    validate(sideband);
    const int base = std::max(sideband.n_g, sideband.n_e);
    if (n_max_start < base)
        throw InvalidArgument("convergence: n_max_start below the sideband's vibrational index");
    const int cap = n_max_start + 240;
    const double omega = params.omega_t;

    ShiftReport current = find_resonance(sideband, params, n_max_start);
    for (;;) {
        const int margin = current.n_max_used - base;
        const int next_n_max = base + std::max(2 * margin, 1);
        if (next_n_max > cap) {
            ConvergenceResult result{current.n_max_used, current.delta_omega_numeric, false, current};
            result.report.converged = false;
            return result;
        }
        ShiftReport refined = find_resonance(sideband, params, next_n_max);
        const double change = std::abs(refined.delta_omega_numeric - current.delta_omega_numeric);
        const double tolerance = std::max(1e-4 * std::abs(refined.delta_omega_numeric), 1e-12 * omega);
        if (change <= tolerance) {
            refined.converged = true;
            return {current.n_max_used, refined.delta_omega_numeric, true, refined};
        }
        current = refined;
    }
}

}  // namespace vbs
