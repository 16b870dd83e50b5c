#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vbs/hamiltonian.hpp"
#include "vbs/params.hpp"

namespace vbs {

/// Ascending eigenvalues with orthonormal eigenvectors stored column-wise.
struct EigenLevels {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

struct RealEigenLevels {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

EigenLevels eigenlevels(const HamiltonianMatrix& h);

/// Throws InvalidArgument if `h` is not Hermitian, NumericError if the solver fails.
EigenLevels eigenlevels(const Eigen::MatrixXcd& h);
RealEigenLevels eigenlevels(const Eigen::MatrixXd& h);

/// A bare state |state, n> used to label a dressed branch.
struct BareTag {
    Internal state = Internal::g;
    int n = 0;

    friend bool operator==(BareTag, BareTag) = default;
};

std::string to_string(BareTag tag);

/// One continuous dressed level over a detuning grid.
struct Branch {
    BareTag tag;
    std::vector<double> energies;
    /// |<tag|branch>|^2 at every grid sample.
    std::vector<double> overlaps;

    /// False near anti-crossings, where the branch is no longer dominated by its tag.
    bool tag_valid(std::size_t sample) const { return overlaps.at(sample) > 0.5; }
};

struct DressedSpectrum {
    std::vector<double> grid;
    std::vector<Branch> branches;
};

struct TrackingOptions {
    /// Minimum |<v(delta_i)|v(delta_i+1)>|^2 for an unambiguous continuation.
    double min_overlap = 0.5;
    /// Best and second-best continuation must differ by at least this much.
    double ambiguity_margin = 0.05;
    /// Interval bisections allowed before GridRefinementRequired is thrown.
    int max_refinements = 12;
};

/// `points` equally spaced detunings from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int points);

/// Every dressed level over `grid`, continued by maximal eigenvector overlap.
/// Branch ids follow the ascending order at grid.front(); each branch is tagged
/// by its dominant bare state there.
DressedSpectrum sweep_spectrum(const TrapParams& params, std::span<const double> grid, int n_max,
                               const TrackingOptions& options = {});

/// The single branch that starts on the level dominated by `tag` at grid.front().
Branch track_branch(const TrapParams& params, std::span<const double> grid, BareTag tag, int n_max,
                    const TrackingOptions& options = {});

enum class ResonanceMethod { extremum, intersection, carrier };

std::string to_string(ResonanceMethod method);

/// Gap below which two tagged levels are treated as truly crossing.
inline constexpr double kGapFloor = 1e-10;

struct ShiftReport {
    SidebandId sideband;
    double delta0 = 0.0;
    double delta_star = 0.0;
    double delta_omega_numeric = 0.0;
    /// Minimal separation of the resonant pair.
    double gap = 0.0;
    ResonanceMethod method = ResonanceMethod::extremum;
    int n_max_used = 0;
    /// Set only by convergence(); find_resonance alone cannot certify the basis.
    bool converged = false;
};

/// Locates the resonance of `sideband` from exact diagonalization.
///
/// The resonant pair is the two dressed levels within omega_t/2 of the bare
/// crossing energy.  A coarse 101-point scan over delta0 +- max(5 gap, 0.1
/// omega_t) brackets the maximum of the lower level, which is refined by a
/// root solve of the Hellmann-Feynman slope.  If the pair actually crosses
/// (gap below kGapFloor) the crossing of the tagged levels is returned instead.
/// `params.delta` is ignored.
ShiftReport find_resonance(SidebandId sideband, const TrapParams& params, int n_max);

/// Closest-approach gap of the resonant pair.
double measure_splitting(SidebandId sideband, const TrapParams& params, int n_max);

struct ConvergenceResult {
    int n_max_final = 0;
    double delta_omega = 0.0;
    bool converged = false;
    ShiftReport report;
};

/// Doubles the basis margin above max(n_g, n_e) until the shift changes by at
/// most max(1e-4 |dw|, 1e-12 omega_t).  Gives up once n_max would exceed
/// n_max_start + 240.
ConvergenceResult convergence(SidebandId sideband, const TrapParams& params, int n_max_start);

/// dE/d(delta) of eigenvalue `index` of `h` at `delta` by Hellmann-Feynman.
double level_slope(const RealEigenLevels& levels, int index, int n_max);

}  // namespace vbs
