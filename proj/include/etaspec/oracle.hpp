#pragma once

// Numerical cross-checks of the closed forms. Nothing here calls the
// closed-form energy routines except verify_state, which compares the two.
//
// Both oracles solve u'' + [E^2 - 1 + 2 E alpha / r + eta (1 - eta) / r^2] u = 0,
// u = r R, rewritten in Bohr units s = alpha r:
//   u'' = [k^2 - 2 E / s - eta (1 - eta) / s^2] u,   k^2 = (1 - E^2) / alpha^2.
// E enters the potential, so this is a nonlinear eigenproblem; both oracles
// treat E (through k or through the scaled binding w = (1 - E) / alpha^2)
// directly. alpha = 0 reduces to the hydrogen Schroedinger problem in
// Hartree units.

#include "etaspec/core.hpp"
#include "etaspec/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etaspec {

struct ShootingConfig {
    /// Lengths are in units of the Bohr-model radius estimate n / k of the target.
    double r_min = 1e-4;
    double r_max = 30.0;
    double match_point = 1.0;
    /// Relative local error of the adaptive Runge-Kutta integrator.
    double step_tolerance = 1e-12;
    /// Relative tolerance on the root in k (hence far tighter on E).
    double root_tolerance = 1e-13;
};

/// Throws std::invalid_argument unless 0 < r_min < match_point < r_max and
/// both tolerances lie in (0, 1e-6].
void validate(const ShootingConfig& config);

struct ShootingResult {
    double e_ratio;
    /// k = sqrt(1 - E^2) / alpha (Bohr units); 1/n in the Schroedinger limit.
    double momentum;
    /// (1 - E) / alpha^2.
    double scaled_binding;
    int nodes;
    int iterations;
};

/// Eigenvalue with `target_nodes` radial nodes. Throws BracketError when no
/// bracket can be established and DomainError on integrator failure.
/// On the hydrino branch `target_nodes` is the radial degree and levels are
/// located by ordering rather than node count (best effort).
ShootingResult shoot_eigenvalue(SpinMode mode, int angular, int target_nodes, Branch branch,
                                const ShootingConfig& config, double alpha);
ShootingResult shoot_eigenvalue(SpinMode mode, int angular, int target_nodes, Branch branch,
                                const ShootingConfig& config, const PhysicalConstants& constants);

/// Normalized Wronskian mismatch between the outward and inward solutions at
/// the match point, as a function of the trial momentum k. Zero exactly at
/// eigenvalues and free of the poles a raw log-derivative difference has.
double shooting_mismatch(SpinMode mode, int angular, Branch branch, int target_nodes,
                         const ShootingConfig& config, double alpha, double momentum);

/// Nodes of the outward solution over (r_min, r_max) at trial momentum k.
int shooting_node_count(SpinMode mode, int angular, Branch branch, int target_nodes,
                        const ShootingConfig& config, double alpha, double momentum);

struct FdGrid {
    /// Box size in Bohr units (s = alpha r).
    double r_max = 80.0;
    int point_count = 20000;
};

struct FdLevel {
    double e_ratio;
    double scaled_binding;
    int nodes;
    /// |L(w) u| / (|L| |u|) for the returned eigenpair.
    double residual;
};

struct FdSpectrum {
    std::vector<FdLevel> levels;
    /// Same levels on the half-resolution grid (Richardson partner).
    std::vector<double> coarse_scaled_binding;
};

/// Finite-difference oracle: three-point Laplacian, Dirichlet walls, and the
/// quadratic eigenproblem (w^2 A + w B + C) u = 0 in the scaled binding w,
/// solved by shift-invert Arnoldi on its companion linearization. Returns the
/// lowest `count` (<= 5) bound levels, level i having i nodes. Sommerfeld
/// branch only.
FdSpectrum fd_spectrum(SpinMode mode, int angular, Branch branch, const FdGrid& grid, int count,
                       double alpha);
FdSpectrum fd_spectrum(SpinMode mode, int angular, Branch branch, const FdGrid& grid, int count,
                       const PhysicalConstants& constants);

struct VerificationReport {
    BoundState state;
    double e_closed = 0.0;
    double e_shoot = 0.0;
    /// |e_shoot - e_closed| / e_closed.
    double rel_err = 0.0;
    /// Same comparison on the scaled binding, where the digits live.
    double binding_rel_err = 0.0;
    double residual_max = 0.0;
    double termination_residual = 0.0;
    double normalization_error = 0.0;
    bool node_count_ok = false;
    bool passed = false;
    std::string error;
};

inline constexpr double kVerifyEnergyTolerance = 1e-9;
inline constexpr double kVerifyResidualTolerance = 1e-8;

struct VerifyOptions {
    /// Evaluate the closed form on this branch instead of the state's own;
    /// used as a negative control.
    std::optional<Branch> closed_form_branch;
};

/// Closed form vs shooting, plus ODE residual sweep (16 radii in
/// [0.1, 20] r0), node count and normalization. Failures of any step are
/// recorded in the report, never thrown.
VerificationReport verify_state(const BoundState& state, const ShootingConfig& config,
                                const PhysicalConstants& constants, const VerifyOptions& options = {});

/// Runs verify_state over `states` concurrently; reports come back in input order.
std::vector<VerificationReport> verify_suite(const std::vector<BoundState>& states,
                                             const ShootingConfig& config,
                                             const PhysicalConstants& constants);

/// quick: a handful of low states; full: spinless n_r <= 3, l <= 2 and all
/// Dirac-valid spin-1/2 states with n <= 3, Sommerfeld branch.
std::vector<BoundState> verification_suite(std::string_view name);

}  // namespace etaspec
