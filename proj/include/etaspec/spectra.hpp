#pragma once

// Closed-form bound-state energies E / m0c^2 = [1 + alpha^2 / D^2]^(-1/2),
// D = radial_degree + 1 - eta, together with cancellation-free forms of the
// binding energy and the matching length scale.

#include "etaspec/core.hpp"
#include "etaspec/coupling.hpp"

#include <optional>

namespace etaspec {

/// Dimensionless closed-form solution for one state. Valid for alpha = 0.
struct DimensionlessEnergy {
    CouplingValue coupling;
    /// D = radial_degree + 1 - eta.
    double effective_denominator;
    /// x = alpha^2 / D^2.
    double coupling_ratio;
    /// E / m0c^2.
    double e_ratio;
    /// 1 - E / m0c^2, evaluated without subtracting nearly equal numbers.
    double one_minus_e;
    /// (1 - E / m0c^2) / alpha^2: binding in units of alpha^2 m0c^2
    /// (1 / (2 n^2) in the Schroedinger limit). Finite at alpha = 0.
    double scaled_binding;
};

struct EnergyResult {
    BoundState state;
    DimensionlessEnergy value;
    /// (E - m0c^2) in eV; negative for bound states.
    double binding_energy_eV;

    double e_ratio() const noexcept { return value.e_ratio; }
    double effective_denominator() const noexcept { return value.effective_denominator; }
    double eta() const noexcept { return value.coupling.eta; }
};

struct LengthScale {
    /// r0 in nm.
    double r0_nm;
    /// r0 in units of hbar / m0c: 1 / sqrt(1 - E^2 / m0^2c^4).
    double r0_dimensionless;
};

/// Closed form at an explicit alpha (>= 0). Throws DomainError if D <= 0,
/// which only happens on the hydrino branch; on the Sommerfeld branch it
/// would be an internal error and is reported as std::logic_error.
DimensionlessEnergy solve_energy(const BoundState& state, double alpha);

EnergyResult energy_eigenvalue(const BoundState& state, const PhysicalConstants& constants);

/// E / m0c^2 = [1 + alpha^2 / (n - |kappa| + sqrt(kappa^2 - alpha^2))^2]^(-1/2).
DimensionlessEnergy dirac_form_solve(int n_principal, int kappa, double alpha,
                                     Validity validity = Validity::strict);
EnergyResult dirac_form_energy(int n_principal, int kappa, const PhysicalConstants& constants,
                               Validity validity = Validity::strict);

/// (1 + x)^(-1/2) - 1 = -x / (sqrt(1 + x) (1 + sqrt(1 + x))) for x >= 0.
double relative_binding(double coupling_ratio);

/// m0c^2 ((1 + x)^(-1/2) - 1) in eV, x = alpha^2 / D^2. Takes x rather than
/// E / m0c^2 because E / m0c^2 alone has already lost the binding digits.
double binding_energy_stable(double coupling_ratio, const PhysicalConstants& constants);

/// Fourth-order expansion -(alpha^2 m0c^2 / 2n^2)[1 + (alpha^2/n^2)(n/|kappa| - 3/4)]
/// in eV, for spin-1/2 Sommerfeld-branch states.
double fine_structure_expansion(const BoundState& state, const PhysicalConstants& constants);

/// Throws DomainError when E = m0c^2 (no finite length scale).
LengthScale length_scale(const EnergyResult& result, const PhysicalConstants& constants);
double length_scale_dimensionless(const DimensionlessEnergy& value);

struct Transition {
    /// E_a - E_b in eV.
    double delta_eV;
    /// 2 pi hbar c / |dE|; empty for a degenerate pair.
    std::optional<double> wavelength_nm;
    /// |dE| / h.
    double frequency_Hz;
    bool degenerate() const noexcept { return !wavelength_nm.has_value(); }
};

Transition transition(const EnergyResult& a, const EnergyResult& b, const PhysicalConstants& constants);

}  // namespace etaspec
