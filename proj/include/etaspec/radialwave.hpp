#pragma once

// Closed-form radial eigenfunctions
//
//   R(r) = N r^(-eta) exp(-r / r0) sum_k a_k r^k
//
// with r in units of hbar / m0c. Substituting into the radial equation
//   (1/r^2)(r^2 R')' + [E^2 - 1 + 2 E alpha / r + eta (1 - eta) / r^2] R = 0
// gives the two-term recurrence
//   a_{k+1} (k+1)(k+2-2 eta) = 2 [(k+1-eta)/r0 - lambda] a_k,  lambda = E alpha,
// which terminates after a_n exactly when lambda r0 = n + 1 - eta. The same
// routine serves both spin modes; only eta differs.

#include "etaspec/coupling.hpp"
#include "etaspec/spectra.hpp"

#include <span>
#include <vector>

namespace etaspec {

class RadialSeries {
public:
    const CouplingValue& coupling() const noexcept { return coupling_; }
    double eta() const noexcept { return coupling_.eta; }
    double r0() const noexcept { return r0_; }
    double lambda() const noexcept { return lambda_; }
    double normalization() const noexcept { return normalization_; }
    int radial_degree() const noexcept { return static_cast<int>(scaled_.size()) - 1; }

    /// Coefficients c_k = a_k r0^k of the polynomial in x = r / r0, c_0 = 1.
    std::span<const double> scaled_coefficients() const noexcept { return scaled_; }

    /// a_k in units of (m0c / hbar)^k. May under/overflow for extreme r0;
    /// scaled_coefficients() never does.
    double coefficient(int k) const;

    RadialSeries with_normalization(double normalization) const;

private:
    friend RadialSeries make_series(const CouplingValue&, double, double, int);
    RadialSeries(CouplingValue coupling, double r0, double lambda, std::vector<double> scaled)
        : coupling_(coupling), r0_(r0), lambda_(lambda), scaled_(std::move(scaled)) {}

    CouplingValue coupling_;
    double r0_;
    double lambda_;
    std::vector<double> scaled_;
    double normalization_ = 1.0;
};

/// Terminating-coefficient test: |c_{n+1}| / max_k |c_k| where c_{n+1} is the
/// recurrence applied once past the last coefficient. Scale-free because it
/// works in x = r / r0.
double termination_residual(double eta, double r0, double lambda, int radial_degree);

/// Raw recurrence, unchecked: coefficients c_0..c_n in x = r / r0.
/// Throws DomainError when k + 2 - 2 eta vanishes.
RadialSeries make_series(const CouplingValue& coupling, double r0, double lambda, int radial_degree);

inline constexpr double kTerminationTolerance = 1e-12;

/// Builds the series for `state` from its closed-form energy and length
/// scale. Throws TerminationError when the recurrence fails to terminate
/// within kTerminationTolerance (an inconsistent state/energy pair).
RadialSeries series_coefficients(const BoundState& state, const EnergyResult& energy,
                                 const LengthScale& scale);

/// Same from a dimensionless energy (alpha may be tiny).
RadialSeries series_coefficients(const BoundState& state, const DimensionlessEnergy& energy);

/// R(r) for r > 0.
double radial_eval(const RadialSeries& series, double r);

/// Sets the normalization so that the integral of R^2 r^2 over (0, inf) is 1.
/// Throws DomainError if r^2 R^2 is not integrable at the origin.
RadialSeries normalize(const RadialSeries& series);

/// Integral of R^2 r^2 over (0, inf) for the series as it stands.
double norm_integral(const RadialSeries& series);

/// Number of positive real roots of the polynomial factor.
int count_nodes(const RadialSeries& series);

/// Positions x = r / r0 of the positive polynomial roots, ascending.
std::vector<double> node_positions(const RadialSeries& series);

/// Radial-equation residual at r, using E from `energy` and analytic
/// derivatives of the series, divided by the largest constituent term.
double ode_residual(const RadialSeries& series, const DimensionlessEnergy& energy, double r);
double ode_residual(const RadialSeries& series, const EnergyResult& energy, double r);

}  // namespace etaspec
