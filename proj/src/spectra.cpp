#include "etaspec/spectra.hpp"

#include "etaspec/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace etaspec {

namespace {

DimensionlessEnergy from_denominator(const CouplingValue& coupling, double denominator) {
    const double alpha = coupling.alpha_used;
    const double x = (alpha / denominator) * (alpha / denominator);
    const double s = std::sqrt(1.0 + x);
    DimensionlessEnergy out{};
    out.coupling = coupling;
    out.effective_denominator = denominator;
    out.coupling_ratio = x;
    out.e_ratio = 1.0 / s;
    out.one_minus_e = x / (s * (1.0 + s));
    out.scaled_binding = 1.0 / (denominator * denominator * s * (1.0 + s));
    return out;
}

void require_denominator(const BoundState& state, double denominator) {
    if (denominator > 0.0) return;
    std::ostringstream os;
    os.precision(17);
    os << "no bound state: effective denominator D = " << denominator << " <= 0 for "
       << to_string(state.mode()) << " angular " << state.angular() << " radial degree "
       << state.radial_degree() << " on the " << to_string(state.branch()) << " branch";
    if (state.branch() == Branch::sommerfeld) throw std::logic_error(os.str());
    throw DomainError(os.str());
}

}  // namespace

DimensionlessEnergy solve_energy(const BoundState& state, double alpha) {
    const CouplingValue coupling = eta(state.mode(), state.angular(), alpha, state.branch());
    const double denominator = (state.radial_degree() + 1) - coupling.eta;
    require_denominator(state, denominator);
    return from_denominator(coupling, denominator);
}

EnergyResult energy_eigenvalue(const BoundState& state, const PhysicalConstants& constants) {
    EnergyResult out{state, solve_energy(state, constants.alpha()), 0.0};
    out.binding_energy_eV = binding_energy_stable(out.value.coupling_ratio, constants);
    return out;
}

DimensionlessEnergy dirac_form_solve(int n_principal, int kappa, double alpha, Validity validity) {
    if (kappa == 0) throw InvalidStateError("kappa must be nonzero");
    const int kappa_abs = std::abs(kappa);
    if (n_principal < kappa_abs) throw InvalidStateError("need n >= |kappa|");
    if (validity == Validity::strict && kappa > 0 && n_principal == kappa_abs) {
        throw InvalidStateError("need n > |kappa| for kappa > 0");
    }
    const CouplingValue coupling = eta(SpinMode::spin_half, kappa, alpha, Branch::sommerfeld);
    // n - |kappa| + sqrt(kappa^2 - alpha^2), reading kappa only through |kappa|.
    const double denominator = (n_principal - kappa_abs) + coupling.root;
    return from_denominator(coupling, denominator);
}

EnergyResult dirac_form_energy(int n_principal, int kappa, const PhysicalConstants& constants,
                               Validity validity) {
    const int kappa_abs = std::abs(kappa);
    const BoundState state = BoundState::make(SpinMode::spin_half, n_principal - kappa_abs, kappa,
                                              Branch::sommerfeld, validity);
    EnergyResult out{state, dirac_form_solve(n_principal, kappa, constants.alpha(), validity), 0.0};
    out.binding_energy_eV = binding_energy_stable(out.value.coupling_ratio, constants);
    return out;
}

double relative_binding(double coupling_ratio) {
    const double s = std::sqrt(1.0 + coupling_ratio);
    return -coupling_ratio / (s * (1.0 + s));
}

double binding_energy_stable(double coupling_ratio, const PhysicalConstants& constants) {
    return constants.electron_rest_energy_eV() * relative_binding(coupling_ratio);
}

double fine_structure_expansion(const BoundState& state, const PhysicalConstants& constants) {
    if (state.mode() != SpinMode::spin_half) {
        throw InvalidStateError("fine-structure expansion needs a spin-1/2 state");
    }
    if (state.branch() != Branch::sommerfeld) {
        throw InvalidStateError("fine-structure expansion is defined on the Sommerfeld branch");
    }
    const double a2 = constants.alpha() * constants.alpha();
    const double n = state.n_principal();
    const double kappa_abs = std::abs(state.angular());
    return -(a2 * constants.electron_rest_energy_eV() / (2.0 * n * n)) *
           (1.0 + (a2 / (n * n)) * (n / kappa_abs - 0.75));
}

double length_scale_dimensionless(const DimensionlessEnergy& value) {
    const double delta = value.one_minus_e;
    // 1 - E^2 = (1 - E)(1 + E).
    const double one_minus_e2 = delta * (2.0 - delta);
    if (!(one_minus_e2 > 0.0)) {
        throw DomainError("length scale: E = m0c^2 is unbound (r0 would be infinite)");
    }
    return 1.0 / std::sqrt(one_minus_e2);
}

LengthScale length_scale(const EnergyResult& result, const PhysicalConstants& constants) {
    const double r0 = length_scale_dimensionless(result.value);
    const double compton_nm = constants.hbar_c_eV_nm() / constants.electron_rest_energy_eV();
    return LengthScale{r0 * compton_nm, r0};
}

Transition transition(const EnergyResult& a, const EnergyResult& b,
                      const PhysicalConstants& constants) {
    Transition out{};
    out.delta_eV = a.binding_energy_eV - b.binding_energy_eV;
    const double magnitude = std::abs(out.delta_eV);
    out.frequency_Hz = magnitude / constants.planck_eV_per_Hz();
    if (magnitude > 0.0) {
        out.wavelength_nm = 2.0 * std::numbers::pi * constants.hbar_c_eV_nm() / magnitude;
    }
    return out;
}

}  // namespace etaspec
