#include "etaspec/coupling.hpp"
#include "etaspec/errors.hpp"
#include "etaspec/oracle.hpp"
#include "etaspec/radialwave.hpp"
#include "etaspec/report.hpp"
#include "etaspec/spectra.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace etaspec;

namespace {

PhysicalConstants constants_or_default(const std::optional<PhysicalConstants>& constants) {
    return constants.value_or(PhysicalConstants::codata2018());
}

// (r, R(r)) samples of the normalized eigenfunction on (0, r_max * r0].
py::dict sample_wavefunction(const BoundState& state, const std::optional<PhysicalConstants>& constants,
                             int samples, double r_max) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const PhysicalConstants c = constants_or_default(constants);
    const EnergyResult energy = energy_eigenvalue(state, c);
    const RadialSeries series = normalize(series_coefficients(state, energy, length_scale(energy, c)));
    std::vector<double> r, value, residual;
    for (int i = 1; i <= samples; ++i) {
        const double x = r_max * series.r0() * i / samples;
        r.push_back(x);
        value.push_back(radial_eval(series, x));
        residual.push_back(ode_residual(series, energy, x));
    }
    py::dict out;
    out["r"] = r;
    out["R"] = value;
    out["residual"] = residual;
    out["r0"] = series.r0();
    out["nodes"] = count_nodes(series);
    out["coefficients"] = std::vector<double>(series.scaled_coefficients().begin(), series.scaled_coefficients().end());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Relativistic hydrogen spectra from the eta coupling function";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InvalidStateError>(m, "InvalidStateError", domain.ptr());
    py::register_exception<SubcriticalError>(m, "SubcriticalError", domain.ptr());
    py::register_exception<TerminationError>(m, "TerminationError", domain.ptr());
    py::register_exception<BracketError>(m, "BracketError", domain.ptr());
    py::register_exception<GridTooCoarseError>(m, "GridTooCoarseError", domain.ptr());
    py::register_exception<ConstantsError>(m, "ConstantsError", domain.ptr());

    py::enum_<SpinMode>(m, "SpinMode").value("spinless", SpinMode::spinless).value("spin_half", SpinMode::spin_half);
    py::enum_<Branch>(m, "Branch").value("sommerfeld", Branch::sommerfeld).value("hydrino", Branch::hydrino);
    py::enum_<Validity>(m, "Validity").value("strict", Validity::strict).value("relaxed", Validity::relaxed);

    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def_static("codata2018", &PhysicalConstants::codata2018)
        .def_static("from_json", [](const std::string& text) { return load_constants(text); })
        .def_static("from_file", [](const std::string& path) { return load_constants_file(path); })
        .def_static("with_overrides", [](const std::string& text) { return constants_with_overrides(text); })
        .def_property_readonly("alpha", &PhysicalConstants::alpha)
        .def_property_readonly("electron_rest_energy_eV", &PhysicalConstants::electron_rest_energy_eV)
        .def_property_readonly("hbar_c_eV_nm", &PhysicalConstants::hbar_c_eV_nm)
        .def_property_readonly("planck_eV_per_Hz", &PhysicalConstants::planck_eV_per_Hz)
        .def_property_readonly("provenance", &PhysicalConstants::provenance)
        .def("with_alpha", &PhysicalConstants::with_alpha);

    py::class_<BoundState>(m, "BoundState")
        .def(py::init(&BoundState::make), py::arg("mode"), py::arg("radial_degree"), py::arg("angular"),
             py::arg("branch") = Branch::sommerfeld, py::arg("validity") = Validity::strict)
        .def_static("spinless", &BoundState::spinless, py::arg("n"), py::arg("l"), py::arg("branch") = Branch::sommerfeld)
        .def_static("dirac", [](int n, int kappa, Branch branch, Validity validity) {
            return BoundState::make(SpinMode::spin_half, n - std::abs(kappa), kappa, branch, validity);
        }, py::arg("n"), py::arg("kappa"), py::arg("branch") = Branch::sommerfeld, py::arg("validity") = Validity::strict)
        .def_static("from_label", [](const std::string& label, Branch branch, Validity validity) {
            return parse_state_label(label, branch, validity);
        }, py::arg("label"), py::arg("branch") = Branch::sommerfeld, py::arg("validity") = Validity::strict)
        .def_property_readonly("mode", &BoundState::mode)
        .def_property_readonly("radial_degree", &BoundState::radial_degree)
        .def_property_readonly("angular", &BoundState::angular)
        .def_property_readonly("branch", &BoundState::branch)
        .def_property_readonly("n_principal", &BoundState::n_principal)
        .def_property_readonly("dirac_valid", &BoundState::dirac_valid)
        .def_property_readonly("label", [](const BoundState& s) { return state_label(s); })
        .def("with_branch", &BoundState::with_branch)
        .def("__eq__", [](const BoundState& a, const BoundState& b) { return a == b; })
        .def("__repr__", [](const BoundState& s) {
            return "<BoundState " + state_label(s) + " " + std::string(to_string(s.branch())) + ">";
        });

    py::class_<CouplingValue>(m, "CouplingValue")
        .def_readonly("eta", &CouplingValue::eta)
        .def_readonly("mode", &CouplingValue::mode)
        .def_readonly("angular", &CouplingValue::angular)
        .def_readonly("branch", &CouplingValue::branch)
        .def_readonly("alpha", &CouplingValue::alpha_used)
        .def_property_readonly("identity_residual", [](const CouplingValue& v) { return eta_identity_residual(v); });

    m.def("eta", [](SpinMode mode, int angular, double alpha, Branch branch) { return eta(mode, angular, alpha, branch); },
          py::arg("mode"), py::arg("angular"), py::arg("alpha"), py::arg("branch") = Branch::sommerfeld);

    py::class_<EnergyResult>(m, "EnergyResult")
        .def_readonly("state", &EnergyResult::state)
        .def_readonly("binding_energy_eV", &EnergyResult::binding_energy_eV)
        .def_property_readonly("e_ratio", &EnergyResult::e_ratio)
        .def_property_readonly("effective_denominator", &EnergyResult::effective_denominator)
        .def_property_readonly("eta", &EnergyResult::eta)
        .def_property_readonly("scaled_binding", [](const EnergyResult& r) { return r.value.scaled_binding; });

    m.def("energy", [](const BoundState& s, const std::optional<PhysicalConstants>& c) {
        return energy_eigenvalue(s, constants_or_default(c));
    }, py::arg("state"), py::arg("constants") = py::none());
    m.def("dirac_form_energy", [](int n, int kappa, const std::optional<PhysicalConstants>& c, Validity v) {
        return dirac_form_energy(n, kappa, constants_or_default(c), v);
    }, py::arg("n"), py::arg("kappa"), py::arg("constants") = py::none(), py::arg("validity") = Validity::strict);
    m.def("length_scale_nm", [](const EnergyResult& r, const std::optional<PhysicalConstants>& c) {
        return length_scale(r, constants_or_default(c)).r0_nm;
    }, py::arg("energy"), py::arg("constants") = py::none());

    py::class_<Transition>(m, "Transition")
        .def_readonly("delta_eV", &Transition::delta_eV)
        .def_readonly("wavelength_nm", &Transition::wavelength_nm)
        .def_readonly("frequency_Hz", &Transition::frequency_Hz)
        .def_property_readonly("degenerate", &Transition::degenerate);
    m.def("transition", [](const EnergyResult& a, const EnergyResult& b, const std::optional<PhysicalConstants>& c) {
        return transition(a, b, constants_or_default(c));
    }, py::arg("upper"), py::arg("lower"), py::arg("constants") = py::none());

    m.def("wavefunction", &sample_wavefunction, py::arg("state"), py::arg("constants") = py::none(),
          py::arg("samples") = 200, py::arg("r_max") = 20.0);

    py::class_<ShootingResult>(m, "ShootingResult")
        .def_readonly("e_ratio", &ShootingResult::e_ratio)
        .def_readonly("momentum", &ShootingResult::momentum)
        .def_readonly("scaled_binding", &ShootingResult::scaled_binding)
        .def_readonly("nodes", &ShootingResult::nodes);
    m.def("shoot", [](const BoundState& s, const std::optional<PhysicalConstants>& c) {
        return shoot_eigenvalue(s.mode(), s.angular(), s.radial_degree(), s.branch(), ShootingConfig{},
                                constants_or_default(c));
    }, py::arg("state"), py::arg("constants") = py::none());

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("state", &VerificationReport::state)
        .def_readonly("e_closed", &VerificationReport::e_closed)
        .def_readonly("e_shoot", &VerificationReport::e_shoot)
        .def_readonly("rel_err", &VerificationReport::rel_err)
        .def_readonly("residual_max", &VerificationReport::residual_max)
        .def_readonly("termination_residual", &VerificationReport::termination_residual)
        .def_readonly("normalization_error", &VerificationReport::normalization_error)
        .def_readonly("node_count_ok", &VerificationReport::node_count_ok)
        .def_readonly("passed", &VerificationReport::passed)
        .def_readonly("error", &VerificationReport::error);
    m.def("verify", [](const std::string& suite, const std::optional<PhysicalConstants>& c) {
        const PhysicalConstants constants = constants_or_default(c);
        py::gil_scoped_release release;
        return verify_suite(verification_suite(suite), ShootingConfig{}, constants);
    }, py::arg("suite") = "quick", py::arg("constants") = py::none());
}
