#include "etaspec/errors.hpp"
#include "etaspec/oracle.hpp"
#include "etaspec/radialwave.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <stdexcept>

namespace etaspec {

VerificationReport verify_state(const BoundState& state, const ShootingConfig& config,
                                const PhysicalConstants& constants, const VerifyOptions& options) {
    VerificationReport report{.state = state, .error = {}};
    try {
        const BoundState closed_state = state.with_branch(options.closed_form_branch.value_or(state.branch()));
        const EnergyResult closed = energy_eigenvalue(closed_state, constants);
        report.e_closed = closed.e_ratio();

        const ShootingResult shot = shoot_eigenvalue(state.mode(), state.angular(), state.radial_degree(),
                                                     state.branch(), config, constants);
        report.e_shoot = shot.e_ratio;
        report.rel_err = std::abs(report.e_shoot - report.e_closed) / report.e_closed;
        report.binding_rel_err = std::abs(shot.scaled_binding - closed.value.scaled_binding) /
                                 closed.value.scaled_binding;

        const LengthScale scale = length_scale(closed, constants);
        report.termination_residual = termination_residual(
            closed.eta(), scale.r0_dimensionless, closed.e_ratio() * constants.alpha(), state.radial_degree());
        const RadialSeries series = normalize(series_coefficients(closed_state, closed, scale));

        constexpr int kRadii = 16;
        for (int i = 0; i < kRadii; ++i) {
            const double t = static_cast<double>(i) / (kRadii - 1);
            const double r = 0.1 * std::pow(200.0, t) * series.r0();
            report.residual_max = std::max(report.residual_max, ode_residual(series, closed, r));
        }
        report.node_count_ok = count_nodes(series) == state.radial_degree();
        report.normalization_error = std::abs(norm_integral(series) - 1.0);

        report.passed = report.rel_err <= kVerifyEnergyTolerance &&
                        report.residual_max <= kVerifyResidualTolerance && report.node_count_ok &&
                        report.termination_residual <= kTerminationTolerance &&
                        report.normalization_error <= 1e-8;
    } catch (const std::exception& e) {
        report.error = e.what();
        report.passed = false;
    }
    return report;
}

std::vector<VerificationReport> verify_suite(const std::vector<BoundState>& states,
                                             const ShootingConfig& config,
                                             const PhysicalConstants& constants) {
    std::vector<std::future<VerificationReport>> jobs;
    jobs.reserve(states.size());
    for (const auto& state : states) {
        jobs.push_back(std::async(std::launch::async,
                                  [&config, &constants, state] { return verify_state(state, config, constants); }));
    }
    std::vector<VerificationReport> reports;
    reports.reserve(states.size());
    for (auto& job : jobs) reports.push_back(job.get());
    return reports;
}

std::vector<BoundState> verification_suite(std::string_view name) {
    std::vector<BoundState> states;
    if (name == "quick") {
        states.push_back(BoundState::make(SpinMode::spinless, 0, 0));
        states.push_back(BoundState::make(SpinMode::spinless, 1, 0));
        states.push_back(BoundState::make(SpinMode::spinless, 0, 1));
        for (int n = 1; n <= 2; ++n) {
            for (int kabs = 1; kabs <= n; ++kabs) {
                for (int sign : {-1, 1}) {
                    if (sign > 0 && n == kabs) continue;
                    states.push_back(BoundState::make(SpinMode::spin_half, n - kabs, sign * kabs));
                }
            }
        }
        return states;
    }
    if (name == "full") {
        for (int l = 0; l <= 2; ++l) {
            for (int nr = 0; nr <= 3; ++nr) states.push_back(BoundState::make(SpinMode::spinless, nr, l));
        }
        for (int n = 1; n <= 3; ++n) {
            for (int kabs = 1; kabs <= n; ++kabs) {
                for (int sign : {-1, 1}) {
                    if (sign > 0 && n == kabs) continue;
                    states.push_back(BoundState::make(SpinMode::spin_half, n - kabs, sign * kabs));
                }
            }
        }
        return states;
    }
    throw std::invalid_argument("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace etaspec
