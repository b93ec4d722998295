// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "etaspec/coupling.hpp"
#include "etaspec/errors.hpp"
#include "etaspec/oracle.hpp"
#include "etaspec/radialwave.hpp"
#include "etaspec/spectra.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <string>
#include <vector>

using namespace etaspec;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

std::int64_t ulps(double a, double b) {
    std::int64_t ia, ib;
    std::memcpy(&ia, &a, sizeof a);
    std::memcpy(&ib, &b, sizeof b);
    return ia > ib ? ia - ib : ib - ia;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const PhysicalConstants& codata() {
    static const PhysicalConstants c = PhysicalConstants::codata2018();
    return c;
}

// Dirac-valid (n, kappa) pairs with n <= n_max.
std::vector<std::pair<int, int>> dirac_states(int n_max) {
    std::vector<std::pair<int, int>> out;
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 1; k <= n; ++k) {
            out.emplace_back(n, -k);
            if (k < n) out.emplace_back(n, k);
        }
    }
    return out;
}

Outcome coupling_identities() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double alpha : {codata().alpha(), 0.0, 0.1, 0.4}) {
        for (Branch b : {Branch::sommerfeld, Branch::hydrino}) {
            for (int l = 0; l <= 20; ++l) {
                worst = std::max(worst, eta_identity_residual(eta(SpinMode::spinless, l, alpha, b)));
            }
            for (int k = 1; k <= 20; ++k) {
                for (int kappa : {-k, k}) {
                    const double r = eta_identity_residual(eta(SpinMode::spin_half, kappa, alpha, b));
                    worst = std::max(worst, r / std::max(1.0, double(k) * k));
                }
            }
        }
    }
    const double t = seconds_since(start);
    return {worst <= 1e-12 && t < 1.0, fmt("max residual / max(1, kappa^2) = %.2e, %.3f s", worst, t)};
}

Outcome central_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::int64_t worst = 0;
    int count = 0;
    for (const auto& [n, kappa] : dirac_states(8)) {
        const double direct = dirac_form_energy(n, kappa, codata()).e_ratio();
        const BoundState mapped = map_total_angular_momentum(n, HalfInteger{2 * std::abs(kappa) - 1}, kappa > 0 ? 1 : -1);
        worst = std::max(worst, ulps(direct, energy_eigenvalue(mapped, codata()).e_ratio()));
        ++count;
    }
    const double t = seconds_since(start);
    return {worst <= 4 && t < 1.0, fmt("%d states, max %lld ulp, %.3f s", count, static_cast<long long>(worst), t)};
}

Outcome kappa_degeneracy() {
    int pairs = 0;
    bool all = dirac_form_energy(2, -1, codata()).e_ratio() == dirac_form_energy(2, 1, codata()).e_ratio();
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k < n; ++k) {
            const auto a = dirac_form_energy(n, -k, codata());
            const auto b = dirac_form_energy(n, k, codata());
            all = all && a.e_ratio() == b.e_ratio() && a.binding_energy_eV == b.binding_energy_eV;
            ++pairs;
        }
    }
    return {all, fmt("%d pairs bit-identical", pairs)};
}

Outcome dirac_ground_state() {
    const auto r = dirac_form_energy(1, -1, codata());
    const double a = codata().alpha();
    const std::int64_t d = ulps(r.e_ratio(), std::sqrt(1 - a * a));
    const bool ok = d <= 2 && std::abs(r.binding_energy_eV + 13.606) <= 1e-3;
    return {ok, fmt("E/m0c^2 %lld ulp from sqrt(1 - alpha^2), binding %.6f eV", static_cast<long long>(d),
                    r.binding_energy_eV)};
}

Outcome fine_structure() {
    const double split = transition(dirac_form_energy(2, -2, codata()), dirac_form_energy(2, 1, codata()), codata()).delta_eV;
    const double a = codata().alpha();
    double worst = 0.0;
    for (const auto& [n, kappa] : dirac_states(5)) {
        if (kappa > 0) continue;
        const auto s = BoundState::make(SpinMode::spin_half, n + kappa, kappa);
        worst = std::max(worst, std::abs(fine_structure_expansion(s, codata()) / energy_eigenvalue(s, codata()).binding_energy_eV - 1));
    }
    const bool ok = std::abs(split / 4.528e-5 - 1) <= 0.01 && worst <= a * a;
    return {ok, fmt("2P3/2 - 2P1/2 = %.5e eV, expansion max rel diff %.2e (alpha^2 = %.2e)", split, worst, a * a)};
}

Outcome sommerfeld_vs_dirac() {
    const double kg0 = energy_eigenvalue(BoundState::spinless(2, 0), codata()).binding_energy_eV;
    const double kg1 = dirac_form_energy(2, -1, codata()).binding_energy_eV;
    return {std::abs(kg0 - kg1) > 1e-6, fmt("2s %.9f eV vs 2S1/2 %.9f eV, |diff| %.3e eV", kg0, kg1, std::abs(kg0 - kg1))};
}

Outcome hydrino_branch() {
    const auto& c = codata();
    const auto h = energy_eigenvalue(BoundState::make(SpinMode::spinless, 0, 0, Branch::hydrino), c);
    const double total = h.e_ratio() * c.electron_rest_energy_eV();
    bool ok = std::abs(total / (c.alpha() * c.electron_rest_energy_eV()) - 1) <= 0.01;
    int tested = 0;
    for (int nr = 0; nr <= 4; ++nr) {
        for (int l = 0; l <= 3; ++l) {
            for (SpinMode mode : {SpinMode::spinless, SpinMode::spin_half}) {
                for (int sign : {-1, 1}) {
                    const int angular = mode == SpinMode::spinless ? l : sign * (l + 1);
                    if (mode == SpinMode::spinless && sign > 0) continue;
                    if (mode == SpinMode::spin_half && angular > 0 && nr == 0) continue;
                    const auto s = BoundState::make(mode, nr, angular);
                    double deep;
                    try {
                        deep = energy_eigenvalue(s.with_branch(Branch::hydrino), c).binding_energy_eV;
                    } catch (const DomainError&) {
                        continue;
                    }
                    ok = ok && deep < energy_eigenvalue(s, c).binding_energy_eV;
                    ++tested;
                }
            }
        }
    }
    return {ok, fmt("total E %.1f eV (alpha m0c^2 = %.1f eV), binding %.1f keV, deeper than Sommerfeld in %d states",
                    total, c.alpha() * c.electron_rest_energy_eV(), h.binding_energy_eV * 1e-3, tested)};
}

Outcome oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    const auto states = verification_suite("full");
    for (const auto& s : states) {
        const auto shot = shoot_eigenvalue(s.mode(), s.angular(), s.radial_degree(), s.branch(), ShootingConfig{}, codata());
        worst = std::max(worst, std::abs(shot.e_ratio / energy_eigenvalue(s, codata()).e_ratio() - 1));
    }
    const double t = seconds_since(start);
    return {worst <= 1e-9 && t < 30.0, fmt("%zu states, max rel err %.2e, %.2f s", states.size(), worst, t)};
}

Outcome fd_agreement() {
    const double a = codata().alpha();
    // h = r_max / (N + 1): 19999 -> 9999 points doubles h exactly.
    const auto fine = fd_spectrum(SpinMode::spinless, 0, Branch::sommerfeld, FdGrid{80.0, 19999}, 2, a);
    const auto coarse = fd_spectrum(SpinMode::spinless, 0, Branch::sommerfeld, FdGrid{80.0, 9999}, 2, a);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 2; ++i) {
        const auto closed = solve_energy(BoundState::make(SpinMode::spinless, i, 0), a);
        const double e_fine = std::abs(fine.levels[i].scaled_binding / closed.scaled_binding - 1);
        const double e_coarse = std::abs(coarse.levels[i].scaled_binding / closed.scaled_binding - 1);
        const double ratio = e_coarse / e_fine;
        ok = ok && e_fine <= 1e-5 && ratio >= 3.5 && ratio <= 4.5;
        detail += fmt("%sn_r=%d rel err %.2e (binding), ratio %.2f", i ? "; " : "", i, e_fine, ratio);
    }
    return {ok, detail};
}

Outcome wavefunction_validity() {
    double term = 0.0, resid = 0.0, norm = 0.0;
    bool nodes = true;
    const auto states = verification_suite("full");
    for (const auto& s : states) {
        const auto e = energy_eigenvalue(s, codata());
        const auto scale = length_scale(e, codata());
        term = std::max(term, termination_residual(e.eta(), scale.r0_dimensionless, e.e_ratio() * codata().alpha(),
                                                   s.radial_degree()));
        const auto series = normalize(series_coefficients(s, e, scale));
        for (int i = 0; i < 16; ++i) {
            resid = std::max(resid, ode_residual(series, e, 0.1 * std::pow(200.0, i / 15.0) * series.r0()));
        }
        nodes = nodes && count_nodes(series) == s.radial_degree();
        norm = std::max(norm, std::abs(norm_integral(series) - 1));
    }
    const bool ok = term <= 1e-12 && resid <= 1e-8 && nodes && norm <= 1e-8;
    return {ok, fmt("%zu states: termination %.1e, ODE residual %.1e, nodes %s, |norm - 1| %.1e", states.size(), term,
                    resid, nodes ? "ok" : "WRONG", norm)};
}

Outcome negative_controls() {
    const double a = codata().alpha();
    double weakest = INFINITY;
    bool raised = true;
    for (const auto& s : verification_suite("full")) {
        DimensionlessEnergy v = solve_energy(s, a);
        v.one_minus_e *= 1.001;
        v.scaled_binding *= 1.001;
        v.e_ratio = 1 - v.one_minus_e;
        const double r0 = length_scale_dimensionless(v);
        const auto truncated = make_series(v.coupling, r0, v.e_ratio * a, s.radial_degree());
        double worst = 0.0;
        for (int i = 0; i < 16; ++i) worst = std::max(worst, ode_residual(truncated, v, 0.1 * std::pow(200.0, i / 15.0) * r0));
        weakest = std::min(weakest, worst);
        try {
            series_coefficients(s, v);
            raised = false;
        } catch (const TerminationError&) {
        }
    }
    VerifyOptions wrong;
    wrong.closed_form_branch = Branch::hydrino;
    const auto report = verify_state(BoundState::spinless(1, 0), ShootingConfig{}, codata(), wrong);
    const bool ok = weakest > 1e-4 && raised && !report.passed;
    return {ok, fmt("E x1.001: min residual %.1e, termination %s; wrong branch verify %s", weakest,
                    raised ? "raised" : "NOT raised", report.passed ? "PASS" : "FAIL")};
}

Outcome limits() {
    bool exact = true;
    for (int nr = 0; nr <= 4; ++nr) {
        for (int l = 0; l <= 3; ++l) {
            exact = exact && solve_energy(BoundState::make(SpinMode::spinless, nr, l), 0.0).e_ratio == 1.0;
        }
    }
    for (const auto& [n, kappa] : dirac_states(5)) exact = exact && dirac_form_solve(n, kappa, 0.0).e_ratio == 1.0;

    const auto& c = codata();
    const double a = c.alpha();
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        const double bohr = -a * a * c.electron_rest_energy_eV() / (2.0 * n * n);
        for (int l = 0; l < n; ++l) {
            worst = std::max(worst, std::abs(energy_eigenvalue(BoundState::spinless(n, l), c).binding_energy_eV / bohr - 1));
        }
        for (const auto& [m, kappa] : dirac_states(n)) {
            if (m != n) continue;
            worst = std::max(worst, std::abs(dirac_form_energy(n, kappa, c).binding_energy_eV / bohr - 1));
        }
    }
    return {exact && worst < 10 * a * a,
            fmt("alpha = 0 gives E = m0c^2 %s; max |ratio - 1| %.2e < %.2e", exact ? "exactly" : "NOT exactly", worst,
                10 * a * a)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"coupling identities", coupling_identities},
        {"Dirac-form equivalence", central_equivalence},
        {"|kappa| degeneracy", kappa_degeneracy},
        {"Dirac ground state", dirac_ground_state},
        {"fine-structure split", fine_structure},
        {"spinless vs Dirac", sommerfeld_vs_dirac},
        {"hydrino branch", hydrino_branch},
        {"shooting oracle", oracle_equivalence},
        {"finite-difference oracle", fd_agreement},
        {"wavefunction validity", wavefunction_validity},
        {"negative controls", negative_controls},
        {"limits", limits},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.passed;
        std::printf("%s  [%2d] %s: %s\n", outcome.passed ? "PASS" : "FAIL", index++, name, outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
