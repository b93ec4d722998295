#include "etaspec/cli.hpp"

#include "etaspec/coupling.hpp"
#include "etaspec/errors.hpp"
#include "etaspec/oracle.hpp"
#include "etaspec/radialwave.hpp"
#include "etaspec/report.hpp"
#include "etaspec/spectra.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

namespace etaspec::cli {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GlobalOptions {
    std::string constants_path;
    std::string branch = "sommerfeld";
    std::string format;
    std::string strict = "on";
};

struct StateOptions {
    std::string label;
    std::string mode;
    std::optional<int> l;
    std::optional<int> kappa;
    std::optional<int> nr;
    std::optional<int> n;
};

void add_state_options(CLI::App* cmd, StateOptions& s) {
    cmd->add_option("--state", s.label, "State label, e.g. 2P3/2 (kg1) or 2p (kg0)");
    cmd->add_option("--mode", s.mode, "kg0 (spinless) or kg1 (spin-corrected)")
        ->check(CLI::IsMember({"kg0", "kg1"}));
    cmd->add_option("--l", s.l, "Orbital quantum number (kg0)");
    cmd->add_option("--kappa", s.kappa, "Dirac quantum number (kg1)");
    cmd->add_option("--nr", s.nr, "Radial degree (number of radial nodes)");
    cmd->add_option("--n", s.n, "Principal quantum number");
}

Validity validity_of(const GlobalOptions& g) { return g.strict == "off" ? Validity::relaxed : Validity::strict; }

BoundState resolve_state(const StateOptions& s, const GlobalOptions& g) {
    const Branch branch = parse_branch(g.branch);
    if (!s.label.empty()) return parse_state_label(s.label, branch, validity_of(g));
    if (s.mode.empty()) throw UsageError("give --state or --mode with quantum numbers");
    const SpinMode mode = parse_mode(s.mode);
    std::optional<int> angular = mode == SpinMode::spinless ? s.l : s.kappa;
    if (!angular) throw UsageError(mode == SpinMode::spinless ? "--l is required for kg0" : "--kappa is required for kg1");
    int radial = 0;
    if (s.nr) {
        radial = *s.nr;
    } else if (s.n) {
        radial = mode == SpinMode::spinless ? *s.n - *angular - 1 : *s.n - std::abs(*angular);
    } else {
        throw UsageError("give --nr or --n");
    }
    return BoundState::make(mode, radial, *angular, branch, validity_of(g));
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw UsageError("bad range '" + text + "' (expected A..B or A)");
    }
}

PhysicalConstants resolve_constants(const GlobalOptions& g) {
    if (g.constants_path.empty()) return PhysicalConstants::codata2018();
    return load_constants_file(g.constants_path);
}

void log_header(std::ostream& err, const PhysicalConstants& constants, const GlobalOptions& g) {
    err << "# constants: " << constants.provenance() << "; strict-validity: " << g.strict << '\n';
}

std::string format_or(const GlobalOptions& g, const char* fallback) {
    return g.format.empty() ? std::string(fallback) : g.format;
}

std::vector<BoundState> table_states(SpinMode mode, int n_lo, int n_hi, Branch branch, Validity validity) {
    if (n_lo < 1 || n_hi < n_lo) throw UsageError("range must satisfy 1 <= A <= B");
    std::vector<BoundState> states;
    for (int n = n_lo; n <= n_hi; ++n) {
        if (mode == SpinMode::spinless) {
            for (int l = 0; l < n; ++l) states.push_back(BoundState::make(mode, n - l - 1, l, branch));
            continue;
        }
        // Order S1/2, P1/2, P3/2, D3/2, D5/2, ...: kappa = -1, +1, -2, +2, ...
        for (int kabs = 1; kabs <= n; ++kabs) {
            for (int sign : {-1, 1}) {
                const int kappa = sign * kabs;
                const int radial = n - kabs;
                if (kappa > 0 && radial == 0 && validity == Validity::strict) continue;
                states.push_back(BoundState::make(mode, radial, kappa, branch, validity));
            }
        }
    }
    return states;
}

// Evaluates every state, dropping those without a bound solution on the
// requested branch (reported on stderr).
std::vector<EnergyResult> energies(const std::vector<BoundState>& states, const PhysicalConstants& constants,
                                   std::ostream& err) {
    std::vector<EnergyResult> out;
    for (const auto& s : states) {
        try {
            out.push_back(energy_eigenvalue(s, constants));
        } catch (const DomainError& e) {
            err << "# skipped " << state_label(s) << ": " << e.what() << '\n';
        }
    }
    return out;
}

void emit_rows(const std::vector<ReportRow>& rows, const std::string& format, std::ostream& out) {
    if (format == "json") out << render_json(rows);
    else if (format == "csv") out << render_csv(rows);
    else out << render_text(rows);
}

int cmd_eta(const GlobalOptions& g, const std::string& mode_text, int angular, std::ostream& out,
            std::ostream& err) {
    const PhysicalConstants constants = resolve_constants(g);
    log_header(err, constants, g);
    const CouplingValue v = eta(parse_mode(mode_text), angular, constants.alpha(), parse_branch(g.branch));
    const double residual = eta_identity_residual(v);
    const std::string format = format_or(g, "json");
    if (format == "csv") {
        out << "mode,angular,branch,alpha,eta,identity_residual\n"
            << mode_text << ',' << angular << ',' << g.branch << ',' << format_double(v.alpha_used) << ','
            << format_double(v.eta) << ',' << format_double(residual) << '\n';
    } else if (format == "text") {
        out << "eta(" << mode_text << ", " << angular << ", " << g.branch << ") = " << format_double(v.eta)
            << "  (identity residual " << format_double(residual) << ")\n";
    } else {
        const nlohmann::json j{{"mode", mode_text}, {"angular", angular},  {"branch", g.branch},
                               {"alpha", v.alpha_used}, {"eta", v.eta}, {"identity_residual", residual}};
        out << j.dump(2) << '\n';
    }
    return ok;
}

int cmd_energy(const GlobalOptions& g, const StateOptions& s, std::ostream& out, std::ostream& err) {
    const PhysicalConstants constants = resolve_constants(g);
    log_header(err, constants, g);
    const BoundState state = resolve_state(s, g);
    emit_rows({make_row(energy_eigenvalue(state, constants))}, format_or(g, "json"), out);
    return ok;
}

int cmd_table(const GlobalOptions& g, const std::string& mode_text, const std::string& range, std::ostream& out,
              std::ostream& err) {
    const PhysicalConstants constants = resolve_constants(g);
    log_header(err, constants, g);
    const auto [lo, hi] = parse_range(range);
    const auto states = table_states(parse_mode(mode_text), lo, hi, parse_branch(g.branch), validity_of(g));
    std::vector<ReportRow> rows;
    for (const auto& e : energies(states, constants, err)) rows.push_back(make_row(e));
    emit_rows(rows, format_or(g, "csv"), out);
    return ok;
}

int cmd_lines(const GlobalOptions& g, const std::string& mode_text, const std::string& range,
              const std::vector<std::string>& pairs, std::ostream& out, std::ostream& err) {
    const PhysicalConstants constants = resolve_constants(g);
    log_header(err, constants, g);
    const Branch branch = parse_branch(g.branch);
    std::vector<LineRow> lines;
    if (!pairs.empty()) {
        for (const auto& pair : pairs) {
            const auto sep = pair.find(':');
            if (sep == std::string::npos) throw UsageError("--pair expects UPPER:LOWER, got '" + pair + "'");
            const auto a = energy_eigenvalue(parse_state_label(pair.substr(0, sep), branch, validity_of(g)), constants);
            const auto b = energy_eigenvalue(parse_state_label(pair.substr(sep + 1), branch, validity_of(g)), constants);
            lines.push_back({state_label(a.state), state_label(b.state), transition(a, b, constants)});
        }
    } else {
        const auto [lo, hi] = parse_range(range);
        const auto levels = energies(table_states(parse_mode(mode_text), lo, hi, branch, validity_of(g)), constants, err);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            for (std::size_t j = 0; j < levels.size(); ++j) {
                if (i == j) continue;
                const auto& a = levels[i];
                const auto& b = levels[j];
                // Each unordered pair once, upper level first; equal energies by list order.
                const bool upper = a.binding_energy_eV > b.binding_energy_eV ||
                                   (a.binding_energy_eV == b.binding_energy_eV && i < j);
                if (!upper) continue;
                lines.push_back({state_label(a.state), state_label(b.state), transition(a, b, constants)});
            }
        }
    }
    const std::string format = format_or(g, "csv");
    if (format == "json") out << render_lines_json(lines);
    else if (format == "text") out << render_lines_text(lines);
    else out << render_lines_csv(lines);
    return ok;
}

int cmd_wavefunction(const GlobalOptions& g, const StateOptions& s, int samples, double rmax, std::ostream& out,
                     std::ostream& err) {
    if (samples < 1) throw UsageError("--samples must be >= 1");
    if (!(rmax > 0.0)) throw UsageError("--rmax must be positive");
    const PhysicalConstants constants = resolve_constants(g);
    log_header(err, constants, g);
    const BoundState state = resolve_state(s, g);
    const EnergyResult energy = energy_eigenvalue(state, constants);
    const LengthScale scale = length_scale(energy, constants);
    const RadialSeries series = normalize(series_coefficients(state, energy, scale));
    err << "# state " << state_label(state) << " (" << to_string(state.branch()) << "), r0 = "
        << format_double(scale.r0_dimensionless) << " hbar/m0c = " << format_double(scale.r0_nm)
        << " nm; r in units of hbar/m0c\n";
    const std::string format = format_or(g, "csv");
    nlohmann::json array = nlohmann::json::array();
    if (format != "json") out << "r,R,r2R2,residual\n";
    for (int i = 1; i <= samples; ++i) {
        const double r = rmax * series.r0() * i / samples;
        const double value = radial_eval(series, r);
        const double density = r * r * value * value;
        const double residual = ode_residual(series, energy, r);
        if (format == "json") {
            array.push_back({{"r", r}, {"R", value}, {"r2R2", density}, {"residual", residual}});
        } else {
            out << format_double(r) << ',' << format_double(value) << ',' << format_double(density) << ','
                << format_double(residual) << '\n';
        }
    }
    if (format == "json") out << array.dump(2) << '\n';
    return ok;
}

int cmd_verify(const GlobalOptions& g, const std::string& suite, std::ostream& out, std::ostream& err) {
    const PhysicalConstants constants = resolve_constants(g);
    log_header(err, constants, g);
    const auto reports = verify_suite(verification_suite(suite), ShootingConfig{}, constants);
    const std::string format = format_or(g, "json");
    if (format == "text") {
        out << render_reports_text(reports);
    } else {
        for (const auto& r : reports) out << render_report_json_line(r);
    }
    int failures = 0;
    for (const auto& r : reports) failures += r.passed ? 0 : 1;
    err << "verify " << suite << ": " << reports.size() - failures << '/' << reports.size() << " PASS";
    if (failures) err << ", " << failures << " FAIL";
    err << '\n';
    return failures ? domain_failure : ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relativistic hydrogen spectra from the eta coupling function", "etaspec"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--constants", g.constants_path, "Constants document (JSON)")->envname("ETASPEC_CONSTANTS");
    app.add_option("--branch", g.branch, "Coupling branch")->check(CLI::IsMember({"sommerfeld", "hydrino"}));
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--strict-validity", g.strict, "Reject kappa > 0 states with zero radial degree")
        ->check(CLI::IsMember({"on", "off"}));

    std::string eta_mode;
    int eta_angular = 0;
    auto* eta_cmd = app.add_subcommand("eta", "Coupling value and identity residual");
    eta_cmd->add_option("--mode", eta_mode, "kg0 or kg1")->required()->check(CLI::IsMember({"kg0", "kg1"}));
    eta_cmd->add_option("--angular", eta_angular, "l (kg0) or kappa (kg1)")->required();

    StateOptions energy_state;
    auto* energy_cmd = app.add_subcommand("energy", "Closed-form energy of one state");
    add_state_options(energy_cmd, energy_state);

    std::string table_mode = "kg1";
    std::string table_range = "1..3";
    auto* table_cmd = app.add_subcommand("table", "Closed-form energies over a range of n");
    table_cmd->add_option("--mode", table_mode, "kg0 or kg1")->check(CLI::IsMember({"kg0", "kg1"}));
    table_cmd->add_option("--n", table_range, "Principal quantum numbers, A..B");

    std::string lines_mode = "kg1";
    std::string lines_range = "1..2";
    std::vector<std::string> lines_pairs;
    auto* lines_cmd = app.add_subcommand("lines", "Transition energies, wavelengths and frequencies");
    lines_cmd->add_option("--mode", lines_mode, "kg0 or kg1")->check(CLI::IsMember({"kg0", "kg1"}));
    lines_cmd->add_option("--n", lines_range, "Principal quantum numbers, A..B (all pairs)");
    lines_cmd->add_option("--pair", lines_pairs, "UPPER:LOWER state labels, e.g. 2P3/2:2P1/2");

    StateOptions wave_state;
    int samples = 200;
    double rmax = 20.0;
    auto* wave_cmd = app.add_subcommand("wavefunction", "Sample the normalized radial eigenfunction");
    add_state_options(wave_cmd, wave_state);
    wave_cmd->add_option("--samples", samples, "Number of radii");
    wave_cmd->add_option("--rmax", rmax, "Largest radius in units of r0");

    std::string suite = "quick";
    auto* verify_cmd = app.add_subcommand("verify", "Closed forms vs the shooting oracle");
    verify_cmd->add_option("--suite", suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("etaspec");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    }

    try {
        if (*eta_cmd) return cmd_eta(g, eta_mode, eta_angular, out, err);
        if (*energy_cmd) return cmd_energy(g, energy_state, out, err);
        if (*table_cmd) return cmd_table(g, table_mode, table_range, out, err);
        if (*lines_cmd) return cmd_lines(g, lines_mode, lines_range, lines_pairs, out, err);
        if (*wave_cmd) return cmd_wavefunction(g, wave_state, samples, rmax, out, err);
        if (*verify_cmd) return cmd_verify(g, suite, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return domain_failure;
    }
    return usage_error;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace etaspec::cli
