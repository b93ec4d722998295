#include "etaspec/report.hpp"

#include "etaspec/errors.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace etaspec {

namespace {

constexpr std::string_view kLetters = "SPDFGHIKLMNOQRTUVWXYZ";

char orbital_letter(int l) {
    if (l < 0 || l >= static_cast<int>(kLetters.size())) throw InvalidStateError("orbital l out of label range");
    return kLetters[static_cast<std::size_t>(l)];
}

int orbital_from_letter(char c) {
    const auto pos = kLetters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (pos == std::string_view::npos) throw std::invalid_argument(std::string("unknown orbital letter '") + c + "'");
    return static_cast<int>(pos);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return value;
}

nlohmann::json row_json(const ReportRow& row) {
    return nlohmann::json{{"mode", row.mode},       {"branch", row.branch}, {"n_principal", row.n_principal},
                          {"angular", row.angular}, {"label", row.label},   {"D", row.D},
                          {"E_ratio", row.E_ratio}, {"binding_eV", row.binding_eV},
                          {"source", row.source},   {"note", row.note}};
}

}  // namespace

std::string spectroscopic_label(int n_principal, int kappa) {
    if (kappa == 0) throw InvalidStateError("spectroscopic label: kappa must be nonzero");
    const int l = kappa > 0 ? kappa : -kappa - 1;
    const int twice_j = 2 * std::abs(kappa) - 1;
    return std::to_string(n_principal) + orbital_letter(l) + std::to_string(twice_j) + "/2";
}

std::string spinless_label(int n_principal, int l) {
    return std::to_string(n_principal) +
           static_cast<char>(std::tolower(static_cast<unsigned char>(orbital_letter(l))));
}

std::string state_label(const BoundState& state) {
    if (state.mode() == SpinMode::spinless) return spinless_label(state.n_principal(), state.angular());
    return spectroscopic_label(state.n_principal(), state.angular());
}

BoundState parse_state_label(std::string_view label, Branch branch, Validity validity) {
    std::size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
    if (i == 0 || i >= label.size()) throw std::invalid_argument("bad state label '" + std::string(label) + "'");
    const int n = std::stoi(std::string(label.substr(0, i)));
    const char letter = label[i];
    const int l = orbital_from_letter(letter);
    const std::string_view rest = label.substr(i + 1);
    if (rest.empty()) {
        if (n < l + 1) throw InvalidStateError("label '" + std::string(label) + "': need n > l");
        return BoundState::make(SpinMode::spinless, n - l - 1, l, branch);
    }
    if (rest.size() < 3 || rest.substr(rest.size() - 2) != "/2") {
        throw std::invalid_argument("bad j suffix in label '" + std::string(label) + "'");
    }
    const int twice_j = std::stoi(std::string(rest.substr(0, rest.size() - 2)));
    int kappa = 0;
    if (twice_j == 2 * l + 1) kappa = -(l + 1);
    else if (twice_j == 2 * l - 1 && l > 0) kappa = l;
    else throw InvalidStateError("label '" + std::string(label) + "': j incompatible with l");
    return map_total_angular_momentum(n, HalfInteger{twice_j}, kappa > 0 ? 1 : -1, branch, validity);
}

ReportRow make_row(const EnergyResult& energy, std::string source) {
    const BoundState& s = energy.state;
    ReportRow row;
    row.mode = std::string(to_string(s.mode()));
    row.branch = std::string(to_string(s.branch()));
    row.n_principal = s.n_principal();
    row.angular = s.angular();
    row.label = state_label(s);
    row.D = energy.effective_denominator();
    row.E_ratio = energy.e_ratio();
    row.binding_eV = energy.binding_energy_eV;
    row.source = std::move(source);
    if (!s.dirac_valid()) row.note = "non-Dirac";
    return row;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
    std::string out = "mode,branch,n,angular,D,E_ratio,binding_eV,label,source,note\n";
    for (const auto& r : rows) {
        out += r.mode + ',' + r.branch + ',' + std::to_string(r.n_principal) + ',' +
               std::to_string(r.angular) + ',' + format_double(r.D) + ',' + format_double(r.E_ratio) +
               ',' + format_double(r.binding_eV) + ',' + r.label + ',' + r.source + ',' + r.note + '\n';
    }
    return out;
}

std::vector<ReportRow> parse_csv(std::string_view text) {
    std::vector<ReportRow> rows;
    bool header = true;
    for (const auto& line : split(text, '\n')) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 10) throw std::invalid_argument("csv row: expected 10 fields");
        ReportRow r;
        r.mode = f[0];
        r.branch = f[1];
        r.n_principal = std::stoi(f[2]);
        r.angular = std::stoi(f[3]);
        r.D = parse_double(f[4]);
        r.E_ratio = parse_double(f[5]);
        r.binding_eV = parse_double(f[6]);
        r.label = f[7];
        r.source = f[8];
        r.note = f[9];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_json(const std::vector<ReportRow>& rows) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : rows) array.push_back(row_json(r));
    return array.dump(2) + '\n';
}

std::string render_text(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(5) << "mode" << std::setw(11) << "branch" << std::setw(9) << "state"
       << std::right << std::setw(4) << "n" << std::setw(5) << "ang" << std::setw(26) << "D"
       << std::setw(26) << "E/m0c^2" << std::setw(26) << "binding [eV]" << "  note\n";
    bool any_dirac_label = false;
    for (const auto& r : rows) {
        const bool spin_half = r.mode == "kg1";
        any_dirac_label |= spin_half;
        os << std::left << std::setw(5) << r.mode << std::setw(11) << r.branch << std::setw(9)
           << (r.label + (spin_half ? "*" : "")) << std::right << std::setw(4) << r.n_principal
           << std::setw(5) << r.angular << std::setw(26) << format_double(r.D) << std::setw(26)
           << format_double(r.E_ratio) << std::setw(26) << format_double(r.binding_eV) << "  " << r.note
           << '\n';
    }
    if (any_dirac_label) os << "* label uses the Dirac l <-> kappa convention (labels only)\n";
    return os.str();
}

std::string render_lines_csv(const std::vector<LineRow>& lines) {
    std::string out = "upper,lower,delta_eV,nm,GHz,note\n";
    for (const auto& l : lines) {
        const auto& t = l.transition;
        out += l.upper + ',' + l.lower + ',' + format_double(t.delta_eV) + ',' +
               (t.wavelength_nm ? format_double(*t.wavelength_nm) : std::string()) + ',' +
               (t.degenerate() ? std::string() : format_double(t.frequency_Hz * 1e-9)) + ',' +
               (t.degenerate() ? "degenerate" : "") + '\n';
    }
    return out;
}

std::string render_lines_json(const std::vector<LineRow>& lines) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& l : lines) {
        const auto& t = l.transition;
        nlohmann::json j{{"upper", l.upper}, {"lower", l.lower}, {"delta_eV", t.delta_eV}};
        j["nm"] = t.wavelength_nm ? nlohmann::json(*t.wavelength_nm) : nlohmann::json(nullptr);
        j["GHz"] = t.degenerate() ? nlohmann::json(nullptr) : nlohmann::json(t.frequency_Hz * 1e-9);
        j["degenerate"] = t.degenerate();
        array.push_back(std::move(j));
    }
    return array.dump(2) + '\n';
}

std::string render_lines_text(const std::vector<LineRow>& lines) {
    std::ostringstream os;
    os << std::left << std::setw(9) << "upper" << std::setw(9) << "lower" << std::right << std::setw(26)
       << "dE [eV]" << std::setw(26) << "wavelength [nm]" << std::setw(26) << "frequency [GHz]" << '\n';
    for (const auto& l : lines) {
        const auto& t = l.transition;
        os << std::left << std::setw(9) << l.upper << std::setw(9) << l.lower << std::right << std::setw(26)
           << format_double(t.delta_eV) << std::setw(26)
           << (t.wavelength_nm ? format_double(*t.wavelength_nm) : "degenerate") << std::setw(26)
           << (t.degenerate() ? "-" : format_double(t.frequency_Hz * 1e-9)) << '\n';
    }
    return os.str();
}

std::string render_report_json_line(const VerificationReport& r) {
    nlohmann::json j{{"mode", std::string(to_string(r.state.mode()))},
                     {"branch", std::string(to_string(r.state.branch()))},
                     {"n_principal", r.state.n_principal()},
                     {"angular", r.state.angular()},
                     {"radial_degree", r.state.radial_degree()},
                     {"label", state_label(r.state)},
                     {"e_closed", r.e_closed},
                     {"e_shoot", r.e_shoot},
                     {"rel_err", r.rel_err},
                     {"binding_rel_err", r.binding_rel_err},
                     {"residual_max", r.residual_max},
                     {"termination_residual", r.termination_residual},
                     {"normalization_error", r.normalization_error},
                     {"node_count_ok", r.node_count_ok},
                     {"status", r.passed ? "PASS" : "FAIL"}};
    if (!r.error.empty()) j["error"] = r.error;
    return j.dump() + '\n';
}

std::string render_reports_text(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(5) << "mode" << std::setw(9) << "state" << std::right << std::setw(26)
       << "E closed" << std::setw(26) << "E shooting" << std::setw(12) << "rel err" << std::setw(12)
       << "residual" << std::setw(7) << "nodes" << "  status\n";
    os << std::scientific << std::setprecision(2);
    for (const auto& r : reports) {
        os << std::left << std::setw(5) << to_string(r.state.mode()) << std::setw(9) << state_label(r.state)
           << std::right << std::setw(26) << format_double(r.e_closed) << std::setw(26)
           << format_double(r.e_shoot) << std::setw(12) << r.rel_err << std::setw(12) << r.residual_max
           << std::setw(7) << (r.node_count_ok ? "ok" : "BAD") << "  " << (r.passed ? "PASS" : "FAIL");
        if (!r.error.empty()) os << " (" << r.error << ")";
        os << '\n';
    }
    return os.str();
}

}  // namespace etaspec
