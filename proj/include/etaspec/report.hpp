#pragma once

// Report rows and their text/CSV/JSON renderings. Formatting only: every
// number in a row comes from the spectra or oracle modules.

#include "etaspec/oracle.hpp"
#include "etaspec/spectra.hpp"

#include <string>
#include <vector>

namespace etaspec {

/// "2S1/2", "2P3/2", ... using l = kappa (kappa > 0), l = -kappa - 1 (kappa < 0).
/// Throws InvalidStateError for kappa == 0.
std::string spectroscopic_label(int n_principal, int kappa);

/// "1s", "2p", ... for spinless states.
std::string spinless_label(int n_principal, int l);

std::string state_label(const BoundState& state);

/// Inverse of spectroscopic_label / spinless_label. Upper-case letter with a
/// j suffix gives a spin-1/2 state; otherwise a spinless one.
BoundState parse_state_label(std::string_view label, Branch branch = Branch::sommerfeld,
                             Validity validity = Validity::strict);

struct ReportRow {
    std::string mode;
    std::string branch;
    int n_principal = 0;
    int angular = 0;
    std::string label;
    double D = 0.0;
    double E_ratio = 0.0;
    double binding_eV = 0.0;
    std::string source;
    /// "non-Dirac" for spin-1/2 rows admitted only by relaxed validity.
    std::string note;
};

ReportRow make_row(const EnergyResult& energy, std::string source = "closed-form");

/// %.17g: round-trips every double bit-exactly.
std::string format_double(double value);

std::string render_csv(const std::vector<ReportRow>& rows);
std::string render_json(const std::vector<ReportRow>& rows);
std::string render_text(const std::vector<ReportRow>& rows);

/// Parses render_csv output back into rows.
std::vector<ReportRow> parse_csv(std::string_view text);

struct LineRow {
    std::string upper;
    std::string lower;
    Transition transition;
};

std::string render_lines_csv(const std::vector<LineRow>& lines);
std::string render_lines_json(const std::vector<LineRow>& lines);
std::string render_lines_text(const std::vector<LineRow>& lines);

std::string render_report_json_line(const VerificationReport& report);
std::string render_reports_text(const std::vector<VerificationReport>& reports);

}  // namespace etaspec
