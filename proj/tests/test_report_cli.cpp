#include "etaspec/cli.hpp"
#include "etaspec/errors.hpp"
#include "etaspec/report.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

using namespace etaspec;

namespace {

const PhysicalConstants& codata() {
    static const PhysicalConstants c = PhysicalConstants::codata2018();
    return c;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text) n += ch == '\n';
    return n;
}

}  // namespace

TEST_CASE("spectroscopic labels") {
    CHECK(spectroscopic_label(1, -1) == "1S1/2");
    CHECK(spectroscopic_label(2, 1) == "2P1/2");
    CHECK(spectroscopic_label(2, -2) == "2P3/2");
    CHECK(spectroscopic_label(3, 2) == "3D3/2");
    CHECK(spectroscopic_label(4, -4) == "4F7/2");
    CHECK_THROWS_AS(spectroscopic_label(2, 0), InvalidStateError);
    CHECK(spinless_label(1, 0) == "1s");
    CHECK(spinless_label(3, 2) == "3d");
    CHECK(state_label(BoundState::make(SpinMode::spin_half, 1, -1)) == "2S1/2");
    CHECK(state_label(BoundState::make(SpinMode::spinless, 1, 1)) == "3p");
}

TEST_CASE("labels parse back to their states") {
    for (int n = 1; n <= 6; ++n) {
        for (int l = 0; l < n; ++l) {
            const auto s = BoundState::spinless(n, l);
            CHECK(parse_state_label(state_label(s)) == s);
        }
        for (int k = 1; k <= n; ++k) {
            const auto minus = BoundState::make(SpinMode::spin_half, n - k, -k);
            CHECK(parse_state_label(state_label(minus)) == minus);
            if (k < n) {
                const auto plus = BoundState::make(SpinMode::spin_half, n - k, k);
                CHECK(parse_state_label(state_label(plus)) == plus);
            }
        }
    }
    CHECK(parse_state_label("1s", Branch::hydrino).branch() == Branch::hydrino);
    CHECK_THROWS(parse_state_label("2S3/2"));
    CHECK_THROWS(parse_state_label("1p"));
    CHECK_THROWS(parse_state_label("x"));
    CHECK_THROWS(parse_state_label("1P1/2"));
    CHECK_FALSE(parse_state_label("1P1/2", Branch::sommerfeld, Validity::relaxed).dirac_valid());
}

TEST_CASE("CSV rendering round-trips bit-exactly") {
    std::vector<ReportRow> rows;
    for (int n = 1; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) rows.push_back(make_row(dirac_form_energy(n, -k, codata())));
        for (int l = 0; l < n; ++l) rows.push_back(make_row(energy_eigenvalue(BoundState::spinless(n, l), codata())));
    }
    rows.push_back(make_row(energy_eigenvalue(BoundState::make(SpinMode::spinless, 0, 0, Branch::hydrino), codata())));
    rows.push_back(make_row(dirac_form_energy(1, 1, codata(), Validity::relaxed)));
    CHECK(rows.back().note == "non-Dirac");

    const std::string csv = render_csv(rows);
    CHECK(csv.rfind("mode,branch,n,angular,D,E_ratio,binding_eV,label,source,note\n", 0) == 0);
    const auto back = parse_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].mode == rows[i].mode);
        CHECK(back[i].branch == rows[i].branch);
        CHECK(back[i].n_principal == rows[i].n_principal);
        CHECK(back[i].angular == rows[i].angular);
        CHECK(back[i].label == rows[i].label);
        CHECK(std::memcmp(&back[i].D, &rows[i].D, sizeof(double)) == 0);
        CHECK(std::memcmp(&back[i].E_ratio, &rows[i].E_ratio, sizeof(double)) == 0);
        CHECK(std::memcmp(&back[i].binding_eV, &rows[i].binding_eV, sizeof(double)) == 0);
        CHECK(back[i].note == rows[i].note);
    }
    CHECK(render_csv(back) == csv);
}

TEST_CASE("format_double round-trips random doubles") {
    std::mt19937_64 rng(20261018);
    for (int i = 0; i < 2000; ++i) {
        double x;
        const std::uint64_t bits = rng();
        std::memcpy(&x, &bits, sizeof x);
        if (!std::isfinite(x)) continue;
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("renderers are pure functions of their rows") {
    const std::vector<ReportRow> rows{make_row(dirac_form_energy(2, -2, codata()))};
    CHECK(render_json(rows) == render_json(rows));
    CHECK(render_text(rows) == render_text(rows));
    const auto json = nlohmann::json::parse(render_json(rows));
    CHECK(json.at(0).at("label") == "2P3/2");
    CHECK(json.at(0).at("E_ratio").get<double>() == rows[0].E_ratio);
    CHECK(render_text(rows).find("2P3/2*") != std::string::npos);

    const std::vector<LineRow> lines{
        {"2S1/2", "2P1/2", transition(dirac_form_energy(2, -1, codata()), dirac_form_energy(2, 1, codata()), codata())}};
    CHECK(render_lines_csv(lines).find("degenerate") != std::string::npos);
    CHECK(nlohmann::json::parse(render_lines_json(lines)).at(0).at("nm").is_null());
}

TEST_CASE("cli energy") {
    const auto r = run({"energy", "--state", "1S1/2"});
    REQUIRE(r.code == cli::ok);
    const auto json = nlohmann::json::parse(r.out);
    CHECK(json.at(0).at("binding_eV").get<double>() == doctest::Approx(-13.606).epsilon(1e-4));
    CHECK(r.err.find("# constants: CODATA 2018") != std::string::npos);
    CHECK(r.err.find("strict-validity: on") != std::string::npos);

    const auto hydrino = run({"--branch", "hydrino", "energy", "--state", "1s"});
    REQUIRE(hydrino.code == cli::ok);
    const auto h = nlohmann::json::parse(hydrino.out).at(0);
    CHECK(h.at("E_ratio").get<double>() * codata().electron_rest_energy_eV() ==
          doctest::Approx(codata().alpha() * codata().electron_rest_energy_eV()).epsilon(0.01));

    const auto by_numbers = run({"energy", "--mode", "kg1", "--kappa", "-2", "--n", "2"});
    REQUIRE(by_numbers.code == cli::ok);
    CHECK(nlohmann::json::parse(by_numbers.out).at(0).at("label") == "2P3/2");
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == cli::usage_error);
    CHECK(run({"bogus"}).code == cli::usage_error);
    CHECK(run({"energy"}).code == cli::usage_error);
    CHECK(run({"energy", "--state", "s1"}).code == cli::usage_error);
    CHECK(run({"--format", "xml", "table"}).code == cli::usage_error);
    // Valid syntax, no such state.
    CHECK(run({"energy", "--mode", "kg1", "--kappa", "1", "--n", "1"}).code == cli::domain_failure);
    CHECK(run({"--branch", "hydrino", "energy", "--state", "2p"}).code == cli::domain_failure);
    CHECK(run({"--constants", "does/not/exist.json", "table"}).code == cli::domain_failure);
    CHECK(run({"verify", "--suite", "quick"}).code == cli::ok);
}

TEST_CASE("cli constants file") {
    const std::string path = "etaspec_cli_constants.json";
    {
        std::ofstream f(path);
        f << R"({"alpha": 0.6, "electron_rest_energy_eV": 510998.95, "hbar_c_eV_nm": 197.3269804})";
    }
    const auto bad = run({"--constants", path, "table"});
    CHECK(bad.code == cli::domain_failure);
    {
        std::ofstream f(path);
        f << R"({"alpha": 0.1, "electron_rest_energy_eV": 510998.95, "hbar_c_eV_nm": 197.3269804})";
    }
    const auto good = run({"--constants", path, "energy", "--state", "1S1/2"});
    REQUIRE(good.code == cli::ok);
    CHECK(nlohmann::json::parse(good.out).at(0).at("E_ratio").get<double>() ==
          doctest::Approx(std::sqrt(1 - 0.01)).epsilon(1e-15));
    CHECK(good.err.find(path) != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli table") {
    const auto r = run({"table", "--mode", "kg1", "--n", "1..3"});
    REQUIRE(r.code == cli::ok);
    CHECK(count_lines(r.out) == 1 + 9);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 9);
    // |kappa| partners agree in every digit.
    CHECK(rows[1].E_ratio == rows[2].E_ratio);
    CHECK(rows[1].binding_eV == rows[2].binding_eV);

    const auto relaxed = run({"--strict-validity", "off", "table", "--mode", "kg1", "--n", "1..3"});
    REQUIRE(relaxed.code == cli::ok);
    const auto all = parse_csv(relaxed.out);
    CHECK(all.size() == 12);
    int flagged = 0;
    for (const auto& row : all) flagged += row.note == "non-Dirac";
    CHECK(flagged == 3);

    const auto kg0 = run({"table", "--mode", "kg0", "--n", "1..2"});
    CHECK(parse_csv(kg0.out).size() == 3);
}

TEST_CASE("cli lines, eta and wavefunction") {
    const auto lines = run({"lines", "--pair", "2P3/2:2P1/2", "--pair", "2S1/2:1S1/2"});
    REQUIRE(lines.code == cli::ok);
    CHECK(lines.out.rfind("upper,lower,delta_eV,nm,GHz,note\n", 0) == 0);
    CHECK(lines.out.find("10.94964") != std::string::npos);

    const auto eta = run({"eta", "--mode", "kg0", "--angular", "0"});
    REQUIRE(eta.code == cli::ok);
    CHECK(nlohmann::json::parse(eta.out).at("eta").get<double>() == doctest::Approx(5.3254e-5).epsilon(1e-4));

    const auto wf = run({"wavefunction", "--state", "2s", "--samples", "50"});
    REQUIRE(wf.code == cli::ok);
    CHECK(count_lines(wf.out) == 51);
    std::istringstream in(wf.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "r,R,r2R2,residual");
    while (std::getline(in, line)) {
        const double residual = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(residual <= 1e-8);
    }
}
