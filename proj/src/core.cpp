#include "etaspec/core.hpp"

#include "etaspec/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace etaspec {

namespace {

// CODATA 2018 recommended values. The only place these numbers live.
constexpr std::string_view kDefaultDocument = R"({
  "alpha": 7.2973525693e-3,
  "electron_rest_energy_eV": 0.51099895000e6,
  "hbar_c_eV_nm": 197.3269804,
  "planck_eV_per_Hz": 4.135667696e-15
})";

double require_positive(const nlohmann::json& doc, const char* key, bool required,
                        double fallback) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        if (required) throw ConstantsError(std::string("constants document: missing key '") + key + "'");
        return fallback;
    }
    if (!it->is_number()) {
        throw ConstantsError(std::string("constants document: '") + key + "' is not a number");
    }
    const double value = it->get<double>();
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConstantsError(std::string("constants document: '") + key + "' must be positive");
    }
    return value;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0)) throw ConstantsError("constants: alpha must be positive");
    if (!(alpha < 0.5)) {
        throw ConstantsError("constants: alpha must be < 0.5 for real l = 0 spinless couplings");
    }
}

}  // namespace

PhysicalConstants::PhysicalConstants(double alpha, double rest, double hbar_c, double planck,
                                     std::string provenance)
    : alpha_(alpha),
      rest_energy_eV_(rest),
      hbar_c_eV_nm_(hbar_c),
      planck_eV_per_Hz_(planck),
      provenance_(std::move(provenance)) {}

PhysicalConstants PhysicalConstants::codata2018() {
    static const PhysicalConstants defaults = load_constants(kDefaultDocument, "CODATA 2018 (built-in)");
    return defaults;
}

PhysicalConstants PhysicalConstants::with_alpha(double alpha) const {
    check_alpha(alpha);
    PhysicalConstants out = *this;
    out.alpha_ = alpha;
    std::ostringstream os;
    os.precision(17);
    os << provenance_ << "; alpha overridden to " << alpha;
    out.provenance_ = os.str();
    return out;
}

std::string_view default_constants_document() { return kDefaultDocument; }

PhysicalConstants load_constants(std::string_view json_text, std::string provenance) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConstantsError(std::string("constants document: ") + e.what());
    }
    if (!doc.is_object()) throw ConstantsError("constants document: expected a JSON object");

    const auto defaults = nlohmann::json::parse(kDefaultDocument);
    const double alpha = require_positive(doc, "alpha", true, 0.0);
    check_alpha(alpha);
    const double rest = require_positive(doc, "electron_rest_energy_eV", true, 0.0);
    const double hbar_c = require_positive(doc, "hbar_c_eV_nm", true, 0.0);
    const double planck =
        require_positive(doc, "planck_eV_per_Hz", false, defaults["planck_eV_per_Hz"].get<double>());
    return PhysicalConstants(alpha, rest, hbar_c, planck, std::move(provenance));
}

PhysicalConstants load_constants_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConstantsError("cannot open constants file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_constants(buffer.str(), path.string());
}

PhysicalConstants constants_with_overrides(std::string_view overrides_json) {
    auto doc = nlohmann::json::parse(kDefaultDocument);
    std::string provenance = "CODATA 2018 (built-in)";
    if (!overrides_json.empty()) {
        nlohmann::json overrides;
        try {
            overrides = nlohmann::json::parse(overrides_json);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConstantsError(std::string("constants overrides: ") + e.what());
        }
        if (!overrides.is_object()) throw ConstantsError("constants overrides: expected a JSON object");
        if (!overrides.empty()) {
            doc.merge_patch(overrides);
            provenance += " with overrides " + overrides.dump();
        }
    }
    return load_constants(doc.dump(), std::move(provenance));
}

std::string_view to_string(Branch branch) noexcept {
    return branch == Branch::sommerfeld ? "sommerfeld" : "hydrino";
}

std::string_view to_string(SpinMode mode) noexcept {
    return mode == SpinMode::spinless ? "kg0" : "kg1";
}

Branch parse_branch(std::string_view text) {
    if (text == "sommerfeld" || text == "minus") return Branch::sommerfeld;
    if (text == "hydrino" || text == "plus") return Branch::hydrino;
    throw std::invalid_argument("unknown branch '" + std::string(text) + "'");
}

SpinMode parse_mode(std::string_view text) {
    if (text == "kg0" || text == "0") return SpinMode::spinless;
    if (text == "kg1" || text == "1") return SpinMode::spin_half;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

BoundState BoundState::make(SpinMode mode, int radial_degree, int angular, Branch branch,
                            Validity validity) {
    if (radial_degree < 0) throw InvalidStateError("radial degree must be >= 0");
    if (mode == SpinMode::spinless) {
        if (angular < 0) throw InvalidStateError("spinless states need l >= 0");
    } else if (mode == SpinMode::spin_half) {
        if (angular == 0) throw InvalidStateError("spin-1/2 states need kappa != 0");
        if (validity == Validity::strict && angular > 0 && radial_degree == 0) {
            throw InvalidStateError("kappa > 0 with radial degree 0 has no Dirac counterpart "
                                    "(disable strict validity to explore it)");
        }
    } else {
        throw InvalidStateError("spin mode must be 0 or 1");
    }
    return BoundState(mode, radial_degree, angular, branch);
}

BoundState BoundState::spinless(int n_principal, int l, Branch branch) {
    if (l < 0) throw InvalidStateError("spinless states need l >= 0");
    if (n_principal < l + 1) throw InvalidStateError("spinless states need n > l");
    return make(SpinMode::spinless, n_principal - l - 1, l, branch);
}

int BoundState::n_principal() const noexcept {
    if (mode_ == SpinMode::spinless) return radial_degree_ + angular_ + 1;
    return radial_degree_ + std::abs(angular_);
}

bool BoundState::dirac_valid() const noexcept {
    return mode_ == SpinMode::spinless || !(angular_ > 0 && radial_degree_ == 0);
}

BoundState BoundState::with_branch(Branch branch) const {
    BoundState out = *this;
    out.branch_ = branch;
    return out;
}

BoundState map_total_angular_momentum(int n_principal, HalfInteger j, int kappa_sign, Branch branch,
                                      Validity validity) {
    if (j.twice <= 0 || j.twice % 2 == 0) {
        throw InvalidStateError("j must be a positive half-integer");
    }
    if (kappa_sign != 1 && kappa_sign != -1) throw InvalidStateError("kappa sign must be +1 or -1");
    if (n_principal < 1) throw InvalidStateError("principal quantum number must be >= 1");
    const int kappa_abs = (j.twice + 1) / 2;
    const int radial_degree = n_principal - kappa_abs;
    if (radial_degree < 0) throw InvalidStateError("j too large for the principal quantum number");
    return BoundState::make(SpinMode::spin_half, radial_degree, kappa_sign * kappa_abs, branch,
                            validity);
}

HalfInteger total_angular_momentum(const BoundState& state) {
    if (state.mode() != SpinMode::spin_half) {
        throw InvalidStateError("total angular momentum is defined for spin-1/2 states only");
    }
    return HalfInteger{2 * std::abs(state.angular()) - 1};
}

}  // namespace etaspec
