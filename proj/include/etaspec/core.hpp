#pragma once

// Shared vocabulary: physical constants, quantum-number types and the
// mappings between (n, j, sign kappa) and the radial-degree labelling.
//
// Internal units are dimensionless throughout the library: energies are
// ratios E / m0c^2, lengths are in units of the reduced Compton wavelength
// hbar / m0c. PhysicalConstants is only consulted at the I/O boundary.

#include <filesystem>
#include <string>
#include <string_view>

namespace etaspec {

class PhysicalConstants {
public:
    /// CODATA 2018 values, parsed from the compiled-in default document.
    static PhysicalConstants codata2018();

    double alpha() const noexcept { return alpha_; }
    double electron_rest_energy_eV() const noexcept { return rest_energy_eV_; }
    double hbar_c_eV_nm() const noexcept { return hbar_c_eV_nm_; }
    double planck_eV_per_Hz() const noexcept { return planck_eV_per_Hz_; }
    const std::string& provenance() const noexcept { return provenance_; }

    /// Same constants with a different fine-structure constant, for coupling
    /// studies. Validated like any other document value.
    PhysicalConstants with_alpha(double alpha) const;

private:
    friend PhysicalConstants load_constants(std::string_view, std::string);
    PhysicalConstants(double alpha, double rest, double hbar_c, double planck,
                      std::string provenance);

    double alpha_;
    double rest_energy_eV_;
    double hbar_c_eV_nm_;
    double planck_eV_per_Hz_;
    std::string provenance_;
};

/// JSON text of the default constants document (CODATA 2018).
std::string_view default_constants_document();

/// Parses a flat JSON object with keys alpha, electron_rest_energy_eV,
/// hbar_c_eV_nm and optionally planck_eV_per_Hz. Every required key must be
/// present; values must be positive and alpha < 0.5.
PhysicalConstants load_constants(std::string_view json_text, std::string provenance = "inline");

/// Reads a constants document from disk. Provenance is the file path.
PhysicalConstants load_constants_file(const std::filesystem::path& path);

/// Merges a (possibly empty) JSON object of overrides onto the default
/// document and validates the result.
PhysicalConstants constants_with_overrides(std::string_view overrides_json);

enum class Branch { sommerfeld, hydrino };

/// Coupling mode: spinless (epsilon = 0, angular = l) or spin-corrected
/// (epsilon = 1, angular = kappa).
enum class SpinMode : int { spinless = 0, spin_half = 1 };

constexpr int epsilon(SpinMode mode) noexcept { return static_cast<int>(mode); }

std::string_view to_string(Branch branch) noexcept;
std::string_view to_string(SpinMode mode) noexcept;  // "kg0" / "kg1"
Branch parse_branch(std::string_view text);
SpinMode parse_mode(std::string_view text);

/// Whether spin-corrected states with kappa > 0 and zero radial degree are
/// admitted. The Dirac spectrum has no such states; relaxed mode keeps them
/// so the trial equation can be explored as written.
enum class Validity { strict, relaxed };

/// Half-integer stored as its double, so j = 3/2 is HalfInteger{3}.
struct HalfInteger {
    int twice;
    constexpr double value() const noexcept { return 0.5 * twice; }
    constexpr bool operator==(const HalfInteger&) const = default;
};

/// Complete label of one eigenstate.
class BoundState {
public:
    /// Throws InvalidStateError when the labels are inconsistent with the mode.
    static BoundState make(SpinMode mode, int radial_degree, int angular,
                           Branch branch = Branch::sommerfeld,
                           Validity validity = Validity::strict);

    /// Spinless state from the principal quantum number: radial degree n - l - 1.
    static BoundState spinless(int n_principal, int l, Branch branch = Branch::sommerfeld);

    SpinMode mode() const noexcept { return mode_; }
    int radial_degree() const noexcept { return radial_degree_; }
    int angular() const noexcept { return angular_; }
    Branch branch() const noexcept { return branch_; }

    /// n = radial_degree + l + 1 (spinless) or radial_degree + |kappa| (spin-1/2).
    int n_principal() const noexcept;

    /// False for spin-1/2 states with kappa > 0 and radial degree 0, which
    /// only exist when built with Validity::relaxed.
    bool dirac_valid() const noexcept;

    BoundState with_branch(Branch branch) const;

    bool operator==(const BoundState&) const = default;

private:
    BoundState(SpinMode mode, int radial_degree, int angular, Branch branch)
        : mode_(mode), radial_degree_(radial_degree), angular_(angular), branch_(branch) {}

    SpinMode mode_;
    int radial_degree_;
    int angular_;
    Branch branch_;
};

/// kappa = sign (j + 1/2), radial degree N = n - j - 1/2.
BoundState map_total_angular_momentum(int n_principal, HalfInteger j, int kappa_sign,
                                      Branch branch = Branch::sommerfeld,
                                      Validity validity = Validity::strict);

/// Total angular momentum j = |kappa| - 1/2 of a spin-1/2 state.
HalfInteger total_angular_momentum(const BoundState& state);

}  // namespace etaspec
