#pragma once

#include "etaspec/core.hpp"

namespace etaspec {

/// The coupling function eta for one (mode, angular, branch) at a given alpha.
/// It replaces the centrifugal term: eta (1 - eta) / r^2.
struct CouplingValue {
    double eta;
    SpinMode mode;
    int angular;
    Branch branch;
    double alpha_used;
    /// sqrt((angular + (1 - epsilon)/2)^2 - alpha^2), kept so callers never
    /// have to recover it from eta by subtraction.
    double root;
};

/// eta = (1 + epsilon)/2 -/+ sqrt((angular + (1 - epsilon)/2)^2 - alpha^2),
/// minus for the Sommerfeld branch. Throws SubcriticalError when the radicand
/// is below 1e-30, and InvalidStateError for an angular value the mode forbids.
/// Alpha may be zero here (the non-relativistic limit).
CouplingValue eta(SpinMode mode, int angular, double alpha, Branch branch = Branch::sommerfeld);

/// |eta (1 - eta) - (alpha^2 - l(l+1))| for spinless values,
/// |(eta - 1)^2 - (kappa^2 - alpha^2)| for spin-1/2 values.
double eta_identity_residual(const CouplingValue& value);

}  // namespace etaspec
