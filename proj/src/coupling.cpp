#include "etaspec/coupling.hpp"

#include "etaspec/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace etaspec {

namespace {

constexpr double kMinRadicand = 1e-30;

}  // namespace

CouplingValue eta(SpinMode mode, int angular, double alpha, Branch branch) {
    const int eps = epsilon(mode);
    if (mode == SpinMode::spinless && angular < 0) throw InvalidStateError("spinless coupling needs l >= 0");
    if (mode == SpinMode::spin_half && angular == 0) throw InvalidStateError("spin-1/2 coupling needs kappa != 0");
    if (!(alpha >= 0.0)) throw DomainError("coupling: alpha must be >= 0");

    // |angular + (1 - eps)/2|; exact in double for any realistic angular value.
    const double base = std::abs(angular + 0.5 * (1 - eps));
    // Factored radicand keeps its digits as alpha approaches base.
    const double radicand = (base - alpha) * (base + alpha);
    if (!(radicand >= kMinRadicand)) {
        std::ostringstream os;
        os.precision(17);
        os << "subcritical coupling violated: need alpha < " << base << " for " << to_string(mode)
           << " angular " << angular << ", got alpha = " << alpha;
        throw SubcriticalError(os.str(), base);
    }
    const double root = std::sqrt(radicand);
    const double mid = 0.5 * (1 + eps);
    const double value = branch == Branch::sommerfeld ? mid - root : mid + root;
    return CouplingValue{value, mode, angular, branch, alpha, root};
}

double eta_identity_residual(const CouplingValue& value) {
    const double a2 = value.alpha_used * value.alpha_used;
    const double k = value.angular;
    if (value.mode == SpinMode::spinless) {
        return std::abs(value.eta * (1.0 - value.eta) - (a2 - k * (k + 1.0)));
    }
    const double shifted = value.eta - 1.0;
    return std::abs(shifted * shifted - (k * k - a2));
}

}  // namespace etaspec
