#include "etaspec/radialwave.hpp"

#include "etaspec/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace etaspec {

namespace {

// Integration cutoff in units of r0; beyond it an exponential tail bound is added.
constexpr double kQuadratureCutoff = 40.0;

struct PolyValue {
    double p;    // P(x)
    double dp;   // dP/dx
    double d2p;  // d2P/dx2
};

PolyValue evaluate(std::span<const double> c, double x) {
    double p = 0.0, dp = 0.0, d2p = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d2p = d2p * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + *it;
    }
    return {p, dp, d2p};
}

double poly(std::span<const double> c, double x) {
    double p = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * x + *it;
    return p;
}

// c_{k+1} from c_k in x = r / r0.
double next_coefficient(double eta, double lambda_r0, int k, double ck) {
    const double indicial = k + 2.0 - 2.0 * eta;
    if (std::abs(indicial) < 1e-12) {
        std::ostringstream os;
        os << "series recurrence: indicial factor k + 2 - 2 eta vanishes at k = " << k;
        throw DomainError(os.str());
    }
    return 2.0 * ((k + 1.0 - eta) - lambda_r0) * ck / ((k + 1.0) * indicial);
}

std::vector<double> recurrence(double eta, double lambda_r0, int count) {
    std::vector<double> c(static_cast<std::size_t>(count));
    c[0] = 1.0;
    for (int k = 0; k + 1 < count; ++k) c[k + 1] = next_coefficient(eta, lambda_r0, k, c[k]);
    return c;
}

// Integral over x in (0, inf) of x^(2 - 2 eta) e^(-2x) P(x)^2.
double scaled_norm_integral(const RadialSeries& series) {
    const double power = 2.0 - 2.0 * series.eta();
    if (!(power > -1.0 + 1e-9)) {
        std::ostringstream os;
        os.precision(17);
        os << "normalization: r^2 R^2 ~ r^" << power
           << " is not integrable at the origin (eta = " << series.eta() << ")";
        throw DomainError(os.str());
    }
    const auto c = series.scaled_coefficients();
    auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double p = poly(c, x);
        return std::exp(power * std::log(x) - 2.0 * x) * p * p;
    };
    // Asymptotic algebraic degree of the integrand; keep the cutoff beyond the peak.
    const double degree = power + 2.0 * series.radial_degree();
    const double cutoff = std::max(kQuadratureCutoff, degree);
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double body = integrator.integrate(integrand, 0.0, cutoff, 1e-14);
    // x^m e^(-2x) decays at least as e^(-(2 - m/X)(x - X)) past X.
    const double rate = 2.0 - std::max(degree, 0.0) / cutoff;
    const double tail = integrand(cutoff) / rate;
    return body + tail;
}

}  // namespace

double RadialSeries::coefficient(int k) const {
    if (k < 0 || k > radial_degree()) throw std::out_of_range("series coefficient index");
    return scaled_[static_cast<std::size_t>(k)] * std::pow(r0_, -k);
}

RadialSeries RadialSeries::with_normalization(double normalization) const {
    RadialSeries out = *this;
    out.normalization_ = normalization;
    return out;
}

RadialSeries make_series(const CouplingValue& coupling, double r0, double lambda, int radial_degree) {
    if (radial_degree < 0) throw InvalidStateError("radial degree must be >= 0");
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw DomainError("series: r0 must be positive and finite");
    return RadialSeries(coupling, r0, lambda, recurrence(coupling.eta, lambda * r0, radial_degree + 1));
}

double termination_residual(double eta, double r0, double lambda, int radial_degree) {
    const auto c = recurrence(eta, lambda * r0, radial_degree + 1);
    const double beyond = next_coefficient(eta, lambda * r0, radial_degree, c.back());
    double largest = 0.0;
    for (double ck : c) largest = std::max(largest, std::abs(ck));
    return std::abs(beyond) / largest;
}

namespace {

RadialSeries checked_series(const CouplingValue& coupling, double r0, double lambda, int degree) {
    const double residual = termination_residual(coupling.eta, r0, lambda, degree);
    if (!(residual <= kTerminationTolerance)) {
        std::ostringstream os;
        os.precision(6);
        os << "series does not terminate: residual " << residual << " exceeds "
           << kTerminationTolerance << " (energy inconsistent with the state)";
        throw TerminationError(os.str(), residual);
    }
    RadialSeries series = make_series(coupling, r0, lambda, degree);
    // An energy belonging to a lower degree terminates early and leaves a_n = 0.
    const auto c = series.scaled_coefficients();
    double largest = 0.0;
    for (double ck : c) largest = std::max(largest, std::abs(ck));
    const double leading = std::abs(c.back()) / largest;
    if (!(leading > kTerminationTolerance)) {
        std::ostringstream os;
        os << "series terminates below degree " << degree << " (energy belongs to another state)";
        throw TerminationError(os.str(), leading);
    }
    return series;
}

}  // namespace

RadialSeries series_coefficients(const BoundState& state, const DimensionlessEnergy& energy) {
    const CouplingValue& coupling = energy.coupling;
    if (coupling.mode != state.mode() || coupling.angular != state.angular() ||
        coupling.branch != state.branch()) {
        throw InvalidStateError("series: energy was computed for a different coupling");
    }
    const double r0 = length_scale_dimensionless(energy);
    const double lambda = energy.e_ratio * coupling.alpha_used;
    return checked_series(coupling, r0, lambda, state.radial_degree());
}

RadialSeries series_coefficients(const BoundState& state, const EnergyResult& energy,
                                 const LengthScale& scale) {
    const CouplingValue& coupling = energy.value.coupling;
    if (coupling.mode != state.mode() || coupling.angular != state.angular() ||
        coupling.branch != state.branch()) {
        throw InvalidStateError("series: energy was computed for a different coupling");
    }
    const double r0 = scale.r0_dimensionless;
    const double lambda = energy.e_ratio() * coupling.alpha_used;
    return checked_series(coupling, r0, lambda, state.radial_degree());
}

double radial_eval(const RadialSeries& series, double r) {
    if (!(r > 0.0)) throw DomainError("radial_eval: r must be > 0");
    const double x = r / series.r0();
    return series.normalization() * std::exp(-series.eta() * std::log(r) - x) *
           poly(series.scaled_coefficients(), x);
}

double norm_integral(const RadialSeries& series) {
    const double log_scale = 2.0 * std::log(series.normalization()) +
                             (3.0 - 2.0 * series.eta()) * std::log(series.r0());
    return std::exp(log_scale) * scaled_norm_integral(series);
}

RadialSeries normalize(const RadialSeries& series) {
    const double integral = scaled_norm_integral(series);
    // N^2 r0^(3 - 2 eta) I = 1.
    const double log_n = -0.5 * ((3.0 - 2.0 * series.eta()) * std::log(series.r0()) + std::log(integral));
    return series.with_normalization(std::exp(log_n));
}

std::vector<double> node_positions(const RadialSeries& series) {
    const auto c = series.scaled_coefficients();
    const int degree = series.radial_degree();
    std::vector<double> roots;
    if (degree == 0) return roots;

    // Fujiwara bound on |root|.
    double bound = 0.0;
    for (int k = 1; k <= degree; ++k) {
        const double ratio = std::abs(c[degree - k] / c[degree]) / (k == degree ? 2.0 : 1.0);
        bound = std::max(bound, std::pow(ratio, 1.0 / k));
    }
    bound *= 2.0;

    double scale = 0.0;
    for (double ck : c) scale = std::max(scale, std::abs(ck));
    const double zero_tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;

    // Quadratic grid: roots crowd toward the origin.
    const int points = 2000 * (degree + 1);
    double x_prev = 0.0;
    double p_prev = c[0];
    for (int i = 1; i <= points; ++i) {
        const double t = static_cast<double>(i) / points;
        const double x = bound * t * t;
        const double h = x - x_prev;
        double p = poly(c, x);
        if (std::abs(p) <= zero_tol) {
            // Grid point sits on (or next to) a root: step past it and require a
            // sign change across the nudged pair.
            const double nudge = 1e-3 * h;
            const double left = poly(c, x - nudge);
            const double right = poly(c, x + nudge);
            if (std::signbit(left) == std::signbit(right) || left == 0.0 || right == 0.0) {
                throw DomainError("count_nodes: root on grid point could not be resolved");
            }
            roots.push_back(x);
            x_prev = x + nudge;
            p_prev = right;
            continue;
        }
        if (std::signbit(p) != std::signbit(p_prev)) {
            double lo = x_prev, hi = x;
            double p_lo = p_prev;
            for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double pm = poly(c, mid);
                if (pm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(pm) == std::signbit(p_lo)) {
                    lo = mid;
                    p_lo = pm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        p_prev = p;
    }
    return roots;
}

int count_nodes(const RadialSeries& series) { return static_cast<int>(node_positions(series).size()); }

double ode_residual(const RadialSeries& series, const DimensionlessEnergy& energy, double r) {
    if (!(r > 0.0)) throw DomainError("ode_residual: r must be > 0");
    const double eta = series.eta();
    const double r0 = series.r0();
    const double alpha = series.coupling().alpha_used;
    const double e = energy.e_ratio;
    const double delta = energy.one_minus_e;
    const double e2_minus_1 = -delta * (2.0 - delta);

    const double x = r / r0;
    const PolyValue pv = evaluate(series.scaled_coefficients(), x);
    const double p = pv.p;
    const double dp = pv.dp / r0;
    const double d2p = pv.d2p / (r0 * r0);
    // R = f P with f = r^(-eta) e^(-r/r0); everything below is divided by f.
    const double g = -eta / r - 1.0 / r0;

    const double terms[] = {
        g * g * p,
        eta / (r * r) * p,
        2.0 * g * dp,
        d2p,
        2.0 / r * g * p,
        2.0 / r * dp,
        e2_minus_1 * p,
        2.0 * e * alpha / r * p,
        eta * (1.0 - eta) / (r * r) * p,
    };
    double sum = 0.0;
    double largest = 0.0;
    for (double t : terms) {
        sum += t;
        largest = std::max(largest, std::abs(t));
    }
    return largest > 0.0 ? std::abs(sum) / largest : 0.0;
}

double ode_residual(const RadialSeries& series, const EnergyResult& energy, double r) {
    return ode_residual(series, energy.value, r);
}

}  // namespace etaspec
