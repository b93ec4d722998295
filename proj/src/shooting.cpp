#include "etaspec/coupling.hpp"
#include "etaspec/errors.hpp"
#include "etaspec/oracle.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace etaspec {

namespace {

using State = std::array<double, 2>;  // (u, du/ds)

// Fixed parameters of one radial problem; k is the trial momentum.
struct Problem {
    double alpha;
    double centrifugal;  // eta (1 - eta)
    double exponent;     // 1 - eta: u ~ s^exponent at the origin
    int bohr_n;          // non-relativistic principal number of the target

    double e_ratio(double k) const {
        const double ak = alpha * k;
        return std::sqrt((1.0 - ak) * (1.0 + ak));
    }
};

Problem make_problem(SpinMode mode, int angular, Branch branch, int target_nodes, double alpha) {
    if (target_nodes < 0) throw InvalidStateError("shooting: target node count must be >= 0");
    const CouplingValue c = eta(mode, angular, alpha, branch);
    const int bohr_n = mode == SpinMode::spinless ? target_nodes + angular + 1
                                                  : target_nodes + std::abs(angular);
    return Problem{alpha, c.eta * (1.0 - c.eta), 1.0 - c.eta, bohr_n};
}

double momentum_cap(const Problem& p) {
    return p.alpha > 0.0 ? (1.0 - 1e-12) / p.alpha : std::numeric_limits<double>::infinity();
}

struct Rhs {
    double k2;
    double two_e;
    double centrifugal;
    void operator()(const State& y, State& dy, double s) const {
        dy[0] = y[1];
        dy[1] = (k2 - two_e / s - centrifugal / (s * s)) * y[0];
    }
};

// Frobenius start u = s^p sum_j d_j s^j, d_0 = 1, from
// d_j j (2p + j - 1) = k^2 d_{j-2} - 2E d_{j-1}. Returns (u, u') scaled by s^-p.
State frobenius_start(const Problem& p, double k, double s) {
    const double e = p.e_ratio(k);
    const double k2 = k * k;
    double d_prev2 = 0.0, d_prev = 1.0;
    double u = 1.0;                 // sum d_j s^j
    double du = p.exponent / s;     // sum d_j (p + j) s^(j-1)
    double power = 1.0;
    for (int j = 1; j < 200; ++j) {
        const double denom = j * (2.0 * p.exponent + j - 1.0);
        if (std::abs(denom) < 1e-14) throw DomainError("shooting: Frobenius exponents differ by an integer");
        const double d = (k2 * d_prev2 - 2.0 * e * d_prev) / denom;
        power *= s;
        const double term = d * power;
        u += term;
        du += d * (p.exponent + j) * power / s;
        if (std::abs(term) < 1e-18 * std::abs(u) && j > 4) break;
        d_prev2 = d_prev;
        d_prev = d;
    }
    return {u, du};
}

struct Sweep {
    State y;
    int nodes = 0;
};

// Integrates from s_from to s_to (either direction) counting sign changes of u.
Sweep integrate(const Problem& p, double k, State y, double s_from, double s_to, double tolerance) {
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(tolerance * 1e-3, tolerance, odeint::runge_kutta_dopri5<State>());
    const Rhs rhs{k * k, 2.0 * p.e_ratio(k), p.centrifugal};

    const double direction = s_to > s_from ? 1.0 : -1.0;
    double s = s_from;
    double dt = direction * 1e-3 * std::abs(s_to - s_from);
    dt = direction * std::min(std::abs(dt), 0.1 * std::min(std::abs(s_from), std::abs(s_to)));
    Sweep out{y, 0};
    std::int64_t steps = 0;
    while (direction * (s_to - s) > 0.0) {
        if (direction * (s + dt - s_to) > 0.0) dt = s_to - s;
        const double u_before = out.y[0];
        const auto result = stepper.try_step(rhs, out.y, s, dt);
        if (result == odeint::fail) {
            if (std::abs(dt) < 1e-15 * std::abs(s)) throw DomainError("shooting: integrator step underflow");
            continue;
        }
        if (++steps > 5'000'000) throw DomainError("shooting: integrator step budget exhausted");
        if (std::signbit(out.y[0]) != std::signbit(u_before) && u_before != 0.0) ++out.nodes;
        const double size = std::abs(out.y[0]) + std::abs(out.y[1]);
        if (size > 1e150) {
            out.y[0] *= 1e-150;
            out.y[1] *= 1e-150;
        }
    }
    return out;
}

struct Grid {
    double s_min, s_match, s_max;
};

// Lengths scale with the trial radius 1/k.
Grid grid_for(const ShootingConfig& config, double k) {
    const double r0 = 1.0 / k;
    return {config.r_min * r0, config.match_point * r0, config.r_max * r0};
}

int outward_nodes(const Problem& p, const ShootingConfig& config, double k) {
    const Grid g = grid_for(config, k);
    const State start = frobenius_start(p, k, g.s_min);
    return integrate(p, k, start, g.s_min, g.s_max, config.step_tolerance).nodes;
}

double mismatch(const Problem& p, const ShootingConfig& config, double k) {
    const Grid g = grid_for(config, k);
    const State out = integrate(p, k, frobenius_start(p, k, g.s_min), g.s_min, g.s_match,
                                config.step_tolerance).y;
    // Coulomb asymptotics u ~ s^(E/k) e^(-k s).
    const double e = p.e_ratio(k);
    const State tail{1.0, -k + (e / k) / g.s_max};
    const State in = integrate(p, k, tail, g.s_max, g.s_match, config.step_tolerance).y;
    const double wronskian = out[0] * in[1] - out[1] * in[0];
    return wronskian / (std::hypot(out[0], out[1]) * std::hypot(in[0], in[1]));
}

using Bracket = std::tuple<double, double, double, double>;

// Nodes of the outward solution fall as k grows (binding deepens); the
// target level sits where the count drops from target+1 to target.
template <class Nodes, class F>
Bracket node_bracket(const Problem& p, int target_nodes, Nodes&& nodes_at, F&& f) {
    const double cap = momentum_cap(p);
    const double estimate = std::min(1.0 / p.bohr_n, 0.5 * cap);
    double k_hi = std::min(1.2 * estimate, cap);
    while (nodes_at(k_hi) > target_nodes) {
        if (k_hi >= cap) {
            throw BracketError("shooting: no level with " + std::to_string(target_nodes) +
                               " nodes below E = 0");
        }
        k_hi = std::min(2.0 * k_hi, cap);
    }
    double k_lo = 0.8 * estimate;
    while (nodes_at(k_lo) <= target_nodes) {
        k_lo *= 0.5;
        if (k_lo < 1e-6 * estimate) {
            throw BracketError("shooting: node count " + std::to_string(target_nodes + 1) +
                               " unreachable in the bracket");
        }
    }
    if (k_lo >= k_hi) throw BracketError("shooting: inconsistent node bracket");

    while (k_hi - k_lo > 1e-6 * k_hi) {
        const double mid = 0.5 * (k_lo + k_hi);
        if (nodes_at(mid) > target_nodes) k_lo = mid;
        else k_hi = mid;
    }

    double f_lo = f(k_lo), f_hi = f(k_hi);
    for (int widen = 0; widen < 8 && std::signbit(f_lo) == std::signbit(f_hi); ++widen) {
        const double width = k_hi - k_lo;
        k_lo = std::max(k_lo - width, 0.5 * k_lo);
        k_hi = std::min(k_hi + width, cap);
        f_lo = f(k_lo);
        f_hi = f(k_hi);
    }
    if (std::signbit(f_lo) == std::signbit(f_hi)) {
        std::ostringstream os;
        os.precision(17);
        os << "shooting: mismatch has no sign change on [" << k_lo << ", " << k_hi
           << "]: f = (" << f_lo << ", " << f_hi << ")";
        throw BracketError(os.str());
    }
    return {k_lo, k_hi, f_lo, f_hi};
}

// Plus-branch levels can carry nodes inside r_min, so node counts do not
// label them. Scan the mismatch downward from the k = 1/alpha limit instead
// and take the (target+1)-th sign change: level n_r is the (n_r+1)-th deepest.
template <class F>
Bracket hydrino_bracket(const Problem& p, int target_nodes, F&& f) {
    if (!(p.alpha > 0.0)) throw BracketError("shooting: the plus branch needs alpha > 0");
    const double limit = 1.0 / p.alpha;
    std::vector<double> ks;
    // Close to the limit: 1 - alpha k from 1e-10 to 1e-2, then k down to 1e-3 / alpha.
    constexpr int kNear = 200, kFar = 600;
    for (int i = 0; i <= kNear; ++i) ks.push_back(limit * (1.0 - std::pow(10.0, -10.0 + 8.0 * i / kNear)));
    for (int i = 1; i <= kFar; ++i) ks.push_back(0.99 * limit * std::pow(1e-3 / 0.99, static_cast<double>(i) / kFar));

    int found = 0;
    double k_prev = ks.front();
    double f_prev = f(k_prev);
    for (std::size_t i = 1; i < ks.size(); ++i) {
        const double k = ks[i];
        const double fk = f(k);
        if (std::signbit(fk) != std::signbit(f_prev)) {
            if (found == target_nodes) return {k, k_prev, fk, f_prev};
            ++found;
        }
        k_prev = k;
        f_prev = fk;
    }
    throw BracketError("shooting: plus-branch level " + std::to_string(target_nodes) +
                       " not found in the momentum scan");
}

}  // namespace

void validate(const ShootingConfig& config) {
    if (!(config.r_min > 0.0 && config.r_min < config.match_point && config.match_point < config.r_max)) {
        throw std::invalid_argument("shooting config: need 0 < r_min < match_point < r_max");
    }
    auto tol_ok = [](double t) { return t > 0.0 && t <= 1e-6; };
    if (!tol_ok(config.step_tolerance) || !tol_ok(config.root_tolerance)) {
        throw std::invalid_argument("shooting config: tolerances must lie in (0, 1e-6]");
    }
}

double shooting_mismatch(SpinMode mode, int angular, Branch branch, int target_nodes,
                         const ShootingConfig& config, double alpha, double momentum) {
    validate(config);
    return mismatch(make_problem(mode, angular, branch, target_nodes, alpha), config, momentum);
}

int shooting_node_count(SpinMode mode, int angular, Branch branch, int target_nodes,
                        const ShootingConfig& config, double alpha, double momentum) {
    validate(config);
    return outward_nodes(make_problem(mode, angular, branch, target_nodes, alpha), config, momentum);
}

ShootingResult shoot_eigenvalue(SpinMode mode, int angular, int target_nodes, Branch branch,
                                const ShootingConfig& config, double alpha) {
    validate(config);
    const Problem p = make_problem(mode, angular, branch, target_nodes, alpha);
    int iterations = 0;
    auto nodes_at = [&](double k) {
        ++iterations;
        return outward_nodes(p, config, k);
    };
    auto f = [&](double k) {
        ++iterations;
        return mismatch(p, config, k);
    };
    double k_lo, k_hi, f_lo, f_hi;
    if (branch == Branch::hydrino) {
        // Degrees with n_r + 1 - eta <= 0 have no level; skip them in the ordering.
        const double eta_value = 1.0 - p.exponent;
        const int missing = eta_value >= 1.0 ? static_cast<int>(std::floor(eta_value - 1.0)) + 1 : 0;
        if (target_nodes < missing) {
            throw BracketError("shooting: no plus-branch level with radial degree " + std::to_string(target_nodes));
        }
        std::tie(k_lo, k_hi, f_lo, f_hi) = hydrino_bracket(p, target_nodes - missing, f);
    } else {
        std::tie(k_lo, k_hi, f_lo, f_hi) = node_bracket(p, target_nodes, nodes_at, f);
    }

    const double rtol = config.root_tolerance;
    auto close_enough = [rtol](double a, double b) { return std::abs(a - b) <= rtol * std::abs(b); };
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, k_lo, k_hi, f_lo, f_hi, close_enough, max_iter);
    iterations += static_cast<int>(max_iter);
    const double k = 0.5 * (a + b);

    ShootingResult out{};
    out.momentum = k;
    out.e_ratio = p.e_ratio(k);
    out.scaled_binding = k * k / (1.0 + out.e_ratio);
    out.nodes = target_nodes;
    out.iterations = iterations;
    return out;
}

ShootingResult shoot_eigenvalue(SpinMode mode, int angular, int target_nodes, Branch branch,
                                const ShootingConfig& config, const PhysicalConstants& constants) {
    return shoot_eigenvalue(mode, angular, target_nodes, branch, config, constants.alpha());
}

}  // namespace etaspec
