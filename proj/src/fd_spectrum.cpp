#include "etaspec/coupling.hpp"
#include "etaspec/errors.hpp"
#include "etaspec/oracle.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>

namespace etaspec {

namespace {

// Discretized pencil w^2 A + w B + C on interior points s_i = i h, with
// A = alpha^2 I, B = diag(-2 - 2 alpha^2 / s), C = D2 + diag(2 / s + eta (1 - eta) / s^2).
struct Pencil {
    int n;
    double h;
    double alpha2;
    Eigen::VectorXd b_diag;
    Eigen::VectorXd c_diag;
    double off;  // 1 / h^2 on both off-diagonals of C

    Eigen::VectorXd diag_at(double w) const {
        return (c_diag.array() + w * b_diag.array() + w * w * alpha2).matrix();
    }

    // L(w) x for the tridiagonal L(w).
    Eigen::VectorXd apply(double w, const Eigen::VectorXd& x) const {
        Eigen::VectorXd y = diag_at(w).cwiseProduct(x);
        y.head(n - 1) += off * x.tail(n - 1);
        y.tail(n - 1) += off * x.head(n - 1);
        return y;
    }
};

Pencil assemble(double centrifugal, double alpha, const FdGrid& grid) {
    if (grid.point_count < 16) throw GridTooCoarseError("fd_spectrum: need at least 16 grid points");
    if (!(grid.r_max > 0.0)) throw std::invalid_argument("fd_spectrum: r_max must be positive");
    Pencil p;
    p.n = grid.point_count;
    p.h = grid.r_max / (grid.point_count + 1);
    p.alpha2 = alpha * alpha;
    p.off = 1.0 / (p.h * p.h);
    p.b_diag.resize(p.n);
    p.c_diag.resize(p.n);
    for (int i = 0; i < p.n; ++i) {
        const double s = (i + 1) * p.h;
        p.b_diag[i] = -2.0 - 2.0 * p.alpha2 / s;
        p.c_diag[i] = -2.0 * p.off + 2.0 / s + centrifugal / (s * s);
    }
    return p;
}

// (K - sigma M)^-1 M for the companion pencil K = [0 I; -C -B], M = [I 0; 0 A],
// applied through one LU factorization of the tridiagonal L(sigma).
class ShiftInvert {
public:
    ShiftInvert(const Pencil& pencil, double sigma)
        : pencil_(pencil), sigma_(sigma), dl_(pencil.n - 1, pencil.off), d_(pencil.diag_at(sigma)),
          du_(pencil.n - 1, pencil.off), du2_(pencil.n - 2), ipiv_(pencil.n) {
        const lapack_int info = LAPACKE_dgttrf(pencil.n, dl_.data(), d_.data(), du_.data(),
                                               du2_.data(), ipiv_.data());
        if (info != 0) throw DomainError("fd_spectrum: shift coincides with an eigenvalue");
    }

    Eigen::VectorXd operator()(const Eigen::VectorXd& z) const {
        const int n = pencil_.n;
        const auto x = z.head(n);
        const auto y = z.tail(n);
        // rhs = A y + (B + sigma A) x
        Eigen::VectorXd rhs = pencil_.alpha2 * y +
                              (pencil_.b_diag.array() + sigma_ * pencil_.alpha2).matrix().cwiseProduct(x);
        const lapack_int info = LAPACKE_dgttrs(LAPACK_COL_MAJOR, 'N', n, 1, dl_.data(), d_.data(),
                                               du_.data(), du2_.data(), ipiv_.data(), rhs.data(), n);
        if (info != 0) throw DomainError("fd_spectrum: tridiagonal solve failed");
        Eigen::VectorXd out(2 * n);
        out.head(n) = -rhs;
        out.tail(n) = x + sigma_ * out.head(n);
        return out;
    }

private:
    const Pencil& pencil_;
    double sigma_;
    std::vector<double> dl_;
    Eigen::VectorXd d_;
    std::vector<double> du_;
    std::vector<double> du2_;
    std::vector<lapack_int> ipiv_;
};

struct Candidate {
    double w;
    Eigen::VectorXd x;
};

int count_sign_changes(const Eigen::VectorXd& x) {
    const double threshold = 1e-6 * x.cwiseAbs().maxCoeff();
    int changes = 0;
    int last = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) < threshold) continue;
        const int sign = x[i] > 0.0 ? 1 : -1;
        if (last != 0 && sign != last) ++changes;
        last = sign;
    }
    return changes;
}

double relative_residual(const Pencil& pencil, double w, const Eigen::VectorXd& x) {
    const double scale = pencil.diag_at(w).cwiseAbs().maxCoeff() + 2.0 * pencil.off;
    return pencil.apply(w, x).norm() / (scale * x.norm());
}

// Arnoldi with full reorthogonalization on the shift-inverted operator.
std::vector<Candidate> arnoldi_candidates(const Pencil& pencil, double sigma, int steps) {
    const ShiftInvert op(pencil, sigma);
    const int dim = 2 * pencil.n;
    steps = std::min(steps, dim - 1);
    Eigen::MatrixXd v(dim, steps + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(steps + 1, steps);

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd start(dim);
    for (int i = 0; i < dim; ++i) start[i] = dist(rng);
    v.col(0) = start.normalized();

    int built = steps;
    for (int j = 0; j < steps; ++j) {
        Eigen::VectorXd w = op(v.col(j));
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd proj = v.leftCols(j + 1).transpose() * w;
            w -= v.leftCols(j + 1) * proj;
            h.col(j).head(j + 1) += proj;
        }
        h(j + 1, j) = w.norm();
        if (h(j + 1, j) < 1e-14) {
            built = j + 1;
            break;
        }
        v.col(j + 1) = w / h(j + 1, j);
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(h.topLeftCorner(built, built));
    std::vector<Candidate> out;
    for (int i = 0; i < built; ++i) {
        const std::complex<double> mu = es.eigenvalues()[i];
        if (std::abs(mu) == 0.0 || std::abs(mu.imag()) > 1e-8 * std::abs(mu)) continue;
        const Eigen::VectorXcd ritz = v.leftCols(built) * es.eigenvectors().col(i);
        // Rotate the (real up to phase) Ritz vector onto the real axis.
        Eigen::Index imax = 0;
        ritz.head(pencil.n).cwiseAbs().maxCoeff(&imax);
        const std::complex<double> phase = std::conj(ritz[imax]) / std::abs(ritz[imax]);
        Eigen::VectorXd x = (ritz.head(pencil.n) * phase).real();
        out.push_back({sigma + 1.0 / mu.real(), std::move(x)});
    }
    return out;
}

// Inverse iteration at the candidate's own shift.
Candidate refine(const Pencil& pencil, Candidate c) {
    for (int it = 0; it < 4; ++it) {
        const double sigma = c.w * (1.0 + 1e-9) + 1e-15;
        const ShiftInvert op(pencil, sigma);
        Eigen::VectorXd z(2 * pencil.n);
        z.head(pencil.n) = c.x;
        z.tail(pencil.n) = c.w * c.x;
        z.normalize();
        const Eigen::VectorXd tz = op(z);
        const double mu = z.dot(tz);
        const double w_new = sigma + 1.0 / mu;
        Eigen::VectorXd x = tz.head(pencil.n);
        x /= x.norm();
        if (x.dot(c.x) < 0.0) x = -x;
        const bool settled = std::abs(w_new - c.w) <= 1e-15 * std::abs(w_new);
        c = {w_new, std::move(x)};
        if (settled) break;
    }
    return c;
}

std::vector<FdLevel> solve_levels(const Pencil& pencil, int base_n, int count, double alpha) {
    const double w_cap = alpha > 0.0 ? 1.0 / (alpha * alpha) : std::numeric_limits<double>::infinity();
    std::vector<FdLevel> levels;
    for (int level = 0; level < count; ++level) {
        // Non-relativistic estimate 1 / (2 n^2), nudged deeper.
        const double n = base_n + level;
        const double sigma = 1.02 / (2.0 * n * n);
        const auto candidates = arnoldi_candidates(pencil, sigma, 40);
        const Candidate* best = nullptr;
        for (const auto& c : candidates) {
            if (!(c.w > 0.0 && c.w < w_cap)) continue;
            if (count_sign_changes(c.x) != level) continue;
            if (!best || std::abs(c.w - sigma) < std::abs(best->w - sigma)) best = &c;
        }
        if (!best) {
            std::ostringstream os;
            os << "fd_spectrum: no bound level with " << level << " nodes resolved; "
               << "grid too coarse or box too small";
            throw GridTooCoarseError(os.str());
        }
        const Candidate c = refine(pencil, *best);
        if (count_sign_changes(c.x) != level) {
            throw GridTooCoarseError("fd_spectrum: refinement converged to a neighbouring level");
        }
        levels.push_back({1.0 - alpha * alpha * c.w, c.w, level, relative_residual(pencil, c.w, c.x)});
    }
    return levels;
}

}  // namespace

FdSpectrum fd_spectrum(SpinMode mode, int angular, Branch branch, const FdGrid& grid, int count,
                       double alpha) {
    if (count < 1 || count > 5) throw std::invalid_argument("fd_spectrum: count must be in 1..5");
    if (branch != Branch::sommerfeld) {
        throw DomainError("fd_spectrum: only the Sommerfeld branch is supported (Dirichlet wall at "
                          "the origin selects the regular solution)");
    }
    const CouplingValue c = eta(mode, angular, alpha, branch);
    const double centrifugal = c.eta * (1.0 - c.eta);
    const int base_n = mode == SpinMode::spinless ? angular + 1 : std::abs(angular);

    FdSpectrum out;
    out.levels = solve_levels(assemble(centrifugal, alpha, grid), base_n, count, alpha);

    const FdGrid coarse{grid.r_max, grid.point_count / 2};
    const auto coarse_levels = solve_levels(assemble(centrifugal, alpha, coarse), base_n, count, alpha);
    for (std::size_t i = 0; i < out.levels.size(); ++i) {
        const double fine = out.levels[i].scaled_binding;
        const double rough = coarse_levels[i].scaled_binding;
        out.coarse_scaled_binding.push_back(rough);
        if (std::abs(fine - rough) > 1e-2 * std::abs(fine)) {
            std::ostringstream os;
            os.precision(6);
            os << "fd_spectrum: level " << i << " moves by " << std::abs(fine - rough) / std::abs(fine)
               << " (relative) between N/2 and N points; grid too coarse";
            throw GridTooCoarseError(os.str());
        }
    }
    return out;
}

FdSpectrum fd_spectrum(SpinMode mode, int angular, Branch branch, const FdGrid& grid, int count,
                       const PhysicalConstants& constants) {
    return fd_spectrum(mode, angular, branch, grid, count, constants.alpha());
}

}  // namespace etaspec
