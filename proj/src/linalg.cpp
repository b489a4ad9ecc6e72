#include "tsketch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "tsketch/error.hpp"

namespace tsketch {

namespace {

using Index = Eigen::Index;

constexpr int kMaxSweeps = 60;
constexpr double kRotationTolerance = 1e-14;

struct Reflectors {
    CMatrix packed;                // R in the upper triangle after factorization
    std::vector<Eigen::VectorXcd> v;
    std::vector<double> beta;      // H_j = I - beta_j v_j v_j^H, beta_j = 0 for identity
};

Reflectors factor(const CMatrix& a) {
    Reflectors f{a, {}, {}};
    const Index m = a.rows(), n = a.cols();
    const Index steps = std::min(m, n);
    f.v.reserve(static_cast<std::size_t>(steps));
    f.beta.reserve(static_cast<std::size_t>(steps));
    for (Index j = 0; j < steps; ++j) {
        Eigen::VectorXcd x = f.packed.col(j).tail(m - j);
        const double norm_x = x.norm();
        if (norm_x == 0.0) {
            f.v.emplace_back(Eigen::VectorXcd::Zero(m - j));
            f.beta.push_back(0.0);
            continue;
        }
        const Complex phase = std::abs(x(0)) > 0.0 ? x(0) / std::abs(x(0)) : Complex(1.0);
        const Complex alpha = -phase * norm_x;
        x(0) -= alpha;
        const double beta = 2.0 / x.squaredNorm();
        auto trailing = f.packed.bottomRightCorner(m - j, n - j);
        const Eigen::RowVectorXcd w = x.adjoint() * trailing;
        trailing.noalias() -= (beta * x) * w;
        f.packed.col(j).tail(m - j - 1).setZero();
        f.packed(j, j) = alpha;
        f.v.push_back(std::move(x));
        f.beta.push_back(beta);
    }
    return f;
}

// Applies H_0 H_1 ... H_{s-1} to `target` (m x c) from the left.
void apply_q(const Reflectors& f, CMatrix& target) {
    const Index m = target.rows();
    for (Index j = static_cast<Index>(f.v.size()) - 1; j >= 0; --j) {
        const auto& v = f.v[static_cast<std::size_t>(j)];
        const double beta = f.beta[static_cast<std::size_t>(j)];
        if (beta == 0.0) continue;
        auto rows = target.bottomRows(m - j);
        const Eigen::RowVectorXcd w = v.adjoint() * rows;
        rows.noalias() -= (beta * v) * w;
    }
}

// Projects x onto the complement of the first `count` columns of q, twice.
void reorthogonalize(const CMatrix& q, Index count, Eigen::VectorXcd& x) {
    for (int pass = 0; pass < 2; ++pass) {
        for (Index c = 0; c < count; ++c) x -= q.col(c) * q.col(c).dot(x);
    }
}

// Orthonormalizes the columns of u in place, in order. Columns that are
// numerically dependent on their predecessors are replaced by standard basis
// vectors projected onto the remaining complement.
void repair_orthonormal(CMatrix& u) {
    const Index m = u.rows();
    for (Index j = 0; j < u.cols(); ++j) {
        Eigen::VectorXcd x = u.col(j);
        reorthogonalize(u, j, x);
        double norm = x.norm();
        if (!(norm > 0.5)) {
            // Some standard basis vector keeps at least a 1/m share of its
            // squared norm after projection, so the best one is safe to use.
            for (Index c = 0; c < m; ++c) {
                Eigen::VectorXcd e = Eigen::VectorXcd::Unit(m, c);
                reorthogonalize(u, j, e);
                const double en = e.norm();
                if (en > norm) x = std::move(e), norm = en;
            }
            if (!(norm > 0.0)) throw Error(ErrorKind::SvdNoConvergence, "cannot complete an orthonormal basis");
        }
        u.col(j) = x / norm;
    }
}

// One-sided Jacobi on a matrix with rows >= cols.
MatrixSVD jacobi_tall(const CMatrix& a) {
    const Index m = a.rows(), n = a.cols();
    CMatrix w = a;
    CMatrix v = CMatrix::Identity(n, n);
    const double tol = std::max(kRotationTolerance, static_cast<double>(m) * std::numeric_limits<double>::epsilon());
    const double floor = std::pow(kRotationTolerance * a.norm(), 2);
    Eigen::VectorXd sq(n);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        // Squared column norms, refreshed every sweep and updated in closed
        // form after each rotation.
        for (Index j = 0; j < n; ++j) sq(j) = w.col(j).squaredNorm();
        for (Index i = 0; i + 1 < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                const double alpha = sq(i);
                const double beta = sq(j);
                const Complex gamma = w.col(i).dot(w.col(j));
                const double g = std::abs(gamma);
                if (g <= floor || g <= tol * std::sqrt(alpha * beta)) continue;
                converged = false;

                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                const Complex e = std::conj(gamma / g);

                // [x_i, x_j] <- [c x_i - s e x_j, s x_i + c e x_j]; unitary, and
                // zeroes the (i, j) entry of the Gram matrix.
                // Written on the interleaved real storage of std::complex so the
                // loop vectorizes without the library's NaN-safe complex multiply.
                const double sr = s * e.real(), si = s * e.imag();
                const double cr = c * e.real(), ci = c * e.imag();
                auto rotate = [&](CMatrix& x) {
                    double* __restrict xi = reinterpret_cast<double*>(x.col(i).data());
                    double* __restrict xj = reinterpret_cast<double*>(x.col(j).data());
                    for (Index r = 0; r < 2 * x.rows(); r += 2) {
                        const double ar = xi[r], ai = xi[r + 1], br = xj[r], bi = xj[r + 1];
                        xi[r] = c * ar - (sr * br - si * bi);
                        xi[r + 1] = c * ai - (sr * bi + si * br);
                        xj[r] = s * ar + (cr * br - ci * bi);
                        xj[r + 1] = s * ai + (cr * bi + ci * br);
                    }
                };
                rotate(w);
                rotate(v);
                sq(i) = std::max(0.0, c * c * alpha + s * s * beta - 2.0 * c * s * g);
                sq(j) = std::max(0.0, s * s * alpha + c * c * beta + 2.0 * c * s * g);
            }
        }
    }
    if (!converged) {
        throw Error(ErrorKind::SvdNoConvergence,
                    "Jacobi SVD did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
    }

    Eigen::VectorXd norms(n);
    for (Index j = 0; j < n; ++j) norms(j) = w.col(j).norm();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return norms(x) > norms(y); });

    MatrixSVD out{CMatrix(m, n), Eigen::VectorXd(n), CMatrix(n, n)};
    for (Index j = 0; j < n; ++j) {
        const Index src = order[static_cast<std::size_t>(j)];
        out.s(j) = norms(src);
        out.v.col(j) = v.col(src);
        if (norms(src) > 0.0) {
            out.u.col(j) = w.col(src) / norms(src);
        } else {
            out.u.col(j).setZero();
        }
    }
    repair_orthonormal(out.u);
    return out;
}

}  // namespace

ThinQR householder_qr(const CMatrix& a) {
    const Index m = a.rows(), n = a.cols();
    if (m < n) {
        throw Error(ErrorKind::ShapeMismatch,
                    "thin QR needs rows >= cols, got " + std::to_string(m) + "x" + std::to_string(n));
    }
    const Reflectors f = factor(a);
    ThinQR out{CMatrix::Identity(m, n), f.packed.topRows(n).triangularView<Eigen::Upper>()};
    apply_q(f, out.q);
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(out.r(j, j));
        if (mag == 0.0) continue;
        const Complex d = out.r(j, j) / mag;
        out.r.row(j) *= std::conj(d);
        out.r(j, j) = mag;
        out.q.col(j) *= d;
    }
    return out;
}

CMatrix orthonormal_complement(const CMatrix& basis) {
    const Index m = basis.rows(), r = basis.cols();
    if (r > m) throw Error(ErrorKind::ShapeMismatch, "basis has more columns than rows");
    if (r == 0) return CMatrix::Identity(m, m);
    const Reflectors f = factor(basis);
    CMatrix full = CMatrix::Identity(m, m);
    apply_q(f, full);
    return full.rightCols(m - r);
}

MatrixSVD jacobi_svd(const CMatrix& a) {
    if (a.rows() < a.cols()) {
        MatrixSVD t = jacobi_svd(a.adjoint());
        return {std::move(t.v), std::move(t.s), std::move(t.u)};
    }
    if (a.rows() == a.cols()) return jacobi_tall(a);
    // a = q r, and rotating the columns of r^H (square, and already closer to
    // orthogonal than a) needs fewer and cheaper sweeps. With r^H = u' s v'^H,
    // a = (q v') s u'^H.
    const ThinQR qr = householder_qr(a);
    MatrixSVD t = jacobi_tall(qr.r.adjoint());
    return {qr.q * t.v, std::move(t.s), std::move(t.u)};
}

Eigen::VectorXd singular_values(const CMatrix& a) { return jacobi_svd(a).s; }

CMatrix pseudo_inverse(const CMatrix& a, double rel_cutoff) {
    const MatrixSVD svd = jacobi_svd(a);
    const double s_max = svd.s.size() > 0 ? svd.s(0) : 0.0;
    const double cutoff = rel_cutoff * s_max * static_cast<double>(std::max(a.rows(), a.cols()));
    Index kept = 0;
    while (kept < svd.s.size() && svd.s(kept) > cutoff) ++kept;
    if (kept == 0) return CMatrix::Zero(a.cols(), a.rows());
    const CMatrix scaled = svd.v.leftCols(kept) * svd.s.head(kept).cwiseInverse().asDiagonal();
    return scaled * svd.u.leftCols(kept).adjoint();
}

CMatrix solve_upper_triangular(const CMatrix& t, const CMatrix& rhs, double rel_floor) {
    const Index k = t.rows();
    if (t.cols() != k || rhs.rows() != k) throw Error(ErrorKind::ShapeMismatch, "triangular solve");
    const double floor = rel_floor * t.norm();
    for (Index i = 0; i < k; ++i) {
        if (!(std::abs(t(i, i)) >= floor) || t(i, i) == 0.0) {
            throw Error(ErrorKind::Breakdown, "triangular factor is numerically singular at row " + std::to_string(i));
        }
    }
    return t.triangularView<Eigen::Upper>().solve(rhs);
}

}  // namespace tsketch
