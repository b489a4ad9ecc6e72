#pragma once

#include <Eigen/Dense>

#include "tsketch/tensor.hpp"

namespace tsketch {

/// Thin QR of an m x n complex matrix with m >= n. R has a real nonnegative
/// diagonal, which makes the factorization unique for full-rank input and
/// keeps real input real.
struct ThinQR {
    CMatrix q;  // m x n, orthonormal columns
    CMatrix r;  // n x n, upper triangular
};

/// Householder QR. Rank-deficient columns produce a zero diagonal entry in R
/// while Q stays orthonormal. Throws ShapeMismatch if m < n.
ThinQR householder_qr(const CMatrix& a);

/// Orthonormal basis of the orthogonal complement of the columns of `basis`
/// (which must have orthonormal columns); result is m x (m - basis.cols()).
CMatrix orthonormal_complement(const CMatrix& basis);

/// Thin SVD a = u * diag(s) * v^H with r = min(m, n) columns in u and v and s
/// nonincreasing.
struct MatrixSVD {
    CMatrix u;
    Eigen::VectorXd s;
    CMatrix v;
};

/// One-sided (Hestenes) Jacobi SVD. A pair of columns is rotated while their
/// normalized inner product exceeds max(1e-14, m*eps); at most 60 sweeps,
/// after which SvdNoConvergence is thrown.
MatrixSVD jacobi_svd(const CMatrix& a);

/// Singular values only, nonincreasing.
Eigen::VectorXd singular_values(const CMatrix& a);

/// Moore-Penrose pseudoinverse. Singular values at or below
/// rel_cutoff * s_max * max(m, n) are treated as zero.
CMatrix pseudo_inverse(const CMatrix& a, double rel_cutoff = 1e-12);

/// Solves T x = rhs for upper-triangular T by back-substitution. Throws
/// Breakdown if some |T(i,i)| < rel_floor * ||T||_F.
CMatrix solve_upper_triangular(const CMatrix& t, const CMatrix& rhs, double rel_floor = 1e-12);

}  // namespace tsketch
