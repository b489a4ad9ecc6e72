#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsketch/error.hpp"
#include "tsketch/linalg.hpp"

namespace tsketch {
namespace {

CMatrix random_complex(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
    NormalSampler g(RngSeed{seed});
    CMatrix out(m, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i) out(i, j) = Complex(g(), g());
    return out;
}

double orthonormality_defect(const CMatrix& q) {
    return (q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols())).norm();
}

TEST(JacobiSvdTest, MatchesReferenceSingularValues) {
    for (auto [m, n] : {std::pair{6, 4}, std::pair{4, 6}, std::pair{5, 5}, std::pair{1, 3}, std::pair{30, 12}}) {
        const CMatrix a = random_complex(m, n, 10 * m + n);
        const MatrixSVD svd = jacobi_svd(a);
        const Eigen::VectorXd ref = oracle::matrix_singular_values(a);
        ASSERT_EQ(svd.s.size(), ref.size());
        EXPECT_LE((svd.s - ref).norm(), 1e-12 * ref(0));
        EXPECT_LE((svd.u * svd.s.asDiagonal() * svd.v.adjoint() - a).norm(), 1e-12 * a.norm());
        EXPECT_LE(orthonormality_defect(svd.u), 1e-12);
        EXPECT_LE(orthonormality_defect(svd.v), 1e-12);
        for (Eigen::Index i = 1; i < svd.s.size(); ++i) EXPECT_GE(svd.s(i - 1), svd.s(i));
    }
}

TEST(JacobiSvdTest, RankDeficientAndZeroInputs) {
    CMatrix a = random_complex(7, 3, 1) * random_complex(3, 5, 2);
    MatrixSVD svd = jacobi_svd(a);
    EXPECT_LE(svd.s(3), 1e-13 * svd.s(0));
    EXPECT_LE(orthonormality_defect(svd.u), 1e-12);
    EXPECT_LE((svd.u * svd.s.asDiagonal() * svd.v.adjoint() - a).norm(), 1e-12 * a.norm());

    svd = jacobi_svd(CMatrix::Zero(4, 3));
    EXPECT_TRUE(svd.s.isZero(0.0));
    EXPECT_LE(orthonormality_defect(svd.u), 1e-14);
}

TEST(JacobiSvdTest, SquareRankOneInputGetsFullUnitaryBasis) {
    for (Eigen::Index m : {2, 5, 30}) {
        const CMatrix a = random_complex(m, 1, 7) * random_complex(1, m, 8);
        const MatrixSVD svd = jacobi_svd(a);
        EXPECT_LE(orthonormality_defect(svd.u), 1e-12) << m;
        EXPECT_LE((svd.u * svd.s.asDiagonal() * svd.v.adjoint() - a).norm(), 1e-12 * a.norm()) << m;
    }
    const MatrixSVD zero = jacobi_svd(CMatrix::Zero(30, 30));
    EXPECT_LE(orthonormality_defect(zero.u), 1e-14);
}

TEST(JacobiSvdTest, RealInputGivesRealFactors) {
    const CMatrix a = random_complex(5, 4, 3).real().cast<Complex>();
    const MatrixSVD svd = jacobi_svd(a);
    EXPECT_TRUE(svd.u.imag().isZero(0.0));
    EXPECT_TRUE(svd.v.imag().isZero(0.0));
}

TEST(HouseholderQrTest, ReconstructsWithOrthonormalQ) {
    const CMatrix y = random_complex(6, 3, 4);
    const ThinQR qr = householder_qr(y);
    EXPECT_LE((qr.q * qr.r - y).norm(), 1e-13 * y.norm());
    EXPECT_LE(orthonormality_defect(qr.q), 1e-13);
    EXPECT_TRUE(qr.r.isUpperTriangular(0.0));
    for (Eigen::Index i = 0; i < 3; ++i) {
        EXPECT_GE(qr.r(i, i).real(), 0.0);
        EXPECT_EQ(qr.r(i, i).imag(), 0.0);
    }
}

TEST(HouseholderQrTest, OrthonormalInputIsFixedPoint) {
    const CMatrix y = CMatrix::Identity(4, 2);
    const ThinQR qr = householder_qr(y);
    EXPECT_LE((qr.q - y).norm(), 1e-15);
    EXPECT_LE((qr.r - CMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(HouseholderQrTest, DuplicatedAndZeroColumns) {
    CMatrix y = random_complex(5, 3, 5);
    y.col(2) = y.col(0);
    ThinQR qr = householder_qr(y);
    EXPECT_LE(orthonormality_defect(qr.q), 1e-12);
    EXPECT_LE((qr.q * qr.r - y).norm(), 1e-12 * y.norm());

    qr = householder_qr(CMatrix::Zero(4, 2));
    EXPECT_LE(orthonormality_defect(qr.q), 1e-15);
    EXPECT_TRUE(qr.r.isZero(0.0));
}

TEST(HouseholderQrTest, RejectsWideInput) { EXPECT_THROW(householder_qr(CMatrix::Zero(2, 3)), Error); }

TEST(ComplementTest, CompletesToUnitary) {
    const CMatrix q = householder_qr(random_complex(6, 2, 6)).q;
    const CMatrix comp = orthonormal_complement(q);
    ASSERT_EQ(comp.cols(), 4);
    CMatrix full(6, 6);
    full << q, comp;
    EXPECT_LE(orthonormality_defect(full), 1e-13);
}

TEST(PseudoInverseTest, PenroseConditions) {
    for (auto [m, n] : {std::pair{5, 3}, std::pair{3, 5}}) {
        const CMatrix a = random_complex(m, 2, 7) * random_complex(2, n, 8);
        const CMatrix x = pseudo_inverse(a);
        EXPECT_LE((a * x * a - a).norm(), 1e-10 * a.norm());
        EXPECT_LE((x * a * x - x).norm(), 1e-10 * x.norm());
        EXPECT_LE((a * x - (a * x).adjoint()).norm(), 1e-10);
        EXPECT_LE((x * a - (x * a).adjoint()).norm(), 1e-10);
    }
    EXPECT_TRUE(pseudo_inverse(CMatrix::Zero(3, 2)).isZero(0.0));
}

TEST(TriangularSolveTest, SolvesAndDetectsBreakdown) {
    CMatrix t = householder_qr(random_complex(4, 4, 9)).r;
    const CMatrix rhs = random_complex(4, 2, 10);
    EXPECT_LE((t * solve_upper_triangular(t, rhs) - rhs).norm(), 1e-12 * rhs.norm());
    t(2, 2) = 0.0;
    try {
        solve_upper_triangular(t, rhs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Breakdown);
    }
}

}  // namespace
}  // namespace tsketch
