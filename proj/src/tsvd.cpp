#include "tsketch/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsketch/error.hpp"
#include "tsketch/fft.hpp"
#include "tsketch/linalg.hpp"
#include "tsketch/tensor_ops.hpp"

namespace tsketch {

namespace {

using Index = Eigen::Index;

constexpr double kPinvCutoff = 1e-12;

// How many times slice i appears in the full spectrum once conjugate mirrors
// are counted.
double multiplicity(std::size_t i, std::size_t p) { return (i == 0 || 2 * i == p) ? 1.0 : 2.0; }

CMatrix extend_to_square(const CMatrix& thin) {
    if (thin.cols() == thin.rows()) return thin;
    CMatrix full(thin.rows(), thin.rows());
    full.leftCols(thin.cols()) = thin;
    full.rightCols(thin.rows() - thin.cols()) = orthonormal_complement(thin);
    return full;
}

}  // namespace

DecayTSVD decay_tsvd(const Tensor3& a) {
    const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
    const SpectralTensor spec = dft_mode3(a);
    SpectralTensor u(m, m, p), s(m, n, p), v(n, n, p);
    for_each_independent_slice(p, [&](std::size_t i) {
        const MatrixSVD svd = jacobi_svd(spec.slice(i));
        u.slice(i) = extend_to_square(svd.u);
        v.slice(i) = extend_to_square(svd.v);
        for (Index d = 0; d < svd.s.size(); ++d) s.slice(i)(d, d) = svd.s(d);
    });
    u.mirror_conjugates();
    s.mirror_conjugates();
    v.mirror_conjugates();

    return {idft_mode3(u), idft_mode3(s), idft_mode3(v)};
}

TSingularValues t_singular_values(const Tensor3& a) {
    const std::size_t p = a.tubes();
    const std::size_t r = std::min(a.rows(), a.cols());
    const SpectralTensor spec = dft_mode3(a);
    std::vector<Eigen::VectorXd> per_slice(independent_slices(p));
    for_each_independent_slice(p, [&](std::size_t i) { per_slice[i] = singular_values(spec.slice(i)); });

    TSingularValues out;
    out.values.assign(r, 0.0);
    for (std::size_t i = 0; i < per_slice.size(); ++i) {
        const double w = multiplicity(i, p);
        for (std::size_t d = 0; d < r; ++d) {
            const double sv = per_slice[i](static_cast<Index>(d));
            out.values[d] += w * sv * sv;
        }
    }
    for (double& v : out.values) v = std::sqrt(v / static_cast<double>(p));
    return out;
}

TSingularValues t_singular_values(const DecayTSVD& f) {
    const std::size_t r = std::min(f.s.rows(), f.s.cols());
    TSingularValues out;
    out.values.assign(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < f.s.tubes(); ++k) sum += f.s(i, i, k) * f.s(i, i, k);
        out.values[i] = std::sqrt(sum);
    }
    return out;
}

std::size_t tubal_rank(const TSingularValues& sigma, std::size_t m, std::size_t n, double tol) {
    if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
    const double threshold = tol * sigma[0] * static_cast<double>(std::max(m, n));
    return static_cast<std::size_t>(
        std::count_if(sigma.values.begin(), sigma.values.end(), [&](double s) { return s > threshold; }));
}

std::size_t tubal_rank(const Tensor3& a, double tol) {
    return tubal_rank(t_singular_values(a), a.rows(), a.cols(), tol);
}

double tail_energy(const TSingularValues& sigma, std::size_t j) {
    if (j < 1 || j > sigma.size() + 1) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "tail index " + std::to_string(j) + " outside [1, " + std::to_string(sigma.size() + 1) + "]");
    }
    double total = 0.0;
    for (std::size_t i = j - 1; i < sigma.size(); ++i) total += sigma[i] * sigma[i];
    return total;
}

double tail_energy(const Tensor3& a, std::size_t j) {
    const std::size_t r = std::min(a.rows(), a.cols());
    if (j < 1 || j > r + 1) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "tail index " + std::to_string(j) + " outside [1, " + std::to_string(r + 1) + "]");
    }
    return tail_energy(t_singular_values(a), j);
}

Tensor3 truncate_tsvd(const Tensor3& a, std::size_t k) {
    const std::size_t r = std::min(a.rows(), a.cols());
    if (k < 1 || k > r) {
        throw Error(ErrorKind::IndexOutOfRange, "truncation rank " + std::to_string(k) + " outside [1, " +
                                                    std::to_string(r) + "]");
    }
    const SpectralTensor spec = dft_mode3(a);
    SpectralTensor out(a.rows(), a.cols(), a.tubes());
    const auto kk = static_cast<Index>(k);
    for_each_independent_slice(a.tubes(), [&](std::size_t i) {
        const MatrixSVD svd = jacobi_svd(spec.slice(i));
        out.slice(i).noalias() =
            svd.u.leftCols(kk) * svd.s.head(kk).asDiagonal() * svd.v.leftCols(kk).adjoint();
    });
    out.mirror_conjugates();
    return idft_mode3(out);
}

SpectralQR tqr(const SpectralTensor& y) {
    if (y.rows() < y.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "T-QR needs m >= k, got m=" + std::to_string(y.rows()) +
                                                  ", k=" + std::to_string(y.cols()));
    }
    SpectralQR out{SpectralTensor(y.rows(), y.cols(), y.tubes()), SpectralTensor(y.cols(), y.cols(), y.tubes())};
    for_each_independent_slice(y.tubes(), [&](std::size_t i) {
        ThinQR qr = householder_qr(y.slice(i));
        out.q.slice(i) = std::move(qr.q);
        out.r.slice(i) = std::move(qr.r);
    });
    out.q.mirror_conjugates();
    out.r.mirror_conjugates();
    return out;
}

TQRFactors tqr(const Tensor3& y) {
    if (y.rows() < y.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "T-QR needs m >= k, got m=" + std::to_string(y.rows()) +
                                                  ", k=" + std::to_string(y.cols()));
    }
    const SpectralQR qr = tqr(dft_mode3(y));
    return {idft_mode3(qr.q), idft_mode3(qr.r)};
}

SpectralTensor tpinv(const SpectralTensor& a) {
    SpectralTensor out(a.cols(), a.rows(), a.tubes());
    for_each_independent_slice(a.tubes(), [&](std::size_t i) { out.slice(i) = pseudo_inverse(a.slice(i), kPinvCutoff); });
    out.mirror_conjugates();
    return out;
}

Tensor3 tpinv(const Tensor3& a) { return idft_mode3(tpinv(dft_mode3(a))); }

}  // namespace tsketch
