#include "tsketch/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsketch/error.hpp"
#include "tsketch/fft.hpp"
#include "tsketch/parallel.hpp"

namespace tsketch {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::string shape_str(const Tensor3& t) {
    return std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + "x" + std::to_string(t.tubes());
}

}  // namespace

void for_each_independent_slice(std::size_t p, const std::function<void(std::size_t)>& body) {
    parallel_for(independent_slices(p), body);
}

Matrix bcirc(const Tensor3& t) {
    const std::size_t m = t.rows(), n = t.cols(), p = t.tubes();
    Matrix out(idx(m * p), idx(n * p));
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            out.block(idx(r * m), idx(c * n), idx(m), idx(n)) = t.slice((r + p - c) % p);
        }
    }
    return out;
}

Matrix unfold(const Tensor3& t) {
    const std::size_t m = t.rows(), n = t.cols(), p = t.tubes();
    Matrix out(idx(m * p), idx(n));
    for (std::size_t k = 0; k < p; ++k) out.middleRows(idx(k * m), idx(m)) = t.slice(k);
    return out;
}

Tensor3 fold(const Matrix& unfolded, std::size_t m, std::size_t n, std::size_t p) {
    if (unfolded.rows() != idx(m * p) || unfolded.cols() != idx(n)) {
        throw Error(ErrorKind::ShapeMismatch, "fold: expected " + std::to_string(m * p) + "x" + std::to_string(n) +
                                                  " matrix, got " + std::to_string(unfolded.rows()) + "x" +
                                                  std::to_string(unfolded.cols()));
    }
    Tensor3 out(m, n, p);
    for (std::size_t k = 0; k < p; ++k) out.slice(k) = unfolded.middleRows(idx(k * m), idx(m));
    return out;
}

SpectralTensor tprod(const SpectralTensor& a, const SpectralTensor& b) {
    if (a.cols() != b.rows() || a.tubes() != b.tubes()) {
        throw Error(ErrorKind::ShapeMismatch, "tprod: inner dimension or tube count differs");
    }
    SpectralTensor out(a.rows(), b.cols(), a.tubes());
    for_each_independent_slice(a.tubes(), [&](std::size_t i) { out.slice(i).noalias() = a.slice(i) * b.slice(i); });
    out.mirror_conjugates();
    return out;
}

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
    if (a.cols() != b.rows() || a.tubes() != b.tubes()) {
        throw Error(ErrorKind::ShapeMismatch, "tprod: cannot multiply " + shape_str(a) + " by " + shape_str(b));
    }
    return idft_mode3(tprod(dft_mode3(a), dft_mode3(b)));
}

Tensor3 ttranspose(const Tensor3& a) {
    const std::size_t p = a.tubes();
    Tensor3 out(a.cols(), a.rows(), p);
    for (std::size_t k = 0; k < p; ++k) out.slice(k) = a.slice((p - k) % p).transpose();
    return out;
}

SpectralTensor ttranspose(const SpectralTensor& a) {
    SpectralTensor out(a.cols(), a.rows(), a.tubes());
    for (std::size_t i = 0; i < a.tubes(); ++i) out.slice(i) = a.slice(i).adjoint();
    return out;
}

Tensor3 identity_tensor(std::size_t n, std::size_t p) {
    Tensor3 out(n, n, p);
    out.slice(0).setIdentity();
    return out;
}

double squared_norm(const Tensor3& a) {
    double total = 0.0;
    for (double v : a.data()) total += v * v;
    return total;
}

double frobenius_norm(const Tensor3& a) { return std::sqrt(squared_norm(a)); }

double inf_norm(const Tensor3& a) {
    double best = 0.0;
    for (double v : a.data()) best = std::max(best, std::abs(v));
    return best;
}

double inner_product(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw Error(ErrorKind::ShapeMismatch, "inner_product: " + shape_str(a) + " vs " + shape_str(b));
    double total = 0.0;
    const auto x = a.data();
    const auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * y[i];
    return total;
}

double inner_product_spectral(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw Error(ErrorKind::ShapeMismatch, "inner_product: " + shape_str(a) + " vs " + shape_str(b));
    const SpectralTensor sa = dft_mode3(a);
    const SpectralTensor sb = dft_mode3(b);
    Complex total = 0.0;
    for (std::size_t i = 0; i < sa.tubes(); ++i) total += sa.slice(i).conjugate().cwiseProduct(sb.slice(i)).sum();
    return total.real() / static_cast<double>(a.tubes());
}

}  // namespace tsketch
