#include "tsketch/sketch.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "tsketch/error.hpp"
#include "tsketch/fft.hpp"
#include "tsketch/linalg.hpp"
#include "tsketch/tensor_ops.hpp"
#include "tsketch/tsvd.hpp"

namespace tsketch {

namespace {

constexpr double kTriangularFloor = 1e-12;
constexpr double kPinvCutoff = 1e-12;

void check_params(std::size_t m, std::size_t n, const SketchParams& params) {
    if (params.k < 1) throw Error(ErrorKind::InvalidParams, "k must be at least 1");
    if (params.k > params.l) {
        throw Error(ErrorKind::InvalidParams,
                    "k = " + std::to_string(params.k) + " exceeds l = " + std::to_string(params.l));
    }
    if (params.k > std::min(m, n)) {
        throw Error(ErrorKind::InvalidParams,
                    "k = " + std::to_string(params.k) + " exceeds min(m, n) = " + std::to_string(std::min(m, n)));
    }
}

bool only_first_slice(const Tensor3& t) {
    for (std::size_t k = 1; k < t.tubes(); ++k) {
        if (!t.slice(k).isZero(0.0)) return false;
    }
    return true;
}

Matrix orthonormal_columns(const Matrix& a) { return householder_qr(a.cast<Complex>()).q.real(); }

// Spectral slices of a test tensor. With only frontal slice 0 nonzero every
// spectral slice equals that real slice, so the transform is skipped.
class TestSpectrum {
public:
    explicit TestSpectrum(const Tensor3& t) {
        if (only_first_slice(t)) {
            shared_ = t.slice(0);
        } else {
            full_ = dft_mode3(t);
        }
    }

    template <class Rhs>
    CMatrix times(const Rhs& rhs, std::size_t i) const {
        if (full_) return full_->slice(i) * rhs;
        return *shared_ * rhs;
    }

    template <class Lhs>
    CMatrix times_on_left(const Lhs& lhs, std::size_t i) const {
        if (full_) return lhs * full_->slice(i);
        return lhs * *shared_;
    }

private:
    std::optional<Matrix> shared_;
    std::optional<SpectralTensor> full_;
};

}  // namespace

TestTensors draw_test_tensors(std::size_t m, std::size_t n, std::size_t p, const SketchParams& params) {
    check_params(m, n, params);
    TestTensors t{gaussian_random_tensor(n, params.k, p, params.seed),
                  gaussian_random_tensor(params.l, m, p, corange_seed(params.seed))};
    if (params.orthonormalize_tests) {
        if (params.l > m) {
            throw Error(ErrorKind::InvalidParams, "orthonormalized co-range test needs l <= m");
        }
        t.b.slice(0) = orthonormal_columns(t.b.slice(0));
        t.c.slice(0) = orthonormal_columns(t.c.slice(0).transpose()).transpose();
    }
    return t;
}

SketchState build_sketch(const Tensor3& a, const SketchParams& params) {
    return build_sketch(a, draw_test_tensors(a.rows(), a.cols(), a.tubes(), params), params);
}

SketchState build_sketch(const Tensor3& a, const TestTensors& tests, const SketchParams& params) {
    const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
    check_params(m, n, params);
    if (tests.b.rows() != n || tests.b.cols() != params.k || tests.b.tubes() != p || tests.c.rows() != params.l ||
        tests.c.cols() != m || tests.c.tubes() != p) {
        throw Error(ErrorKind::ShapeMismatch, "test tensors do not match the input and (k, l)");
    }

    const SpectralTensor abar = dft_mode3(a);
    const TestSpectrum bbar(tests.b), cbar(tests.c);
    SpectralTensor ybar(m, params.k, p), wbar(params.l, n, p);
    for_each_independent_slice(p, [&](std::size_t i) {
        ybar.slice(i) = bbar.times_on_left(abar.slice(i), i);
        wbar.slice(i) = cbar.times(abar.slice(i), i);
    });
    ybar.mirror_conjugates();
    wbar.mirror_conjugates();
    return {tests.b, tests.c, idft_mode3(ybar), idft_mode3(wbar), params};
}

void validate(const SketchState& s) {
    const std::size_t m = s.y.rows(), n = s.w.cols(), p = s.y.tubes();
    const auto& pr = s.params;
    if (s.y.cols() != pr.k || s.b.rows() != n || s.b.cols() != pr.k || s.c.rows() != pr.l || s.c.cols() != m ||
        s.w.rows() != pr.l || s.b.tubes() != p || s.c.tubes() != p || s.w.tubes() != p) {
        throw Error(ErrorKind::ShapeMismatch, "sketch components have inconsistent shapes");
    }
    check_params(m, n, pr);
    if (!only_first_slice(s.b) || !only_first_slice(s.c)) {
        throw Error(ErrorKind::InvalidParams, "test tensors must have a single nonzero frontal slice");
    }
}

namespace {

struct SpectralRecovery {
    SpectralTensor q, x, ahat;
};

SpectralRecovery recover_spectral(const SketchState& s, RecoveryMethod method) {
    validate(s);
    const std::size_t m = s.rows(), n = s.cols(), p = s.tubes(), k = s.params.k;
    const SpectralTensor ybar = dft_mode3(s.y);
    const SpectralTensor wbar = dft_mode3(s.w);
    const TestSpectrum cbar(s.c);
    SpectralRecovery out{SpectralTensor(m, k, p), SpectralTensor(k, n, p), SpectralTensor(m, n, p)};

    for_each_independent_slice(p, [&](std::size_t i) {
        CMatrix& q = out.q.slice(i);
        q = householder_qr(ybar.slice(i)).q;
        const CMatrix cq = cbar.times(q, i);
        if (method == RecoveryMethod::Basic) {
            out.x.slice(i).noalias() = pseudo_inverse(cq, kPinvCutoff) * wbar.slice(i);
        } else {
            const ThinQR st = householder_qr(cq);
            out.x.slice(i) = solve_upper_triangular(st.r, st.q.adjoint() * wbar.slice(i), kTriangularFloor);
        }
        out.ahat.slice(i).noalias() = q * out.x.slice(i);
    });
    out.ahat.mirror_conjugates();
    return out;
}

}  // namespace

Recovery recover(const SketchState& s, RecoveryMethod method) {
    SpectralRecovery r = recover_spectral(s, method);
    r.q.mirror_conjugates();
    r.x.mirror_conjugates();
    return {idft_mode3(r.q), idft_mode3(r.x), idft_mode3(r.ahat)};
}

Tensor3 recover_basic(const SketchState& s) { return idft_mode3(recover_spectral(s, RecoveryMethod::Basic).ahat); }

Tensor3 recover_stable(const SketchState& s) { return idft_mode3(recover_spectral(s, RecoveryMethod::Stable).ahat); }

}  // namespace tsketch
