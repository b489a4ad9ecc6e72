#pragma once

#include <cstddef>
#include <cstdint>

#include "tsketch/random.hpp"
#include "tsketch/tensor.hpp"

namespace tsketch {

struct SketchParams {
    std::size_t k = 0;  // range sketch size
    std::size_t l = 0;  // co-range sketch size, k <= l
    RngSeed seed{};
    /// Replace the Gaussian test slices by orthonormal bases of their ranges
    /// before sketching. The error analysis assumes raw Gaussian tests.
    bool orthonormalize_tests = false;
};

/// Seed used for the co-range test tensor c; b uses params.seed directly.
constexpr RngSeed corange_seed(RngSeed seed) noexcept { return {seed.value ^ 0x9E3779B97F4A7C15ULL}; }

struct TestTensors {
    Tensor3 b;  // n x k x p
    Tensor3 c;  // l x m x p
};

/// Draws the two test tensors for an m x n x p input. Only frontal slice 0 is
/// nonzero in each.
TestTensors draw_test_tensors(std::size_t m, std::size_t n, std::size_t p, const SketchParams& params);

/// Everything recovery needs. The sketched tensor itself is not retained.
struct SketchState {
    Tensor3 b;  // n x k x p
    Tensor3 c;  // l x m x p
    Tensor3 y;  // m x k x p, y = a * b
    Tensor3 w;  // l x n x p, w = c * a
    SketchParams params;

    std::size_t rows() const noexcept { return y.rows(); }
    std::size_t cols() const noexcept { return w.cols(); }
    std::size_t tubes() const noexcept { return y.tubes(); }
};

/// Forms y = a * b and w = c * a facewise in the Fourier domain. Throws
/// InvalidParams unless 1 <= k <= l and k <= min(m, n).
SketchState build_sketch(const Tensor3& a, const SketchParams& params);

/// Same, with caller-supplied test tensors (ShapeMismatch if they do not fit).
SketchState build_sketch(const Tensor3& a, const TestTensors& tests, const SketchParams& params);

/// Checks shapes and the single-nonzero-slice structure of b and c; throws
/// InvalidParams or ShapeMismatch.
void validate(const SketchState& s);

enum class RecoveryMethod {
    Basic,   // x = (c * q)^+ * w through a pseudoinverse
    Stable,  // extra thin QR of c * q, then a triangular solve
};

/// Intermediates of recovery: q from the T-QR of y, x the least-squares
/// solution, and the approximation q * x.
struct Recovery {
    Tensor3 q;     // m x k x p
    Tensor3 x;     // k x n x p
    Tensor3 ahat;  // m x n x p
};

Recovery recover(const SketchState& s, RecoveryMethod method);

/// Fourier-domain recovery through a per-slice pseudoinverse.
Tensor3 recover_basic(const SketchState& s);

/// Fourier-domain recovery through a second QR; throws Breakdown if the
/// triangular factor of c * q is numerically singular.
Tensor3 recover_stable(const SketchState& s);

}  // namespace tsketch
