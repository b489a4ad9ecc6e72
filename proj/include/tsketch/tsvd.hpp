#pragma once

#include <cstddef>
#include <vector>

#include "tsketch/tensor.hpp"

namespace tsketch {

/// a = u * s * v^T with u, v orthogonal and s f-diagonal. In the Fourier
/// domain every slice of s has a real, nonnegative, nonincreasing diagonal.
struct DecayTSVD {
    Tensor3 u;  // m x m x p
    Tensor3 s;  // m x n x p
    Tensor3 v;  // n x n x p
};

/// y = q * r with q^T * q = I and r f-upper-triangular in the Fourier domain.
struct TQRFactors {
    Tensor3 q;  // m x k x p
    Tensor3 r;  // k x k x p
};

/// T-singular values, nonincreasing, min(m, n) entries.
struct TSingularValues {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

DecayTSVD decay_tsvd(const Tensor3& a);

/// sigma_i = sqrt((1/p) sum_k sigma_i(bar A^(k))^2), from per-slice singular values.
TSingularValues t_singular_values(const Tensor3& a);

/// sigma_i = sqrt(sum_k S(i,i,k)^2) read off the spatial core of a factorization.
TSingularValues t_singular_values(const DecayTSVD& f);

/// Number of sigma_i above tol * sigma_1 * max(m, n); zero for the zero tensor.
std::size_t tubal_rank(const Tensor3& a, double tol = 1e-10);
std::size_t tubal_rank(const TSingularValues& sigma, std::size_t m, std::size_t n, double tol = 1e-10);

/// tau_j^2 = sum_{i >= j} sigma_i^2 with 1-based j in [1, min(m, n) + 1].
double tail_energy(const Tensor3& a, std::size_t j);
double tail_energy(const TSingularValues& sigma, std::size_t j);

/// Best tubal-rank-k approximation: the leading k singular triplets of every
/// spectral slice. Requires 1 <= k <= min(m, n).
Tensor3 truncate_tsvd(const Tensor3& a, std::size_t k);

/// Thin T-QR of an m x k x p tensor, m >= k.
TQRFactors tqr(const Tensor3& y);

/// Moore-Penrose inverse, n x m x p, with a per-slice cutoff of
/// 1e-12 * sigma_max(slice) * max(m, n).
Tensor3 tpinv(const Tensor3& a);

/// Spectral forms used by the sketching code so that data stays in the
/// Fourier domain between stages.
struct SpectralQR {
    SpectralTensor q;
    SpectralTensor r;
};
SpectralQR tqr(const SpectralTensor& y);
SpectralTensor tpinv(const SpectralTensor& a);

}  // namespace tsketch
