#pragma once

#include <cstddef>
#include <functional>

#include "tsketch/tensor.hpp"

namespace tsketch {

/// Block-circulant matrix of shape mp x np whose block (r, c) is frontal
/// slice (r - c) mod p.
Matrix bcirc(const Tensor3& t);

/// Frontal slices stacked vertically, mp x n.
Matrix unfold(const Tensor3& t);

/// Inverse of unfold. Throws ShapeMismatch unless M has m*p rows and n columns.
Tensor3 fold(const Matrix& unfolded, std::size_t m, std::size_t n, std::size_t p);

/// T-product of an m x s x p and an s x n x p tensor, computed facewise on the
/// spectrum.
Tensor3 tprod(const Tensor3& a, const Tensor3& b);

/// Facewise product of two spectra of real tensors.
SpectralTensor tprod(const SpectralTensor& a, const SpectralTensor& b);

/// Transpose in the T-product sense: bcirc(ttranspose(a)) == bcirc(a)^T.
Tensor3 ttranspose(const Tensor3& a);

/// Conjugate transpose of every spectral slice, the spectrum of ttranspose.
SpectralTensor ttranspose(const SpectralTensor& a);

Tensor3 identity_tensor(std::size_t n, std::size_t p);

double frobenius_norm(const Tensor3& a);
double squared_norm(const Tensor3& a);
double inf_norm(const Tensor3& a);

/// <a, b> as the sum of entrywise products.
double inner_product(const Tensor3& a, const Tensor3& b);

/// <a, b> evaluated as (1/p) Re trace(bdiag(A)^H bdiag(B)).
double inner_product_spectral(const Tensor3& a, const Tensor3& b);

/// Runs body(i) over the spectral slices that determine a real tensor's
/// spectrum (i < floor(p/2)+1). Callers mirror their outputs afterwards.
void for_each_independent_slice(std::size_t p, const std::function<void(std::size_t)>& body);

}  // namespace tsketch
