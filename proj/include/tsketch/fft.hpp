#pragma once

#include <span>

#include "tsketch/tensor.hpp"

namespace tsketch {

/// In-place unnormalized DFT of a length-p sequence, X[f] = sum_t x[t] e^{-2 pi i f t / p}.
/// Radix-2 when p is a power of two, direct O(p^2) summation otherwise.
/// `inverse` flips the sign of the exponent and applies the 1/p factor.
void dft(std::span<Complex> x, bool inverse = false);

/// Transform along the third mode. Every tube A(a, b, :) is replaced by its DFT.
SpectralTensor dft_mode3(const Tensor3& t);

/// Inverse of dft_mode3. Throws ImaginaryResidual if any output entry has
/// |imag| > 1e-8 * (1 + |real|); the imaginary part is discarded otherwise.
Tensor3 idft_mode3(const SpectralTensor& s);

}  // namespace tsketch
