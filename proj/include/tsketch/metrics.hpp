#pragma once

#include "tsketch/tensor.hpp"

namespace tsketch {

/// ||a - ahat||_F^2 / ||a||_F^2. Throws ZeroReference when a is zero.
double relative_error(const Tensor3& a, const Tensor3& ahat);

/// 10 log10(m n p ||a||_inf^2 / ||a - ahat||_F^2) in dB; +inf when ahat == a.
double psnr(const Tensor3& a, const Tensor3& ahat);

}  // namespace tsketch
