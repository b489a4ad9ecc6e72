#pragma once

#include <cstddef>

#include "tsketch/tensor.hpp"

namespace tsketch {

enum class SpectrumKind { Poly, Exp };

/// Synthetic f-diagonal test tensor with a decaying diagonal. Frontal slice j
/// (1-based) starts with min(r, j) ones followed by a decaying tail.
struct SpectrumSpec {
    SpectrumKind kind = SpectrumKind::Poly;
    std::size_t n = 100;         // slices are n x n
    std::size_t p_slices = 10;   // number of frontal slices
    std::size_t r = 10;          // rank of the significant part
    double decay = 1.0;          // polynomial exponent, or exponential rate q
};

/// Tail entry i (1-based, i > min(r, j)) is (i - min(r, j) + 1)^(-decay).
Tensor3 gen_poly_decay(const SpectrumSpec& spec);

/// Tail entry i (1-based, i > min(r, j)) is 10^(-(i - min(r, j)) * decay).
Tensor3 gen_exp_decay(const SpectrumSpec& spec);

/// Dispatches on spec.kind.
Tensor3 generate(const SpectrumSpec& spec);

/// Diagonal entry i (0-based) of frontal slice j (0-based) under `spec`.
double spectrum_entry(const SpectrumSpec& spec, std::size_t i, std::size_t j);

}  // namespace tsketch
