#pragma once

#include <cstdint>
#include <random>

#include "tsketch/tensor.hpp"

namespace tsketch {

/// Seed for every random draw in the library. Same seed and same shape give a
/// bit-identical tensor on every platform.
struct RngSeed {
    std::uint64_t value = 0;

    friend bool operator==(RngSeed, RngSeed) = default;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Standard normal sampler: mt19937_64 feeding a Box-Muller transform.
/// std::normal_distribution is avoided because its output is
/// implementation-defined.
class NormalSampler {
public:
    explicit NormalSampler(RngSeed seed) : engine_(seed.value) {}

    double operator()();

private:
    double uniform_open();  // in (0, 1]

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Gaussian random tensor: frontal slice 0 is i.i.d. N(0, 1) filled in
/// column-major order, all other slices are zero. Every spectral slice is then
/// the same real Gaussian matrix.
Tensor3 gaussian_random_tensor(std::size_t m, std::size_t n, std::size_t p, RngSeed seed);

/// Dense tensor with every entry i.i.d. N(0, 1). Used for synthetic test inputs.
Tensor3 dense_gaussian_tensor(std::size_t m, std::size_t n, std::size_t p, RngSeed seed);

}  // namespace tsketch
