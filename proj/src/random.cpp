#include "tsketch/random.hpp"

#include <cmath>
#include <numbers>

namespace tsketch {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double NormalSampler::uniform_open() {
    // 53 random bits mapped to (0, 1]; never returns 0 so log() is finite.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Tensor3 gaussian_random_tensor(std::size_t m, std::size_t n, std::size_t p, RngSeed seed) {
    Tensor3 out(m, n, p);
    NormalSampler normal(seed);
    auto first = out.slice(0);
    for (Eigen::Index j = 0; j < first.cols(); ++j) {
        for (Eigen::Index i = 0; i < first.rows(); ++i) first(i, j) = normal();
    }
    return out;
}

Tensor3 dense_gaussian_tensor(std::size_t m, std::size_t n, std::size_t p, RngSeed seed) {
    Tensor3 out(m, n, p);
    NormalSampler normal(seed);
    for (double& v : out.data()) v = normal();
    return out;
}

}  // namespace tsketch
