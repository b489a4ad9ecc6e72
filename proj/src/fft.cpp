#include "tsketch/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "tsketch/error.hpp"
#include "tsketch/parallel.hpp"

namespace tsketch {

namespace {

constexpr double kImagTolerance = 1e-8;

// Twiddle table w[t] = exp(sign * 2 pi i t / p), indexed modulo p so that
// large products f*t never lose accuracy in the angle.
std::vector<Complex> twiddles(std::size_t p, bool inverse) {
    std::vector<Complex> w(p);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t t = 0; t < p; ++t) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p);
        w[t] = {std::cos(angle), std::sin(angle)};
    }
    return w;
}

void naive_dft(std::span<Complex> x, const std::vector<Complex>& w) {
    const std::size_t p = x.size();
    std::vector<Complex> out(p);
    for (std::size_t f = 0; f < p; ++f) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < p; ++t) acc += x[t] * w[(f * t) % p];
        out[f] = acc;
    }
    std::copy(out.begin(), out.end(), x.begin());
}

void radix2_fft(std::span<Complex> x, const std::vector<Complex>& w) {
    const std::size_t p = x.size();
    for (std::size_t i = 1, j = 0; i < p; ++i) {
        std::size_t bit = p >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= p; len <<= 1) {
        const std::size_t stride = p / len;
        for (std::size_t start = 0; start < p; start += len) {
            for (std::size_t t = 0; t < len / 2; ++t) {
                const Complex u = x[start + t];
                const Complex v = x[start + t + len / 2] * w[t * stride];
                x[start + t] = u + v;
                x[start + t + len / 2] = u - v;
            }
        }
    }
}

void transform(std::span<Complex> x, const std::vector<Complex>& w) {
    if (x.size() <= 1) return;
    if (std::has_single_bit(x.size())) {
        radix2_fft(x, w);
    } else {
        naive_dft(x, w);
    }
}

}  // namespace

void dft(std::span<Complex> x, bool inverse) {
    transform(x, twiddles(x.size(), inverse));
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(x.size());
        for (auto& v : x) v *= scale;
    }
}

namespace {

// Up to this many tubes (and for every length that is not a power of two) the
// mode-3 transforms are evaluated as sums of whole frontal slices. The slices
// are contiguous, so each term is a vectorized axpy, and the conjugate
// symmetry of real input halves the forward work.
constexpr std::size_t kSliceSumLimit = 32;

bool use_slice_sums(std::size_t p) { return p <= kSliceSumLimit || !std::has_single_bit(p); }

void forward_by_slices(const Tensor3& t, SpectralTensor& out) {
    const std::size_t m = t.rows(), n = t.cols(), p = t.tubes();
    const auto w = twiddles(p, false);
    parallel_for(independent_slices(p), [&](std::size_t f) {
        Matrix re = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        Matrix im = re;
        const bool real_slice = f == 0 || 2 * f == p;
        for (std::size_t k = 0; k < p; ++k) {
            const Complex z = w[(f * k) % p];
            re.noalias() += z.real() * t.slice(k);
            if (!real_slice) im.noalias() += z.imag() * t.slice(k);
        }
        CMatrix& dst = out.slice(f);
        dst.real() = re;
        dst.imag() = im;
    });
    out.mirror_conjugates();
}

void forward_by_tubes(const Tensor3& t, SpectralTensor& out) {
    const std::size_t m = t.rows(), n = t.cols(), p = t.tubes();
    const auto w = twiddles(p, false);
    parallel_for(n, [&](std::size_t j) {
        std::vector<Complex> tube(p);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < p; ++k) tube[k] = t(i, j, k);
            transform(tube, w);
            // The DC and Nyquist coefficients of a real tube are real; drop the
            // roundoff so that downstream factorizations of these slices stay real.
            tube[0].imag(0.0);
            tube[p / 2].imag(0.0);
            for (std::size_t k = 0; k < p; ++k) out.slice(k)(i, j) = tube[k];
        }
    });
}

[[noreturn]] void imaginary_residual(double value, std::size_t i, std::size_t j, std::size_t k) {
    throw Error(ErrorKind::ImaginaryResidual, "inverse transform left imaginary part " + std::to_string(value) + " at (" +
                                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                                  std::to_string(k) + ")");
}

bool acceptable_residual(double re, double im) { return std::abs(im) <= kImagTolerance * (1.0 + std::abs(re)); }

void inverse_by_slices(const SpectralTensor& s, Tensor3& out) {
    const std::size_t m = s.rows(), n = s.cols(), p = s.tubes();
    const auto w = twiddles(p, true);
    const double scale = 1.0 / static_cast<double>(p);
    std::vector<Matrix> parts_re(p), parts_im(p);
    for (std::size_t f = 0; f < p; ++f) {
        parts_re[f] = s.slice(f).real();
        parts_im[f] = s.slice(f).imag();
    }
    parallel_for(p, [&](std::size_t k) {
        Matrix re = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        Matrix im = re;
        for (std::size_t f = 0; f < p; ++f) {
            const Complex z = w[(f * k) % p];
            re.noalias() += z.real() * parts_re[f] - z.imag() * parts_im[f];
            im.noalias() += z.imag() * parts_re[f] + z.real() * parts_im[f];
        }
        re *= scale;
        im *= scale;
        for (Eigen::Index j = 0; j < re.cols(); ++j) {
            for (Eigen::Index i = 0; i < re.rows(); ++i) {
                if (!acceptable_residual(re(i, j), im(i, j))) {
                    imaginary_residual(im(i, j), static_cast<std::size_t>(i), static_cast<std::size_t>(j), k);
                }
            }
        }
        out.slice(k) = re;
    });
}

void inverse_by_tubes(const SpectralTensor& s, Tensor3& out) {
    const std::size_t m = s.rows(), n = s.cols(), p = s.tubes();
    const auto w = twiddles(p, true);
    const double scale = 1.0 / static_cast<double>(p);
    parallel_for(n, [&](std::size_t j) {
        std::vector<Complex> tube(p);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < p; ++k) tube[k] = s.slice(k)(i, j);
            transform(tube, w);
            for (std::size_t k = 0; k < p; ++k) {
                const Complex v = tube[k] * scale;
                if (!acceptable_residual(v.real(), v.imag())) imaginary_residual(v.imag(), i, j, k);
                out(i, j, k) = v.real();
            }
        }
    });
}

}  // namespace

SpectralTensor dft_mode3(const Tensor3& t) {
    SpectralTensor out(t.rows(), t.cols(), t.tubes());
    if (use_slice_sums(t.tubes())) {
        forward_by_slices(t, out);
    } else {
        forward_by_tubes(t, out);
    }
    return out;
}

Tensor3 idft_mode3(const SpectralTensor& s) {
    Tensor3 out(s.rows(), s.cols(), s.tubes());
    if (use_slice_sums(s.tubes())) {
        inverse_by_slices(s, out);
    } else {
        inverse_by_tubes(s, out);
    }
    return out;
}

}  // namespace tsketch
