#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tsketch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

/// Dense real third-order tensor of shape m x n x p.
///
/// Storage is frontal-slice-major and column-major inside a slice, so entry
/// (i, j, k) lives at `k*m*n + j*m + i` and every frontal slice is a
/// contiguous column-major m x n block.
class Tensor3 {
public:
    Tensor3() = default;
    /// Zero tensor. All extents must be positive.
    Tensor3(std::size_t m, std::size_t n, std::size_t p);
    /// Takes ownership of `data`; its length must be m*n*p and every entry finite.
    Tensor3(std::size_t m, std::size_t n, std::size_t p, std::vector<double> data);

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return n_; }
    std::size_t tubes() const noexcept { return p_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept {
        return data_[(k * n_ + j) * m_ + i];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return data_[(k * n_ + j) * m_ + i];
    }

    /// Frontal slice k (0-based) as an m x n column-major view.
    MatrixMap slice(std::size_t k);
    ConstMatrixMap slice(std::size_t k) const;

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const Tensor3& other) const noexcept {
        return m_ == other.m_ && n_ == other.n_ && p_ == other.p_;
    }

    Tensor3& operator+=(const Tensor3& other);
    Tensor3& operator-=(const Tensor3& other);
    Tensor3& operator*=(double s);

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    std::vector<double> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double s, Tensor3 a);

/// Mode-3 DFT of a tensor: p complex m x n slices, slice i holding the
/// i-th frequency of every tube.
class SpectralTensor {
public:
    SpectralTensor() = default;
    SpectralTensor(std::size_t m, std::size_t n, std::size_t p);

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return n_; }
    std::size_t tubes() const noexcept { return slices_.size(); }

    CMatrix& slice(std::size_t i) { return slices_[i]; }
    const CMatrix& slice(std::size_t i) const { return slices_[i]; }

    /// Sum of squared Frobenius norms over all slices, ||bdiag(A)||_F^2.
    double squared_norm() const;

    /// Overwrites the upper half of the spectrum with conjugates of the lower
    /// half: slice(p - i) = conj(slice(i)) for 1 <= i < (p+1)/2.
    void mirror_conjugates();

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<CMatrix> slices_;
};

/// Number of spectral slices that determine a real tensor's spectrum:
/// floor(p/2) + 1. Slices at or beyond this index are conjugate mirrors.
constexpr std::size_t independent_slices(std::size_t p) noexcept { return p / 2 + 1; }

}  // namespace tsketch
