#include "tsketch/tensor.hpp"

#include <cmath>
#include <string>

#include "tsketch/error.hpp"

namespace tsketch {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::ImaginaryResidual: return "ImaginaryResidual";
        case ErrorKind::SvdNoConvergence: return "SvdNoConvergence";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::ZeroReference: return "ZeroReference";
        case ErrorKind::Breakdown: return "Breakdown";
        case ErrorKind::Format: return "Format";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

namespace {

void check_extents(std::size_t m, std::size_t n, std::size_t p) {
    if (m == 0 || n == 0 || p == 0) {
        throw Error(ErrorKind::ShapeMismatch, "tensor extents must be positive, got " + std::to_string(m) +
                                                  "x" + std::to_string(n) + "x" + std::to_string(p));
    }
}

}  // namespace

Tensor3::Tensor3(std::size_t m, std::size_t n, std::size_t p) : m_(m), n_(n), p_(p) {
    check_extents(m, n, p);
    data_.assign(m * n * p, 0.0);
}

Tensor3::Tensor3(std::size_t m, std::size_t n, std::size_t p, std::vector<double> data)
    : m_(m), n_(n), p_(p), data_(std::move(data)) {
    check_extents(m, n, p);
    if (data_.size() != m * n * p) {
        throw Error(ErrorKind::ShapeMismatch, "data length " + std::to_string(data_.size()) +
                                                  " does not equal m*n*p = " + std::to_string(m * n * p));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidParams, "tensor entries must be finite");
    }
}

MatrixMap Tensor3::slice(std::size_t k) {
    return MatrixMap(data_.data() + k * m_ * n_, static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_));
}

ConstMatrixMap Tensor3::slice(std::size_t k) const {
    return ConstMatrixMap(data_.data() + k * m_ * n_, static_cast<Eigen::Index>(m_),
                          static_cast<Eigen::Index>(n_));
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    if (!same_shape(other)) throw Error(ErrorKind::ShapeMismatch, "tensor addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
    if (!same_shape(other)) throw Error(ErrorKind::ShapeMismatch, "tensor subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

SpectralTensor::SpectralTensor(std::size_t m, std::size_t n, std::size_t p)
    : m_(m), n_(n), slices_(p, CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n))) {
    check_extents(m, n, p);
}

double SpectralTensor::squared_norm() const {
    double total = 0.0;
    for (const auto& s : slices_) total += s.squaredNorm();
    return total;
}

void SpectralTensor::mirror_conjugates() {
    const std::size_t p = slices_.size();
    for (std::size_t i = 1; i < p - i; ++i) slices_[p - i] = slices_[i].conjugate();
}

}  // namespace tsketch
