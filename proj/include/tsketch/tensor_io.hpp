#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "tsketch/tensor.hpp"

namespace tsketch {

/// T3B layout: "T3B1", then m, n, p as little-endian u64, then m*n*p
/// little-endian float64 values in storage order.
void write_t3b(std::ostream& out, const Tensor3& t);
Tensor3 read_t3b(std::istream& in);

void save_t3b(const std::filesystem::path& path, const Tensor3& t);
Tensor3 load_t3b(const std::filesystem::path& path);

namespace detail {
void write_u64(std::ostream& out, std::uint64_t v);
std::uint64_t read_u64(std::istream& in);
}  // namespace detail

}  // namespace tsketch
