#include "tsketch/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "tsketch/error.hpp"

namespace tsketch {

namespace {

constexpr std::array<char, 4> kMagic = {'T', '3', 'B', '1'};

// Largest element count accepted from a header; guards against allocating
// from a corrupted or hostile size field.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 34;

}  // namespace

namespace detail {

void write_u64(std::ostream& out, std::uint64_t v) {
    std::array<unsigned char, 8> bytes{};
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(v >> (8 * b));
    out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

std::uint64_t read_u64(std::istream& in) {
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
        throw Error(ErrorKind::Format, "truncated header");
    }
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= std::uint64_t{bytes[b]} << (8 * b);
    return v;
}

}  // namespace detail

void write_t3b(std::ostream& out, const Tensor3& t) {
    out.write(kMagic.data(), kMagic.size());
    detail::write_u64(out, t.rows());
    detail::write_u64(out, t.cols());
    detail::write_u64(out, t.tubes());
    for (double v : t.data()) detail::write_u64(out, std::bit_cast<std::uint64_t>(v));
    if (!out) throw Error(ErrorKind::Io, "failed writing T3B payload");
}

Tensor3 read_t3b(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw Error(ErrorKind::Format, "bad T3B magic");
    }
    const std::uint64_t m = detail::read_u64(in);
    const std::uint64_t n = detail::read_u64(in);
    const std::uint64_t p = detail::read_u64(in);
    if (m == 0 || n == 0 || p == 0) throw Error(ErrorKind::Format, "T3B extents must be positive");
    if (m > kMaxElements / n || m * n > kMaxElements / p) throw Error(ErrorKind::Format, "T3B extents too large");

    const std::uint64_t count = m * n * p;
    std::vector<unsigned char> raw(count * 8);
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
        throw Error(ErrorKind::Format, "truncated T3B payload: expected " + std::to_string(count) + " values");
    }
    std::vector<double> data(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= std::uint64_t{raw[i * 8 + b]} << (8 * b);
        data[i] = std::bit_cast<double>(bits);
    }
    try {
        return Tensor3(m, n, p, std::move(data));
    } catch (const Error& e) {
        throw Error(ErrorKind::Format, e.what());
    }
}

void save_t3b(const std::filesystem::path& path, const Tensor3& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_t3b(out, t);
}

Tensor3 load_t3b(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_t3b(in);
}

}  // namespace tsketch
