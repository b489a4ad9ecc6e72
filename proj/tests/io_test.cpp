#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "tsketch/error.hpp"
#include "tsketch/random.hpp"
#include "tsketch/tensor_io.hpp"

namespace tsketch {
namespace {

ErrorKind read_kind(const std::string& bytes) {
    std::istringstream in(bytes);
    try {
        read_t3b(in);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

std::string encode(const Tensor3& t) {
    std::ostringstream out;
    write_t3b(out, t);
    return out.str();
}

TEST(T3bTest, RoundTripIsBitExact) {
    const Tensor3 t = dense_gaussian_tensor(3, 4, 5, RngSeed{1});
    std::istringstream in(encode(t));
    EXPECT_EQ(read_t3b(in), t);
}

TEST(T3bTest, ByteLayout) {
    Tensor3 t(1, 2, 1);
    t(0, 0, 0) = 1.0;
    t(0, 1, 0) = -2.0;
    const std::string bytes = encode(t);
    ASSERT_EQ(bytes.size(), 4u + 24u + 16u);
    EXPECT_EQ(bytes.substr(0, 4), "T3B1");
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[12], 2);
    EXPECT_EQ(bytes[20], 1);
    // 1.0 = 0x3FF0000000000000 and -2.0 = 0xC000000000000000, little-endian.
    EXPECT_EQ(static_cast<unsigned char>(bytes[35]), 0x3Fu);
    EXPECT_EQ(static_cast<unsigned char>(bytes[34]), 0xF0u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[43]), 0xC0u);
}

TEST(T3bTest, RejectsBadMagic) {
    std::string bytes = encode(Tensor3(2, 2, 2));
    bytes[0] = 'X';
    EXPECT_EQ(read_kind(bytes), ErrorKind::Format);
}

TEST(T3bTest, RejectsTruncation) {
    const std::string bytes = encode(Tensor3(2, 2, 2));
    for (std::size_t cut : {0u, 3u, 10u, 27u, 40u}) {
        EXPECT_EQ(read_kind(bytes.substr(0, bytes.size() - 1 - cut)), ErrorKind::Format) << cut;
    }
}

TEST(T3bTest, RejectsZeroAndHugeExtents) {
    std::string bytes = encode(Tensor3(1, 1, 1));
    std::string zero = bytes;
    zero[4] = 0;
    EXPECT_EQ(read_kind(zero), ErrorKind::Format);
    std::string huge = bytes;
    huge[11] = 0x7F;
    EXPECT_EQ(read_kind(huge), ErrorKind::Format);
}

TEST(T3bTest, RejectsNonFiniteValues) {
    std::string bytes = encode(Tensor3(1, 1, 1));
    bytes[34] = static_cast<char>(0xF0);
    bytes[35] = 0x7F;
    EXPECT_EQ(read_kind(bytes), ErrorKind::Format);
}

TEST(T3bTest, FileRoundTripAndMissingFile) {
    const auto path = std::filesystem::temp_directory_path() / "tsketch_io_test.t3b";
    const Tensor3 t = dense_gaussian_tensor(2, 3, 2, RngSeed{9});
    save_t3b(path, t);
    EXPECT_EQ(load_t3b(path), t);
    std::filesystem::remove(path);
    try {
        load_t3b(path);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

}  // namespace
}  // namespace tsketch
