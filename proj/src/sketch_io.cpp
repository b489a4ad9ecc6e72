#include "tsketch/sketch_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "tsketch/error.hpp"
#include "tsketch/tensor_io.hpp"

namespace tsketch {

namespace {
constexpr std::array<char, 4> kMagic = {'T', 'S', 'K', '1'};
}

void write_sketch(std::ostream& out, const SketchState& s) {
    out.write(kMagic.data(), kMagic.size());
    detail::write_u64(out, s.params.k);
    detail::write_u64(out, s.params.l);
    detail::write_u64(out, s.params.seed.value);
    write_t3b(out, s.b);
    write_t3b(out, s.c);
    write_t3b(out, s.y);
    write_t3b(out, s.w);
    if (!out) throw Error(ErrorKind::Io, "failed writing sketch");
}

SketchState read_sketch(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw Error(ErrorKind::Format, "bad TSK1 magic");
    }
    SketchState s;
    s.params.k = detail::read_u64(in);
    s.params.l = detail::read_u64(in);
    s.params.seed = RngSeed{detail::read_u64(in)};
    s.b = read_t3b(in);
    s.c = read_t3b(in);
    s.y = read_t3b(in);
    s.w = read_t3b(in);
    try {
        validate(s);
    } catch (const Error& e) {
        throw Error(ErrorKind::Format, std::string("inconsistent sketch container: ") + e.what());
    }
    return s;
}

void save_sketch(const std::filesystem::path& path, const SketchState& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_sketch(out, s);
}

SketchState load_sketch(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_sketch(in);
}

}  // namespace tsketch
