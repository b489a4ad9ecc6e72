#pragma once

#include <filesystem>
#include <iosfwd>

#include "tsketch/sketch.hpp"

namespace tsketch {

/// TSK1 container: "TSK1", then k, l, seed as little-endian u64, then the
/// T3B blocks of b, c, y and w in that order.
void write_sketch(std::ostream& out, const SketchState& s);
SketchState read_sketch(std::istream& in);

void save_sketch(const std::filesystem::path& path, const SketchState& s);
SketchState load_sketch(const std::filesystem::path& path);

}  // namespace tsketch
