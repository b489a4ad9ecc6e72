#include "tsketch/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsketch/error.hpp"

namespace tsketch {

namespace {

void check(const SpectrumSpec& spec, SpectrumKind expected) {
    if (spec.kind != expected) throw Error(ErrorKind::InvalidParams, "spectrum kind does not match generator");
    if (spec.n == 0 || spec.p_slices == 0) throw Error(ErrorKind::InvalidParams, "n and p must be positive");
    if (spec.r > spec.n) {
        throw Error(ErrorKind::InvalidParams,
                    "r = " + std::to_string(spec.r) + " exceeds n = " + std::to_string(spec.n));
    }
    if (!(spec.decay > 0.0) || !std::isfinite(spec.decay)) {
        throw Error(ErrorKind::InvalidParams, "decay must be a positive finite number");
    }
}

Tensor3 build(const SpectrumSpec& spec) {
    Tensor3 out(spec.n, spec.n, spec.p_slices);
    for (std::size_t j = 0; j < spec.p_slices; ++j) {
        for (std::size_t i = 0; i < spec.n; ++i) out(i, i, j) = spectrum_entry(spec, i, j);
    }
    return out;
}

}  // namespace

double spectrum_entry(const SpectrumSpec& spec, std::size_t i, std::size_t j) {
    const std::size_t lead = std::min(spec.r, j + 1);
    const std::size_t index = i + 1;
    if (index <= lead) return 1.0;
    const auto offset = static_cast<double>(index - lead);
    if (spec.kind == SpectrumKind::Poly) return std::pow(offset + 1.0, -spec.decay);
    return std::pow(10.0, -offset * spec.decay);
}

Tensor3 gen_poly_decay(const SpectrumSpec& spec) {
    check(spec, SpectrumKind::Poly);
    return build(spec);
}

Tensor3 gen_exp_decay(const SpectrumSpec& spec) {
    check(spec, SpectrumKind::Exp);
    return build(spec);
}

Tensor3 generate(const SpectrumSpec& spec) {
    return spec.kind == SpectrumKind::Poly ? gen_poly_decay(spec) : gen_exp_decay(spec);
}

}  // namespace tsketch
