#include "tsketch/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "tsketch/bound.hpp"
#include "tsketch/error.hpp"
#include "tsketch/fft.hpp"
#include "tsketch/metrics.hpp"
#include "tsketch/sketch.hpp"
#include "tsketch/tensor_io.hpp"
#include "tsketch/tensor_ops.hpp"
#include "tsketch/tsvd.hpp"
#include "tsketch/linalg.hpp"

namespace tsketch {

Tensor3 two_pass_baseline(const Tensor3& a, std::size_t k, RngSeed seed) {
    const std::size_t m = a.rows(), n = a.cols(), p = a.tubes();
    if (k < 1 || k > std::min(m, n)) {
        throw Error(ErrorKind::InvalidParams, "baseline rank " + std::to_string(k) + " outside [1, min(m, n)]");
    }
    const SpectralTensor abar = dft_mode3(a);
    const SpectralTensor bbar = dft_mode3(gaussian_random_tensor(n, k, p, seed));
    SpectralTensor ahat(m, n, p);
    for_each_independent_slice(p, [&](std::size_t i) {
        const CMatrix q = householder_qr(abar.slice(i) * bbar.slice(i)).q;
        const CMatrix coeffs = q.adjoint() * abar.slice(i);
        ahat.slice(i).noalias() = q * coeffs;
    });
    ahat.mirror_conjugates();
    return idft_mode3(ahat);
}

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::Alg2: return "alg2";
        case Method::Alg3: return "alg3";
        case Method::Baseline2Pass: return "baseline2pass";
        case Method::TruncSvd: return "truncsvd";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (Method m : {Method::Alg2, Method::Alg3, Method::Baseline2Pass, Method::TruncSvd}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

RngSeed trial_seed(RngSeed base, Method method, std::size_t k, std::size_t trial) noexcept {
    std::uint64_t h = mix_seed(base.value);
    h = mix_seed(h ^ static_cast<std::uint64_t>(method));
    h = mix_seed(h ^ static_cast<std::uint64_t>(k));
    h = mix_seed(h ^ static_cast<std::uint64_t>(trial));
    return {h};
}

void validate(const ExperimentSpec& spec) {
    if (spec.k_grid.empty()) throw Error(ErrorKind::InvalidParams, "empty k grid");
    if (spec.methods.empty()) throw Error(ErrorKind::InvalidParams, "no methods selected");
    if (spec.trials == 0) throw Error(ErrorKind::InvalidParams, "trials must be positive");
    for (std::size_t k : spec.k_grid) {
        if (k == 0) throw Error(ErrorKind::InvalidParams, "k must be positive");
        const std::size_t l = spec.l_rule(k);
        if (l < k) throw Error(ErrorKind::InvalidParams, "l rule gives l < k at k = " + std::to_string(k));
        if (spec.with_bound && (k < 2 || l <= k + 1)) {
            throw Error(ErrorKind::InvalidParams,
                        "bound column needs k >= 2 and l > k + 1, violated at k = " + std::to_string(k));
        }
    }
}

Tensor3 load_source(const ExperimentSpec& spec) {
    if (const auto* s = std::get_if<SpectrumSpec>(&spec.source)) return generate(*s);
    return load_t3b(std::get<std::filesystem::path>(spec.source));
}

namespace {

bool is_single_pass(Method m) { return m == Method::Alg2 || m == Method::Alg3; }

Tensor3 approximate(const Tensor3& a, Method method, std::size_t k, std::size_t l, RngSeed seed) {
    switch (method) {
        case Method::Alg2: return recover_basic(build_sketch(a, SketchParams{k, l, seed}));
        case Method::Alg3: return recover_stable(build_sketch(a, SketchParams{k, l, seed}));
        case Method::Baseline2Pass: return two_pass_baseline(a, k, seed);
        case Method::TruncSvd: return truncate_tsvd(a, k);
    }
    throw Error(ErrorKind::InvalidParams, "unknown method");
}

}  // namespace

std::vector<MetricsRow> run_experiment(const ExperimentSpec& spec) { return run_experiment(spec, load_source(spec)); }

std::vector<MetricsRow> run_experiment(const ExperimentSpec& spec, const Tensor3& a) {
    validate(spec);
    std::optional<TSingularValues> sigma;
    if (spec.with_bound) sigma = t_singular_values(a);

    // Rows are reported method by method, but executed with the methods
    // interleaved per trial so that slow spells on the host are shared
    // between them instead of landing on one method's block.
    const std::size_t per_method = spec.k_grid.size() * spec.trials;
    std::vector<MetricsRow> rows(spec.methods.size() * per_method);
    for (std::size_t ki = 0; ki < spec.k_grid.size(); ++ki) {
        const std::size_t k = spec.k_grid[ki];
        const std::size_t l = spec.l_rule(k);
        std::optional<double> bound;
        if (sigma) bound = theoretical_bound(k, l, *sigma).bound_product;
        for (std::size_t t = 0; t < spec.trials; ++t) {
            for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
                const Method method = spec.methods[mi];
                MetricsRow& row = rows[mi * per_method + ki * spec.trials + t];
                row.method = method;
                row.k = k;
                row.l = l;
                row.trial = t;
                if (is_single_pass(method)) row.bound_product = bound;
                try {
                    const auto start = std::chrono::steady_clock::now();
                    const Tensor3 ahat = approximate(a, method, k, l, trial_seed(spec.seed, method, k, t));
                    row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    row.relative_error = relative_error(a, ahat);
                    row.psnr_db = psnr(a, ahat);
                } catch (const Error& e) {
                    row.relative_error = std::nan("");
                    row.psnr_db = std::nan("");
                    row.status = "error:" + std::string(to_string(e.kind()));
                }
            }
        }
    }
    return rows;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << method_name(r.method) << ',' << r.k << ',' << r.l << ',' << r.trial << ','
            << format_double(r.relative_error) << ',' << format_double(r.psnr_db) << ','
            << format_double(r.wall_time_s) << ',' << (r.bound_product ? format_double(*r.bound_product) : "")
            << ',' << r.status << '\n';
    }
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw Error(ErrorKind::Format, "key '" + key + "': expected a nonnegative integer, got '" + value + "'");
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw Error(ErrorKind::Format, "key '" + key + "': expected a number, got '" + value + "'");
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

// "10,20,30" or "start:stop:step" (inclusive).
std::vector<std::size_t> parse_k_grid(const std::string& value) {
    std::vector<std::size_t> grid;
    if (value.find(':') != std::string::npos) {
        const auto parts = split(value, ':');
        if (parts.size() != 3) throw Error(ErrorKind::Format, "k range must be start:stop:step");
        const std::size_t start = parse_size("k", parts[0]);
        const std::size_t stop = parse_size("k", parts[1]);
        const std::size_t step = parse_size("k", parts[2]);
        if (step == 0) throw Error(ErrorKind::InvalidParams, "k step must be positive");
        for (std::size_t k = start; k <= stop; k += step) grid.push_back(k);
        return grid;
    }
    for (const auto& part : split(value, ',')) grid.push_back(parse_size("k", part));
    return grid;
}

LRule parse_l_rule(const std::string& value) {
    static const std::regex affine(R"(^(\d*)\s*k\s*(?:\+\s*(\d+))?$)");
    std::smatch match;
    if (std::regex_match(value, match, affine)) {
        LRule rule;
        rule.mult = match[1].length() > 0 ? parse_size("l_rule", match[1].str()) : 1;
        rule.add = match[2].matched ? parse_size("l_rule", match[2].str()) : 0;
        return rule;
    }
    return LRule{0, parse_size("l_rule", value)};
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw Error(ErrorKind::Format, "key '" + key + "': expected true/false, got '" + value + "'");
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Format, "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw Error(ErrorKind::Format, "line " + std::to_string(line_no) + ": empty key or value");
        }
        if (!kv.emplace(key, value).second) {
            throw Error(ErrorKind::Format, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }

    static const std::vector<std::string> known = {"source", "n",      "p",       "r",    "decay", "file",
                                                   "k",      "l_rule", "trials", "methods", "seed", "bound"};
    for (const auto& [key, value] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorKind::Format, "unknown key '" + key + "'");
        }
    }

    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    ExperimentSpec spec;
    const std::string source = get("source") ? *get("source") : "poly";
    if (source == "file") {
        if (!get("file")) throw Error(ErrorKind::Format, "source = file needs a 'file' key");
        spec.source = std::filesystem::path(*get("file"));
    } else if (source == "poly" || source == "exp") {
        SpectrumSpec s;
        s.kind = source == "poly" ? SpectrumKind::Poly : SpectrumKind::Exp;
        if (auto v = get("n")) s.n = parse_size("n", *v);
        if (auto v = get("p")) s.p_slices = parse_size("p", *v);
        if (auto v = get("r")) s.r = parse_size("r", *v);
        if (auto v = get("decay")) s.decay = parse_real("decay", *v);
        spec.source = s;
    } else {
        throw Error(ErrorKind::Format, "source must be poly, exp or file, got '" + source + "'");
    }

    if (!get("k")) throw Error(ErrorKind::Format, "missing 'k'");
    spec.k_grid = parse_k_grid(*get("k"));
    if (auto v = get("l_rule")) spec.l_rule = parse_l_rule(*v);
    if (auto v = get("trials")) spec.trials = parse_size("trials", *v);
    if (auto v = get("seed")) spec.seed = RngSeed{parse_size("seed", *v)};
    if (auto v = get("bound")) spec.with_bound = parse_bool("bound", *v);

    const std::string methods = get("methods") ? *get("methods") : "alg2,alg3";
    for (const auto& name : split(methods, ',')) {
        const auto m = parse_method(name);
        if (!m) throw Error(ErrorKind::Format, "unknown method '" + name + "'");
        spec.methods.push_back(*m);
    }
    validate(spec);
    return spec;
}

}  // namespace tsketch
