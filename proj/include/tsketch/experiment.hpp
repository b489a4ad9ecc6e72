#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tsketch/random.hpp"
#include "tsketch/spectrum.hpp"
#include "tsketch/tensor.hpp"

namespace tsketch {

/// Two-pass randomized approximation used as a comparison point: q from the
/// T-QR of a * b, then q * (q^T * a), which reads `a` a second time.
Tensor3 two_pass_baseline(const Tensor3& a, std::size_t k, RngSeed seed);

enum class Method { Alg2, Alg3, Baseline2Pass, TruncSvd };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// l = mult * k + add.
struct LRule {
    std::size_t mult = 2;
    std::size_t add = 1;

    std::size_t operator()(std::size_t k) const noexcept { return mult * k + add; }
};

struct ExperimentSpec {
    std::variant<SpectrumSpec, std::filesystem::path> source = SpectrumSpec{};
    std::vector<std::size_t> k_grid;
    LRule l_rule{};
    std::size_t trials = 1;
    std::vector<Method> methods;
    RngSeed seed{};
    bool with_bound = false;
};

struct MetricsRow {
    Method method = Method::Alg2;
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t trial = 0;
    double relative_error = 0.0;
    double psnr_db = 0.0;
    double wall_time_s = 0.0;
    std::optional<double> bound_product;
    std::string status = "ok";  // "ok" or "error:<kind>"
};

/// Seed for one cell of a sweep; depends only on the tuple, never on the order
/// cells are run in.
RngSeed trial_seed(RngSeed base, Method method, std::size_t k, std::size_t trial) noexcept;

/// Throws InvalidParams for an empty grid/method list, k = 0, or (when the bound
/// column is requested) any k < 2 or l <= k + 1.
void validate(const ExperimentSpec& spec);

/// Materializes the input tensor described by spec.source.
Tensor3 load_source(const ExperimentSpec& spec);

/// Runs every method x k x trial cell. Failures inside a cell are recorded in
/// its status column rather than aborting the sweep.
std::vector<MetricsRow> run_experiment(const ExperimentSpec& spec);
std::vector<MetricsRow> run_experiment(const ExperimentSpec& spec, const Tensor3& a);

inline constexpr std::string_view kCsvHeader =
    "method,k,l,trial,relative_error,psnr_db,wall_time_s,bound_product,status";

/// CSV with LF endings; floats use the shortest round-trip representation.
void write_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

/// Shortest decimal form of v that parses back to the same double.
std::string format_double(double v);

/// Parses the key=value experiment file ('#' starts a comment). Recognized
/// keys: source (poly|exp|file), n, p, r, decay, file, k, l_rule, trials,
/// methods, seed, bound. Malformed input throws Format; bad values throw
/// InvalidParams.
ExperimentSpec parse_experiment_spec(std::istream& in);

}  // namespace tsketch
