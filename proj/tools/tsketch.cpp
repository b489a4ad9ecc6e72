// Command-line front end: T-singular values, factorizations, single-pass
// sketching and recovery, synthetic generators and the sweep benchmark, all
// over T3B / TSK1 files.
//
// Exit codes: 0 success, 2 I/O or parse error, 3 invalid parameters,
// 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tsketch/bound.hpp"
#include "tsketch/error.hpp"
#include "tsketch/experiment.hpp"
#include "tsketch/metrics.hpp"
#include "tsketch/parallel.hpp"
#include "tsketch/sketch.hpp"
#include "tsketch/sketch_io.hpp"
#include "tsketch/spectrum.hpp"
#include "tsketch/tensor_io.hpp"
#include "tsketch/tsvd.hpp"

namespace {

using namespace tsketch;
using json = nlohmann::json;

constexpr int kExitIo = 2;
constexpr int kExitParams = 3;
constexpr int kExitNumeric = 4;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Io:
        case ErrorKind::Format: return kExitIo;
        case ErrorKind::InvalidParams:
        case ErrorKind::ShapeMismatch:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::ZeroReference: return kExitParams;
        case ErrorKind::SvdNoConvergence:
        case ErrorKind::ImaginaryResidual:
        case ErrorKind::Breakdown: return kExitNumeric;
    }
    return kExitNumeric;
}

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double tol = 1e-10;
};

void print_values(const std::vector<double>& values) {
    for (double v : values) std::cout << format_double(v) << '\n';
}

int cmd_singvals(const std::string& in, bool as_json, bool rank_only, bool tails, const Globals& g) {
    const Tensor3 a = load_t3b(in);
    const TSingularValues sigma = t_singular_values(a);
    const std::size_t rank = tubal_rank(sigma, a.rows(), a.cols(), g.tol);
    std::vector<double> tail_values;
    for (std::size_t j = 1; j <= sigma.size() + 1; ++j) tail_values.push_back(tail_energy(sigma, j));

    if (as_json) {
        json out;
        out["singular_values"] = sigma.values;
        out["tubal_rank"] = rank;
        out["tail_energies"] = tail_values;
        std::cout << out.dump(2) << '\n';
    } else if (rank_only) {
        std::cout << rank << '\n';
    } else if (tails) {
        print_values(tail_values);
    } else {
        print_values(sigma.values);
    }
    return 0;
}

int cmd_sketch(const std::string& in, std::size_t k, std::size_t l, bool orth, const std::string& out,
               const Globals& g) {
    if (k < 1 || k > l) {
        throw Error(ErrorKind::InvalidParams, "need 1 <= k <= l, got k = " + std::to_string(k) + ", l = " +
                                                  std::to_string(l));
    }
    const Tensor3 a = load_t3b(in);
    save_sketch(out, build_sketch(a, SketchParams{k, l, RngSeed{g.seed}, orth}));
    return 0;
}

int cmd_recover(const std::string& sketch, const std::string& method, const std::string& out,
                const std::string& reference) {
    const SketchState s = load_sketch(sketch);
    const Tensor3 ahat = method == "basic" ? recover_basic(s) : recover_stable(s);
    save_t3b(out, ahat);
    if (!reference.empty()) {
        const Tensor3 a = load_t3b(reference);
        std::cout << "relative_error " << format_double(relative_error(a, ahat)) << '\n';
        std::cout << "psnr_db " << format_double(psnr(a, ahat)) << '\n';
    }
    return 0;
}

int cmd_gen(const std::string& kind, std::size_t n, std::size_t p, std::size_t r, double decay,
            const std::string& out) {
    SpectrumSpec spec{kind == "poly" ? SpectrumKind::Poly : SpectrumKind::Exp, n, p, r, decay};
    save_t3b(out, generate(spec));
    return 0;
}

int cmd_bench(const std::string& spec_path, const std::string& out, std::optional<std::uint64_t> seed) {
    std::ifstream in(spec_path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + spec_path);
    ExperimentSpec spec = parse_experiment_spec(in);
    if (auto* file = std::get_if<std::filesystem::path>(&spec.source); file && file->is_relative()) {
        *file = std::filesystem::path(spec_path).parent_path() / *file;
    }
    if (seed) spec.seed = RngSeed{*seed};
    const auto rows = run_experiment(spec);
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw Error(ErrorKind::Io, "cannot open " + out + " for writing");
    write_csv(csv, rows);
    return 0;
}

int cmd_truncate(const std::string& in, std::size_t k, const std::string& out) {
    const Tensor3 a = load_t3b(in);
    const Tensor3 ak = truncate_tsvd(a, k);
    save_t3b(out, ak);
    std::cout << "relative_error " << format_double(relative_error(a, ak)) << '\n';
    return 0;
}

int cmd_tsvd(const std::string& in, const std::string& prefix) {
    const DecayTSVD f = decay_tsvd(load_t3b(in));
    save_t3b(prefix + "_u.t3b", f.u);
    save_t3b(prefix + "_s.t3b", f.s);
    save_t3b(prefix + "_v.t3b", f.v);
    return 0;
}

int cmd_bound(const std::string& in, std::size_t k, std::size_t l, bool as_json) {
    const BoundReport report = theoretical_bound(k, l, t_singular_values(load_t3b(in)));
    if (as_json) {
        json out;
        out["rho_star"] = report.rho_star;
        out["bound_product"] = report.bound_product;
        out["bound_ratio_form"] = report.bound_ratio_form;
        for (const auto& row : report.table) {
            out["table"].push_back({{"rho", row.rho}, {"tail", row.tail}, {"product", row.product},
                                    {"ratio_form", row.ratio_form}});
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "rho_star " << report.rho_star << '\n'
                  << "bound_product " << format_double(report.bound_product) << '\n'
                  << "bound_ratio_form " << format_double(report.bound_ratio_form) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"T-product tensor sketching toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed for every random draw");
    app.add_option("--threads", g.threads, "worker threads for facewise loops (0 = all cores)");
    app.add_option("--tol", g.tol, "relative threshold for tubal rank")->check(CLI::PositiveNumber);

    std::string in, out, sketch_path, method = "stable", reference, kind, spec_path, prefix;
    std::size_t k = 0, l = 0, n = 0, p = 0, r = 10;
    double decay = 1.0;
    bool as_json = false, rank_only = false, tails = false, orth = false;

    auto* singvals = app.add_subcommand("singvals", "T-singular values, tubal rank and tail energies");
    singvals->add_option("--in", in, "input T3B file")->required();
    singvals->add_flag("--json", as_json, "emit a JSON object");
    singvals->add_flag("--rank", rank_only, "print only the tubal rank");
    singvals->add_flag("--tails", tails, "print tail energies tau_1^2 .. tau_{min(m,n)+1}^2");

    auto* sketch = app.add_subcommand("sketch", "single-pass sketch of a tensor into a TSK1 file");
    sketch->add_option("--in", in, "input T3B file")->required();
    sketch->add_option("--k", k, "range sketch size")->required();
    sketch->add_option("--l", l, "co-range sketch size")->required();
    sketch->add_option("--out", out, "output TSK1 file")->required();
    sketch->add_flag("--orthonormalize", orth, "orthonormalize the test slices");

    auto* recover = app.add_subcommand("recover", "low-rank approximation from a TSK1 sketch");
    recover->add_option("--sketch", sketch_path, "input TSK1 file")->required();
    recover->add_option("--method", method, "basic or stable")->check(CLI::IsMember({"basic", "stable"}));
    recover->add_option("--out", out, "output T3B file")->required();
    recover->add_option("--reference", reference, "original tensor, read only to report the error");

    auto* gen = app.add_subcommand("gen", "synthetic decaying-spectrum tensor");
    gen->add_option("--kind", kind, "poly or exp")->required()->check(CLI::IsMember({"poly", "exp"}));
    gen->add_option("--n", n, "slice dimension")->required();
    gen->add_option("--p", p, "number of frontal slices")->required();
    gen->add_option("--r", r, "rank of the significant part");
    gen->add_option("--decay", decay, "decay exponent");
    gen->add_option("--out", out, "output T3B file")->required();

    auto* bench = app.add_subcommand("bench", "run a sweep experiment from a key=value spec file");
    bench->add_option("--spec", spec_path, "experiment spec file")->required();
    bench->add_option("--out", out, "output CSV")->required();

    auto* truncate = app.add_subcommand("truncate", "best tubal-rank-k approximation");
    truncate->add_option("--in", in, "input T3B file")->required();
    truncate->add_option("--k", k, "target tubal rank")->required();
    truncate->add_option("--out", out, "output T3B file")->required();

    auto* tsvd = app.add_subcommand("tsvd", "decay T-SVD; writes <prefix>_{u,s,v}.t3b");
    tsvd->add_option("--in", in, "input T3B file")->required();
    tsvd->add_option("--prefix", prefix, "output path prefix")->required();

    auto* bound = app.add_subcommand("bound", "expected-error bound of the single-pass sketch");
    bound->add_option("--in", in, "input T3B file")->required();
    bound->add_option("--k", k, "range sketch size")->required();
    bound->add_option("--l", l, "co-range sketch size")->required();
    bound->add_flag("--json", as_json, "emit a JSON object");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }

    try {
        set_num_threads(g.threads);
        if (*singvals) return cmd_singvals(in, as_json, rank_only, tails, g);
        if (*sketch) return cmd_sketch(in, k, l, orth, out, g);
        if (*recover) return cmd_recover(sketch_path, method, out, reference);
        if (*gen) return cmd_gen(kind, n, p, r, decay, out);
        if (*bench) {
            return cmd_bench(spec_path, out, seed_opt->count() > 0 ? std::optional<std::uint64_t>(g.seed) : std::nullopt);
        }
        if (*truncate) return cmd_truncate(in, k, out);
        if (*tsvd) return cmd_tsvd(in, prefix);
        if (*bound) return cmd_bound(in, k, l, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
