#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "tsketch/error.hpp"
#include "tsketch/experiment.hpp"
#include "tsketch/metrics.hpp"
#include "tsketch/spectrum.hpp"
#include "tsketch/tsvd.hpp"

namespace tsketch {
namespace {

SpectrumSpec spec_of(SpectrumKind kind, std::size_t n, std::size_t p, std::size_t r, double decay) {
    return SpectrumSpec{kind, n, p, r, decay};
}

void expect_slice_diagonal(const Tensor3& t, std::size_t slice, const std::vector<double>& diag) {
    ASSERT_EQ(t.rows(), diag.size());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.cols(); ++j) {
            const double expected = i == j ? diag[i] : 0.0;
            EXPECT_NEAR(t(i, j, slice), expected, 1e-15) << i << "," << j;
        }
    }
}

TEST(GeneratorTest, PolynomialDecay) {
    const Tensor3 a = gen_poly_decay(spec_of(SpectrumKind::Poly, 5, 3, 2, 1.0));
    expect_slice_diagonal(a, 2, {1, 1, 1.0 / 2, 1.0 / 3, 1.0 / 4});
    expect_slice_diagonal(a, 0, {1, 1.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 5});
    const Tensor3 fast = gen_poly_decay(spec_of(SpectrumKind::Poly, 5, 3, 2, 2.0));
    expect_slice_diagonal(fast, 2, {1, 1, 1.0 / 4, 1.0 / 9, 1.0 / 16});
}

TEST(GeneratorTest, ExponentialDecay) {
    const Tensor3 a = gen_exp_decay(spec_of(SpectrumKind::Exp, 4, 2, 1, 1.0));
    expect_slice_diagonal(a, 0, {1, 0.1, 0.01, 0.001});
    const Tensor3 slow = gen_exp_decay(spec_of(SpectrumKind::Exp, 4, 2, 1, 0.25));
    expect_slice_diagonal(slow, 0, {1, std::pow(10.0, -0.25), std::pow(10.0, -0.5), std::pow(10.0, -0.75)});
}

TEST(GeneratorTest, FullRankGivesIdentityOnceTheLeadingBlockIsFull) {
    // Slice j carries min(r, j) leading ones, so with r = n only slices
    // j >= n are identities; earlier slices still have a decaying tail.
    for (SpectrumKind kind : {SpectrumKind::Poly, SpectrumKind::Exp}) {
        const Tensor3 a = generate(spec_of(kind, 4, 6, 4, 1.0));
        for (std::size_t k = 3; k < 6; ++k) expect_slice_diagonal(a, k, {1, 1, 1, 1});
        EXPECT_LT(a(3, 3, 0), 1.0);
    }
}

TEST(GeneratorTest, RejectsBadSpecs) {
    EXPECT_THROW(gen_poly_decay(spec_of(SpectrumKind::Exp, 4, 2, 1, 1.0)), Error);
    EXPECT_THROW(gen_exp_decay(spec_of(SpectrumKind::Exp, 4, 2, 5, 1.0)), Error);
    EXPECT_THROW(gen_poly_decay(spec_of(SpectrumKind::Poly, 4, 2, 1, 0.0)), Error);
    EXPECT_THROW(gen_poly_decay(spec_of(SpectrumKind::Poly, 4, 2, 1, -1.0)), Error);
}

TEST(GeneratorTest, SingularValuesMatchClosedForm) {
    for (SpectrumKind kind : {SpectrumKind::Poly, SpectrumKind::Exp}) {
        const SpectrumSpec spec = spec_of(kind, 12, 5, 3, kind == SpectrumKind::Poly ? 1.0 : 0.25);
        const Tensor3 a = generate(spec);
        // Each spectral slice of the generator is a real diagonal matrix; its
        // singular values are the absolute diagonal entries, sorted.
        const auto slices = oracle::spectral_slices(a);
        std::vector<double> expected(12, 0.0);
        for (const auto& s : slices) {
            std::vector<double> d;
            for (Eigen::Index i = 0; i < 12; ++i) d.push_back(std::abs(s(i, i)));
            std::sort(d.rbegin(), d.rend());
            for (std::size_t i = 0; i < 12; ++i) expected[i] += d[i] * d[i] / 5.0;
        }
        const TSingularValues sigma = t_singular_values(a);
        for (std::size_t i = 0; i < 12; ++i) EXPECT_LE(oracle::rel_err(sigma[i] * sigma[i], expected[i]), 1e-10);
    }
}

TEST(GeneratorTest, SigmaSquaresSumToEntrySquares) {
    const SpectrumSpec spec = spec_of(SpectrumKind::Poly, 10, 4, 3, 2.0);
    double total = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 10; ++i) total += std::pow(spectrum_entry(spec, i, j), 2);
    double sigma_total = 0.0;
    for (double s : t_singular_values(generate(spec)).values) sigma_total += s * s;
    EXPECT_LE(oracle::rel_err(sigma_total, total), 1e-12);
}

TEST(MetricsTest, RelativeError) {
    const Tensor3 a = dense_gaussian_tensor(4, 3, 2, RngSeed{1});
    EXPECT_EQ(relative_error(a, a), 0.0);
    EXPECT_DOUBLE_EQ(relative_error(a, Tensor3(4, 3, 2)), 1.0);
    const Tensor3 a2 = truncate_tsvd(a, 2);
    EXPECT_LE(oracle::rel_err(relative_error(a, a2), tail_energy(a, 3) / squared_norm(a)), 1e-8);
    EXPECT_THROW(relative_error(Tensor3(4, 3, 2), a), Error);
    EXPECT_THROW(relative_error(a, Tensor3(4, 3, 3)), Error);
}

TEST(MetricsTest, Psnr) {
    const Tensor3 a = identity_tensor(2, 2);
    EXPECT_NEAR(psnr(a, Tensor3(2, 2, 2)), 10.0 * std::log10(4.0), 1e-12);
    EXPECT_TRUE(std::isinf(psnr(a, a)));

    Tensor3 b(2, 1, 2);
    b(0, 0, 0) = 1.0;
    Tensor3 b_hat = b;
    for (std::size_t i = 0; i < b.size(); ++i) b_hat.data()[i] += 1.0;
    EXPECT_NEAR(psnr(b, b_hat), 0.0, 1e-12);

    Tensor3 closer = b;
    for (std::size_t i = 0; i < b.size(); ++i) closer.data()[i] += 0.1;
    EXPECT_NEAR(psnr(b, closer) - psnr(b, b_hat), 20.0, 1e-10);
}

TEST(BaselineTest, ExactOnLowRankInput) {
    const Tensor3 a = oracle::low_rank_tensor(12, 10, 3, 3, 5);
    EXPECT_LE(oracle::rel_diff(two_pass_baseline(a, 3, RngSeed{2}), a), 1e-6);
    EXPECT_LE(tubal_rank(two_pass_baseline(dense_gaussian_tensor(8, 8, 3, RngSeed{1}), 3, RngSeed{2})), 3u);
}

TEST(BaselineTest, NeverBeatsTruncation) {
    const Tensor3 a = dense_gaussian_tensor(10, 9, 3, RngSeed{8});
    for (std::size_t k = 1; k <= 9; ++k) {
        EXPECT_GE(squared_norm(a - two_pass_baseline(a, k, RngSeed{k})), tail_energy(a, k + 1) - 1e-8);
    }
}

TEST(BaselineTest, FastExponentialDecay) {
    const Tensor3 a = gen_exp_decay(spec_of(SpectrumKind::Exp, 40, 4, 10, 1.0));
    EXPECT_LE(relative_error(a, two_pass_baseline(a, 15, RngSeed{3})), 1e-6);
}

TEST(ExperimentTest, TruncationRowsEqualTailRatios) {
    ExperimentSpec spec;
    spec.source = spec_of(SpectrumKind::Poly, 20, 4, 3, 1.0);
    spec.k_grid = {1, 3, 5, 10, 20};
    spec.methods = {Method::TruncSvd};
    const Tensor3 a = load_source(spec);
    const auto rows = run_experiment(spec, a);
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t k = spec.k_grid[i];
        EXPECT_EQ(rows[i].k, k);
        EXPECT_EQ(rows[i].l, 2 * k + 1);
        EXPECT_EQ(rows[i].status, "ok");
        const double expected = k < 20 ? tail_energy(a, k + 1) / squared_norm(a) : 0.0;
        EXPECT_NEAR(rows[i].relative_error, expected, 1e-8 * std::max(expected, 1e-8));
        if (i > 0) EXPECT_LE(rows[i].relative_error, rows[i - 1].relative_error);
    }
}

std::string csv_without_timing(const std::vector<MetricsRow>& rows) {
    std::vector<MetricsRow> copy = rows;
    for (auto& r : copy) r.wall_time_s = 0.0;
    std::ostringstream out;
    write_csv(out, copy);
    return out.str();
}

TEST(ExperimentTest, DeterministicAcrossRuns) {
    ExperimentSpec spec;
    spec.source = spec_of(SpectrumKind::Exp, 15, 3, 4, 0.25);
    spec.k_grid = {3, 6};
    spec.trials = 2;
    spec.methods = {Method::Alg2, Method::Alg3, Method::Baseline2Pass};
    spec.seed = RngSeed{42};
    spec.with_bound = true;
    const auto first = run_experiment(spec);
    const auto second = run_experiment(spec);
    EXPECT_EQ(csv_without_timing(first), csv_without_timing(second));
    for (const auto& r : first) {
        EXPECT_EQ(r.status, "ok");
        EXPECT_EQ(r.bound_product.has_value(), r.method != Method::Baseline2Pass);
        EXPECT_GE(r.relative_error, 0.0);
        EXPECT_TRUE(std::isfinite(r.psnr_db));
    }
}

TEST(ExperimentTest, TrialSeedsDependOnlyOnCell) {
    const RngSeed base{7};
    EXPECT_EQ(trial_seed(base, Method::Alg2, 5, 1), trial_seed(base, Method::Alg2, 5, 1));
    EXPECT_NE(trial_seed(base, Method::Alg2, 5, 1), trial_seed(base, Method::Alg3, 5, 1));
    EXPECT_NE(trial_seed(base, Method::Alg2, 5, 1), trial_seed(base, Method::Alg2, 6, 1));
    EXPECT_NE(trial_seed(base, Method::Alg2, 5, 1), trial_seed(base, Method::Alg2, 5, 2));
}

TEST(ExperimentTest, FailedCellsAreRecorded) {
    ExperimentSpec spec;
    spec.source = spec_of(SpectrumKind::Poly, 6, 2, 2, 1.0);
    spec.k_grid = {3, 7};
    spec.methods = {Method::Alg3};
    const auto rows = run_experiment(spec);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].status, "ok");
    EXPECT_EQ(rows[1].status, "error:InvalidParams");
    EXPECT_TRUE(std::isnan(rows[1].relative_error));

    std::ostringstream out;
    write_csv(out, rows);
    const std::string csv = out.str();
    EXPECT_EQ(csv.substr(0, kCsvHeader.size()), kCsvHeader);
    EXPECT_NE(csv.find("alg3,7,15,0,,,"), std::string::npos);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(ExperimentTest, RejectsInvalidSpecs) {
    ExperimentSpec spec;
    spec.methods = {Method::Alg2};
    EXPECT_THROW(validate(spec), Error);
    spec.k_grid = {1};
    spec.with_bound = true;
    EXPECT_THROW(validate(spec), Error);
    spec.with_bound = false;
    EXPECT_NO_THROW(validate(spec));
    spec.l_rule = LRule{1, 0};
    spec.k_grid = {3};
    spec.with_bound = true;
    EXPECT_THROW(validate(spec), Error);
}

TEST(CsvTest, FormatDoubleRoundTrips) {
    for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e-17}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(std::nan("")), "");
    EXPECT_EQ(format_double(INFINITY), "inf");
}

TEST(SpecParserTest, ParsesAllKeys) {
    std::istringstream in(
        "# sweep\n"
        "source = exp\n"
        "n = 30\np = 4\nr = 5\ndecay = 0.25\n"
        "k = 10:30:10   # inclusive\n"
        "l_rule = 3k+2\n"
        "trials = 7\n"
        "methods = alg3, truncsvd\n"
        "seed = 99\n"
        "bound = true\n");
    const ExperimentSpec spec = parse_experiment_spec(in);
    const auto& s = std::get<SpectrumSpec>(spec.source);
    EXPECT_EQ(s.kind, SpectrumKind::Exp);
    EXPECT_EQ(s.n, 30u);
    EXPECT_EQ(s.p_slices, 4u);
    EXPECT_EQ(s.r, 5u);
    EXPECT_EQ(s.decay, 0.25);
    EXPECT_EQ(spec.k_grid, (std::vector<std::size_t>{10, 20, 30}));
    EXPECT_EQ(spec.l_rule(10), 32u);
    EXPECT_EQ(spec.trials, 7u);
    EXPECT_EQ(spec.methods, (std::vector<Method>{Method::Alg3, Method::TruncSvd}));
    EXPECT_EQ(spec.seed, RngSeed{99});
    EXPECT_TRUE(spec.with_bound);
}

TEST(SpecParserTest, DefaultsAndFileSource) {
    std::istringstream in("source=file\nfile=data/a.t3b\nk=2,4\n");
    const ExperimentSpec spec = parse_experiment_spec(in);
    EXPECT_EQ(std::get<std::filesystem::path>(spec.source), std::filesystem::path("data/a.t3b"));
    EXPECT_EQ(spec.k_grid, (std::vector<std::size_t>{2, 4}));
    EXPECT_EQ(spec.l_rule(4), 9u);
    EXPECT_EQ(spec.methods, (std::vector<Method>{Method::Alg2, Method::Alg3}));
    EXPECT_EQ(spec.trials, 1u);
}

TEST(SpecParserTest, RejectsMalformedInput) {
    auto kind = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_experiment_spec(in);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    EXPECT_EQ(kind("k=3\nbogus=1\n"), ErrorKind::Format);
    EXPECT_EQ(kind("k=3\nk=4\n"), ErrorKind::Format);
    EXPECT_EQ(kind("k 3\n"), ErrorKind::Format);
    EXPECT_EQ(kind("n=5\n"), ErrorKind::Format);
    EXPECT_EQ(kind("k=3\nmethods=alg9\n"), ErrorKind::Format);
    EXPECT_EQ(kind("k=x\n"), ErrorKind::Format);
    EXPECT_EQ(kind("k=0\n"), ErrorKind::InvalidParams);
    EXPECT_EQ(kind("k=1\nbound=true\n"), ErrorKind::InvalidParams);
}

}  // namespace
}  // namespace tsketch
