#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "rmtcum/rng.hpp"
#include "rmtcum/sampler.hpp"
#include "rmtcum/statistics.hpp"

using namespace rmtcum;

namespace {

double inverse_normal_cdf(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("sampler determinism and substream independence") {
    Matrix a = sample_ensemble(5, EnsembleTag::gue, {}, 42, 7);
    Matrix b = sample_ensemble(5, EnsembleTag::gue, {}, 42, 7);
    CHECK((a - b).norm() == 0.0);
    Matrix c = sample_ensemble(5, EnsembleTag::gue, {}, 42, 8);
    CHECK((a - c).norm() > 0.0);
    Matrix d = sample_ensemble(5, EnsembleTag::gue, {}, 43, 7);
    CHECK((a - d).norm() > 0.0);
}

TEST_CASE("sampled matrices are self-adjoint with the right entry laws") {
    std::vector<std::pair<EnsembleTag, EntryDistribution>> cases{
        {EnsembleTag::gue, {}},
        {EnsembleTag::goe, {}},
        {EnsembleTag::wigner_custom, EntryDistribution::from_name("uniform")},
        {EnsembleTag::wigner_custom, EntryDistribution::from_name("rademacher")},
        {EnsembleTag::wigner_custom, EntryDistribution::from_name("symmetrized-exponential")},
        {EnsembleTag::wigner_custom, EntryDistribution::from_name("gaussian-real")},
    };
    int n = 6;
    for (const auto& [tag, dist] : cases) {
        double offdiag2 = 0.0, diag2 = 0.0, offmean = 0.0;
        int reps = 4000;
        for (int s = 0; s < reps; ++s) {
            Matrix x = sample_ensemble(n, tag, dist, 99, s);
            REQUIRE((x - x.adjoint()).norm() < 1e-12);
            offdiag2 += std::norm(x(0, 1));
            diag2 += std::norm(x(3, 3));
            offmean += x(0, 1).real();
        }
        EntryCumulantModel model = entry_model_for(tag, dist);
        double expect_off = model.offdiag_table().mode() == MomentCumulantTable::Mode::real
                                ? model.offdiag(2, 0).real()
                                : model.offdiag(2, 1).real();
        double expect_diag = model.diag(2).real();
        CHECK(offdiag2 / reps * n == doctest::Approx(expect_off).epsilon(0.15));
        CHECK(diag2 / reps * n == doctest::Approx(expect_diag).epsilon(0.15));
        CHECK(std::abs(offmean / reps) < 0.05);
    }
}

TEST_CASE("trace evaluation matches dense products, rotations and transposes") {
    int n = 5;
    DeterministicSet det(n);
    det.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
    Matrix x = sample_ensemble(n, EnsembleTag::gue, {}, 3, 0);
    Matrix y = sample_ensemble(n, EnsembleTag::gue, {}, 3, 1);
    std::vector<Matrix> symbols{x, y};
    const Matrix& b = det.get("b");

    PolynomialSpec one_letter{{{{Slot{1, Mark::plain, ""}}, {1.0, 0.0}}}};
    CHECK(std::abs(trace_poly(one_letter, symbols, det) - x.trace()) < 1e-12);

    PolynomialSpec xb{{{{Slot{1, Mark::plain, "b"}}, {1.0, 0.0}}}};
    CHECK(std::abs(trace_poly(xb, symbols, det) - (x * b).trace()) < 1e-12);

    PolynomialSpec xbyb{{{{Slot{1, Mark::plain, "b"}, Slot{2, Mark::plain, "b"}}, {1.0, 0.0}}}};
    Complex direct = (x * b * y * b).trace();
    CHECK(std::abs(trace_poly(xbyb, symbols, det) - direct) < 1e-10);
    // cyclic rotation leaves the trace unchanged
    PolynomialSpec rotated{{{{Slot{2, Mark::plain, "b"}, Slot{1, Mark::plain, "b"}}, {1.0, 0.0}}}};
    CHECK(std::abs(trace_poly(rotated, symbols, det) - direct) < 1e-10);

    PolynomialSpec with_t{{{{Slot{1, Mark::transpose, "b"}, Slot{2, Mark::plain, ""}},
                           {1.0, 0.0}}}};
    Complex direct_t = (x.transpose() * b * y).trace();
    CHECK(std::abs(trace_poly(with_t, symbols, det) - direct_t) < 1e-10);

    // linearity over monomials with coefficients
    PolynomialSpec combo;
    combo.monomials.push_back({{Slot{1, Mark::plain, ""}}, {2.0, 0.0}});
    combo.monomials.push_back({{Slot{2, Mark::plain, "b"}}, {0.0, 1.0}});
    Complex expect = 2.0 * x.trace() + Complex(0, 1) * (y * b).trace();
    CHECK(std::abs(trace_poly(combo, symbols, det) - expect) < 1e-10);
}

TEST_CASE("real_samples guards against non-self-adjoint statistics") {
    TraceSampleSet s;
    s.values = {Complex(1.0, 0.0), Complex(2.0, 1e-3)};
    CHECK_THROWS_AS(real_samples(s), ConditionC3Error);
    s.values = {Complex(1.0, 0.0), Complex(2.0, 1e-12)};
    std::vector<double> r = real_samples(s);
    CHECK(r == std::vector<double>{1.0, 2.0});
}

TEST_CASE("k-statistics recover the cumulants of a shifted gaussian") {
    std::mt19937_64 rng = substream_rng(7, 0);
    std::normal_distribution<double> g(3.0, 2.0);  // K1 = 3, K2 = 4, K3 = K4 = 0
    std::vector<double> xs(200000);
    for (double& v : xs) v = g(rng);
    auto est = estimate_cumulants(xs, 4, 200, 5);
    REQUIRE(est.size() == 4);
    CHECK(est[0].estimate == doctest::Approx(3.0).epsilon(0.01));
    CHECK(est[1].estimate == doctest::Approx(4.0).epsilon(0.05));
    CHECK(std::abs(est[2].estimate) < 5 * est[2].std_error + 0.05);
    CHECK(std::abs(est[3].estimate) < 5 * est[3].std_error + 0.3);
    CHECK(est[0].kind == "k-statistic");
    for (const auto& e : est) CHECK(e.std_error > 0.0);
}

TEST_CASE("low-order k-statistics match closed forms on a tiny sample") {
    std::vector<double> xs(50);
    for (int i = 0; i < 50; ++i) xs[i] = 0.25 * i * i - 3.0 * i + 1.0;
    auto est = estimate_cumulants(xs, 2, 200, 1);
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= xs.size();
    double s2 = 0.0;
    for (double v : xs) s2 += (v - mean) * (v - mean);
    s2 /= xs.size() - 1;  // unbiased sample variance
    CHECK(est[0].estimate == doctest::Approx(mean).epsilon(1e-12));
    CHECK(est[1].estimate == doctest::Approx(s2).epsilon(1e-12));
}

TEST_CASE("higher orders fall back to plug-in estimates and need samples") {
    std::vector<double> xs(10 * 32 + 1);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (double& v : xs) v = g(rng);
    auto est = estimate_cumulants(xs, 5, 200, 2);
    CHECK(est[4].kind == "plug-in");
    std::vector<double> tiny(xs.begin(), xs.begin() + 100);
    CHECK_THROWS_AS(estimate_cumulants(tiny, 5, 200, 2), SizeError);
}

TEST_CASE("normalization and its degenerate guard") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> z = normalize_statistic(xs);
    double mean = 0.0, var = 0.0;
    for (double v : z) mean += v;
    mean /= z.size();
    for (double v : z) var += (v - mean) * (v - mean);
    var /= z.size();
    CHECK(std::abs(mean) < 1e-12);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> flat(20, 2.5);
    CHECK_THROWS_AS(normalize_statistic(flat), ConditionC2Error);
}

TEST_CASE("Kolmogorov-Smirnov statistic against the exact quantile grid") {
    int n = 1000;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = inverse_normal_cdf((i + 0.5) / n);
    // at exact mid-quantiles the empirical distribution deviates by 1/(2n)
    CHECK(std::abs(ks_statistic(xs) - 0.5 / n) < 1e-10);
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021).epsilon(1e-6));
}

TEST_CASE("scaling fits find planted exponents and are scale invariant") {
    std::vector<double> ns{4, 8, 16, 32, 64};
    std::vector<double> ks, ks_scaled;
    for (double n : ns) {
        ks.push_back(2.7 * std::pow(n, -1.5));
        ks_scaled.push_back(1e6 * 2.7 * std::pow(n, -1.5));
    }
    ScalingFit f = fit_scaling_exponent(ns, ks);
    CHECK(f.conclusive);
    CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-9));
    ScalingFit g = fit_scaling_exponent(ns, ks_scaled);
    CHECK(g.slope == doctest::Approx(f.slope).epsilon(1e-9));
    // noisy estimates consistent with zero are flagged inconclusive
    std::vector<double> zeros{1e-14, 2e-14, 1.5e-14, 0.8e-14, 1.2e-14};
    std::vector<double> ses(5, 1.0);
    ScalingFit h = fit_scaling_exponent(ns, zeros, ses);
    CHECK_FALSE(h.conclusive);
}

TEST_CASE("clt diagnostics on genuine normal data") {
    std::mt19937_64 rng = substream_rng(11, 3);
    std::normal_distribution<double> g;
    std::vector<double> xs(20000);
    for (double& v : xs) v = g(rng);
    CltDiagnostics d = clt_diagnostics(normalize_statistic(xs), 0.5);
    CHECK(d.ks < 0.02);
    CHECK(std::abs(d.skewness) < 0.05);
    CHECK(std::abs(d.excess_kurtosis) < 0.1);
    CHECK(d.alpha == 0.5);
    REQUIRE(d.tail.size() == 11);
    CHECK(d.tail.front().first == 0.0);
    CHECK(d.tail.front().second == doctest::Approx(0.5).epsilon(0.05));
    CHECK(d.tail_violations == 0);
    std::vector<double> few(100, 0.0);
    CHECK_THROWS_AS(clt_diagnostics(few, 0.5), SizeError);
}

TEST_CASE("sample persistence round trip") {
    TraceSampleSet s;
    s.n = 12;
    s.seed = 77;
    s.spec_id = "roundtrip";
    s.values = {Complex(1.5, -0.25), Complex(-3.0, 0.0), Complex(0.0, 2.0)};
    std::string path = "test_samples_roundtrip.bin";
    save_samples(path, s);
    TraceSampleSet t = load_samples(path);
    CHECK(t.n == s.n);
    CHECK(t.seed == s.seed);
    CHECK(t.spec_id == s.spec_id);
    CHECK(t.values == s.values);
    std::remove(path.c_str());
}
