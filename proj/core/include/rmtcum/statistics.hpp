#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmtcum/errors.hpp"
#include "rmtcum/moment_cumulant.hpp"

namespace rmtcum {

/// Trace samples of one polynomial at one dimension.
struct TraceSampleSet {
    int n = 0;  // matrix dimension
    std::string spec_id;
    std::uint64_t seed = 0;
    std::vector<Complex> values;
};

/// Drops imaginary parts after checking they are negligible; throws
/// ConditionC3Error otherwise (cumulant analysis needs self-adjoint specs).
std::vector<double> real_samples(const TraceSampleSet& samples, double rel_tol = 1e-8);

struct CumulantEstimate {
    int order = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::string kind;  // "k-statistic" or "plug-in"
};

/// Orders 1..4 via unbiased k-statistics, higher orders via plug-in Mobius
/// inversion of empirical moments; bootstrap standard errors (>= 200
/// resamples).  Needs at least 10 * 2^r_max samples.
std::vector<CumulantEstimate> estimate_cumulants(const std::vector<double>& samples, int r_max,
                                                 int bootstrap_resamples = 200,
                                                 std::uint64_t seed = 0x5eedull);

/// (x - mean) / sqrt(variance), with the 1/n variance convention so the
/// output has mean 0 and variance 1 exactly on its own data.  Throws
/// ConditionC2Error when the variance is degenerate.
std::vector<double> normalize_statistic(const std::vector<double>& samples);

struct ScalingFit {
    double slope = 0.0;
    double band_low = 0.0;   // bootstrap 2.5%
    double band_high = 0.0;  // bootstrap 97.5%
    bool conclusive = false;
};

/// Least-squares slope of log|K| against log N with a bootstrap confidence
/// band.  Estimates consistent with zero (|K| < 3 se) make the fit
/// inconclusive rather than an error.
ScalingFit fit_scaling_exponent(const std::vector<double>& n_values,
                                const std::vector<double>& abs_cumulants,
                                const std::vector<double>& std_errors = {},
                                int bootstrap_resamples = 400, std::uint64_t seed = 0x5eedull);

struct CltDiagnostics {
    double ks = 0.0;                 // Kolmogorov distance to standard normal
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::vector<std::pair<double, double>> tail;  // (x, P(X >= x)) on x = 0, 0.5, ..., 5
    double alpha = 0.0;       // held fixed during the fit
    double big_h = 0.0;       // fitted scale in exp(-x^2 / (2(H + x^(2-a)/Dbar^a)))
    double delta_bar = 0.0;   // fitted scale
    int tail_violations = 0;  // tail points above the fitted curve x 1.5
};

/// Kolmogorov distance, sample shape statistics, tail exceedance profile,
/// and a two-parameter concentration-curve fit with the exponent alpha held
/// fixed.  Needs >= 10^4 samples.
CltDiagnostics clt_diagnostics(const std::vector<double>& normalized, double alpha);

/// Standard normal distribution function (double precision via erfc).
double normal_cdf(double x);

/// Exact Kolmogorov-Smirnov statistic of a sample against the standard
/// normal distribution function.
double ks_statistic(const std::vector<double>& samples);

/// Binary persistence: little-endian header (dimension, seed, count, spec
/// id) followed by float64 re/im pairs.
void save_samples(const std::string& path, const TraceSampleSet& samples);
TraceSampleSet load_samples(const std::string& path);

}  // namespace rmtcum
