#include "rmtcum/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rmtcum/partition.hpp"
#include "rmtcum/rng.hpp"

namespace rmtcum {

std::vector<double> real_samples(const TraceSampleSet& samples, double rel_tol) {
    double max_abs = 0.0, max_imag = 0.0;
    for (const Complex& z : samples.values) {
        max_abs = std::max(max_abs, std::abs(z));
        max_imag = std::max(max_imag, std::abs(z.imag()));
    }
    if (max_imag > rel_tol * std::max(max_abs, 1e-300))
        throw ConditionC3Error("trace samples are not real: max |imag| = " +
                               std::to_string(max_imag) +
                               "; cumulant analysis needs a self-adjoint polynomial");
    std::vector<double> out;
    out.reserve(samples.values.size());
    for (const Complex& z : samples.values) out.push_back(z.real());
    return out;
}

namespace {

std::vector<double> central_moments(const std::vector<double>& x, int up_to) {
    double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    std::vector<double> mu(up_to + 1, 0.0);
    mu[0] = 1.0;
    for (double v : x) {
        double d = v - mean, p = d;
        for (int j = 1; j <= up_to; ++j) {
            mu[j] += p;
            p *= d;
        }
    }
    for (int j = 1; j <= up_to; ++j) mu[j] /= n;
    return mu;
}

// Point estimates for orders 1..r_max: unbiased k-statistics through order
// 4, plug-in cumulants of the empirical distribution above that.
std::vector<double> cumulant_points(const std::vector<double>& x, int r_max) {
    double n = static_cast<double>(x.size());
    std::vector<double> mu = central_moments(x, std::max(r_max, 2));
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    std::vector<double> k(r_max + 1, 0.0);
    if (r_max >= 1) k[1] = mean;
    if (r_max >= 2) k[2] = n / (n - 1) * mu[2];
    if (r_max >= 3) k[3] = n * n / ((n - 1) * (n - 2)) * mu[3];
    if (r_max >= 4)
        k[4] = n * n * ((n + 1) * mu[4] - 3 * (n - 1) * mu[2] * mu[2]) /
               ((n - 1) * (n - 2) * (n - 3));
    if (r_max >= 5) {
        // Plug-in: cumulants of the empirical (centered) distribution.
        std::vector<Complex> raw(r_max);
        for (int j = 1; j <= r_max; ++j) raw[j - 1] = mu[j];
        MomentCumulantTable cum =
            cumulants_from_moments(MomentCumulantTable::real_table(std::move(raw)));
        for (int j = 5; j <= r_max; ++j) k[j] = cum.value(j, 0).real();
    }
    return k;
}

}  // namespace

std::vector<CumulantEstimate> estimate_cumulants(const std::vector<double>& samples, int r_max,
                                                 int bootstrap_resamples, std::uint64_t seed) {
    if (r_max < 1) throw ShapeError("estimate_cumulants: order must be >= 1");
    std::size_t needed = 10u * (std::size_t(1) << r_max);
    if (samples.size() < needed)
        throw SizeError("estimate_cumulants: need at least " + std::to_string(needed) +
                        " samples for orders up to " + std::to_string(r_max) + ", got " +
                        std::to_string(samples.size()));
    bootstrap_resamples = std::max(bootstrap_resamples, 200);
    std::vector<double> point = cumulant_points(samples, r_max);
    // Bootstrap standard errors.
    std::vector<std::vector<double>> boot(r_max + 1);
    std::vector<double> resample(samples.size());
    for (int b = 0; b < bootstrap_resamples; ++b) {
        std::mt19937_64 rng = substream_rng(seed, static_cast<std::uint64_t>(b));
        std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
        for (std::size_t i = 0; i < samples.size(); ++i) resample[i] = samples[pick(rng)];
        std::vector<double> kb = cumulant_points(resample, r_max);
        for (int j = 1; j <= r_max; ++j) boot[j].push_back(kb[j]);
    }
    std::vector<CumulantEstimate> out;
    for (int j = 1; j <= r_max; ++j) {
        double mean = 0.0;
        for (double v : boot[j]) mean += v;
        mean /= boot[j].size();
        double var = 0.0;
        for (double v : boot[j]) var += (v - mean) * (v - mean);
        var /= (boot[j].size() - 1);
        out.push_back({j, point[j], std::sqrt(var), j <= 4 ? "k-statistic" : "plug-in"});
    }
    return out;
}

std::vector<double> normalize_statistic(const std::vector<double>& samples) {
    if (samples.size() < 2) throw SizeError("normalize_statistic: need at least 2 samples");
    double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : samples) var += (v - mean) * (v - mean);
    var /= n;
    double scale2 = 0.0;
    for (double v : samples) scale2 = std::max(scale2, v * v);
    if (var <= 1e-24 * std::max(scale2, 1e-300))
        throw ConditionC2Error("normalize_statistic: degenerate variance; the variance "
                               "lower-bound assumption fails for this spec");
    double sd = std::sqrt(var);
    std::vector<double> out;
    out.reserve(samples.size());
    for (double v : samples) out.push_back((v - mean) / sd);
    return out;
}

ScalingFit fit_scaling_exponent(const std::vector<double>& n_values,
                                const std::vector<double>& abs_cumulants,
                                const std::vector<double>& std_errors,
                                int bootstrap_resamples, std::uint64_t seed) {
    if (n_values.size() != abs_cumulants.size())
        throw ShapeError("fit_scaling_exponent: length mismatch");
    if (n_values.size() < 3)
        throw SizeError("fit_scaling_exponent: need at least 3 distinct N values");
    ScalingFit fit;
    for (std::size_t i = 0; i < abs_cumulants.size(); ++i) {
        double se = std_errors.empty() ? 0.0 : std_errors[i];
        if (abs_cumulants[i] <= 0.0 || abs_cumulants[i] < 3.0 * se) return fit;  // inconclusive
    }
    auto ols = [&](const std::vector<double>& ys) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = static_cast<double>(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) {
            double lx = std::log(n_values[i]);
            sx += lx;
            sy += ys[i];
            sxx += lx * lx;
            sxy += lx * ys[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    std::vector<double> logk(abs_cumulants.size());
    for (std::size_t i = 0; i < logk.size(); ++i) logk[i] = std::log(abs_cumulants[i]);
    fit.slope = ols(logk);
    // Bootstrap band: perturb each point by its (relative) standard error
    // when available, otherwise resample the fit residuals.
    std::vector<double> slopes;
    slopes.reserve(bootstrap_resamples);
    std::vector<double> residuals;
    if (std_errors.empty()) {
        double sx = 0, sy = 0;
        for (std::size_t i = 0; i < logk.size(); ++i) {
            sx += std::log(n_values[i]);
            sy += logk[i];
        }
        double icept = sy / logk.size() - fit.slope * sx / logk.size();
        for (std::size_t i = 0; i < logk.size(); ++i)
            residuals.push_back(logk[i] - (icept + fit.slope * std::log(n_values[i])));
    }
    std::vector<double> ys(logk.size());
    for (int b = 0; b < bootstrap_resamples; ++b) {
        std::mt19937_64 rng = substream_rng(seed, 0x8007u + static_cast<std::uint64_t>(b));
        std::normal_distribution<double> g(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, logk.size() - 1);
        for (std::size_t i = 0; i < logk.size(); ++i) {
            if (!std_errors.empty())
                ys[i] = logk[i] + g(rng) * std_errors[i] / abs_cumulants[i];
            else
                ys[i] = logk[i] + residuals[pick(rng)];
        }
        slopes.push_back(ols(ys));
    }
    std::sort(slopes.begin(), slopes.end());
    fit.band_low = slopes[static_cast<std::size_t>(0.025 * slopes.size())];
    fit.band_high = slopes[static_cast<std::size_t>(0.975 * (slopes.size() - 1))];
    fit.conclusive = true;
    return fit;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(const std::vector<double>& samples) {
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    double n = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = normal_cdf(sorted[i]);
        ks = std::max(ks, std::max(f - i / n, (i + 1) / n - f));
    }
    return ks;
}

CltDiagnostics clt_diagnostics(const std::vector<double>& normalized, double alpha) {
    if (normalized.size() < 10000)
        throw SizeError("clt_diagnostics: need at least 10^4 samples, got " +
                        std::to_string(normalized.size()));
    CltDiagnostics d;
    d.alpha = alpha;
    d.ks = ks_statistic(normalized);
    double n = static_cast<double>(normalized.size());
    double m2 = 0, m3 = 0, m4 = 0, mean = 0;
    for (double v : normalized) mean += v;
    mean /= n;
    for (double v : normalized) {
        double x = v - mean;
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    d.skewness = m3 / std::pow(m2, 1.5);
    d.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    // Two-sided exceedance profile P(|X| >= x) ... the theory bounds are
    // stated for X >= x; we use the one-sided version.
    std::vector<double> sorted = normalized;
    std::sort(sorted.begin(), sorted.end());
    for (double x = 0.0; x <= 5.0 + 1e-9; x += 0.5) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
        double p = static_cast<double>(sorted.end() - it) / n;
        d.tail.push_back({x, p});
    }
    // Fit H and Delta-bar in exp(-x^2 / (2 (H + x^(2-alpha) / Dbar^alpha)))
    // by grid search on the log-exceedance of the positive-probability
    // points; alpha stays fixed.
    auto loss = [&](double h, double dbar) {
        double s = 0.0;
        for (const auto& [x, p] : d.tail) {
            if (x <= 0.0 || p <= 0.0) continue;
            double denom = 2.0 * (h + std::pow(x, 2.0 - alpha) / std::pow(dbar, alpha));
            double model_log = -x * x / denom;
            double diff = std::log(p) - model_log;
            s += diff * diff;
        }
        return s;
    };
    double best_h = 1.0, best_d = 1.0, best = loss(1.0, 1.0);
    for (double h = 0.25; h <= 8.0; h *= 1.090507733) {        // 2^(1/8) steps
        for (double dbar = 0.05; dbar <= 1000.0; dbar *= 1.090507733) {
            double v = loss(h, dbar);
            if (v < best) {
                best = v;
                best_h = h;
                best_d = dbar;
            }
        }
    }
    d.big_h = best_h;
    d.delta_bar = best_d;
    for (const auto& [x, p] : d.tail) {
        if (x <= 0.0) continue;
        double denom = 2.0 * (best_h + std::pow(x, 2.0 - alpha) / std::pow(best_d, alpha));
        if (p > 1.5 * std::exp(-x * x / denom)) ++d.tail_violations;
    }
    return d;
}

namespace {

template <class T>
void write_le(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_le(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void save_samples(const std::string& path, const TraceSampleSet& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("save_samples: cannot write " + path);
    out.write("RMTS", 4);
    write_le<std::int32_t>(out, samples.n);
    write_le<std::uint64_t>(out, samples.seed);
    write_le<std::uint64_t>(out, samples.values.size());
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(samples.spec_id.size()));
    out.write(samples.spec_id.data(), static_cast<std::streamsize>(samples.spec_id.size()));
    for (const Complex& z : samples.values) {
        write_le<double>(out, z.real());
        write_le<double>(out, z.imag());
    }
}

TraceSampleSet load_samples(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_samples: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::string(magic, 4) != "RMTS")
        throw ConfigError("load_samples: " + path + " is not a sample file");
    TraceSampleSet s;
    s.n = read_le<std::int32_t>(in);
    s.seed = read_le<std::uint64_t>(in);
    std::uint64_t count = read_le<std::uint64_t>(in);
    std::uint32_t idlen = read_le<std::uint32_t>(in);
    s.spec_id.resize(idlen);
    in.read(s.spec_id.data(), idlen);
    s.values.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        double re = read_le<double>(in);
        double im = read_le<double>(in);
        s.values.emplace_back(re, im);
    }
    if (!in) throw ConfigError("load_samples: truncated file " + path);
    return s;
}

}  // namespace rmtcum
