#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rmtcum/config.hpp"
#include "rmtcum/statistics.hpp"

namespace rmtcum {

/// Result of one exhaustive small-instance verification suite.
struct LemmaVerdict {
    std::string name;
    long checked = 0;
    long violations = 0;
};

struct LemmaOptions {
    /// Word-length ceiling for the pairing/partition suites.  The cycle
    /// suite runs to max_m + 2, the transpose-mark suite to max_m - 2.
    int max_m = 8;
    int max_r = 4;
    int random_trials = 200;
    std::uint64_t seed = 7;
};

/// Runs the exhaustive graph-bound and pairing-construction suites plus the
/// randomized merge/monotonicity property checks.
std::vector<LemmaVerdict> verify_lemmas(const LemmaOptions& opts, std::ostream* log = nullptr);

/// Exit codes: 0 success, 1 operational error, 2 a mathematical bound or
/// lemma check failed.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Number of worker threads: explicit config value, else the environment
/// variable RMTCUM_THREADS, else the hardware concurrency.
int effective_threads(const ExperimentConfig& cfg);

/// Draws the trace samples for one dimension (parallel over samples, but
/// bit-identical to the single-threaded order).
TraceSampleSet sample_traces(const ExperimentConfig& cfg, const PolynomialSpec& spec,
                             const DeterministicSet& detset, int n, long count);

}  // namespace rmtcum
