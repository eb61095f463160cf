#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rmtcum/deterministic.hpp"
#include "rmtcum/expansion.hpp"
#include "rmtcum/polynomial.hpp"
#include "rmtcum/sampler.hpp"

namespace rmtcum {

/// One token of a word as written in a config: a random symbol with an
/// optional transpose mark, or a reference to a bound deterministic symbol.
struct RawToken {
    bool is_x = true;
    int x_index = 1;        // when is_x
    Mark mark = Mark::plain;
    std::string d_symbol;   // when !is_x
    bool operator==(const RawToken&) const = default;
};

struct RawWord {
    std::vector<RawToken> tokens;
    Complex coefficient{1.0, 0.0};
    bool operator==(const RawWord&) const = default;
};

struct ExperimentConfig {
    std::string mode;  // exact | mc | verify-lemmas | scaling | clt
    EnsembleTag model = EnsembleTag::gue;
    EntryDistribution dist;  // wigner only
    std::vector<RawWord> words;
    std::map<std::string, std::string> det_bindings;  // symbol -> builder name
    std::vector<int> n_list{4};
    std::vector<int> r_list{2};
    long samples = 20000;
    std::uint64_t seed = 1;
    // budgets
    int max_m = 6;
    std::size_t tensor_budget = std::size_t(1) << 26;
    int oracle_max_n = 6;
    bool audit = false;
    bool c1_prime = false;  // entrywise-absolute norm condition, for the clt alpha
    // verify-lemmas ranges
    int verify_max_m = 8;
    int verify_max_r = 4;
    // outputs
    std::string out_report = "report.json";
    std::string out_rows = "rows.csv";
    std::string out_plot_prefix = "plot";
    // execution
    bool single_thread = false;
    int threads = 0;  // 0 = library default / environment variable

    bool operator==(const ExperimentConfig&) const;
};

/// Parses and validates a JSON experiment config; errors carry the JSON
/// path of the offending field.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

/// Builds the deterministic set for one dimension from the bindings.
DeterministicSet build_detset(const ExperimentConfig& cfg, int n);

/// Rewrites raw words into normal form: rotates each word so a random
/// letter leads, folds consecutive deterministic factors into composite
/// products (registered in detset under derived names).
PolynomialSpec normalize_words(const std::vector<RawWord>& words, DeterministicSet& detset);

/// Entry model implied by the config (model tag plus entry distribution).
EntryCumulantModel config_entry_model(const ExperimentConfig& cfg, int max_order = 12);

}  // namespace rmtcum
