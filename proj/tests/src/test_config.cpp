#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rmtcum/runner.hpp"

using namespace rmtcum;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMinimal = R"({
  "mode": "exact",
  "model": "gue",
  "polynomial": [{"word": [["X", 1], ["X", 1]]}],
  "N": [2, 3],
  "r": [1, 2]
})";

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    ExperimentConfig cfg = parse_config(kMinimal);
    CHECK(cfg.mode == "exact");
    CHECK(cfg.model == EnsembleTag::gue);
    CHECK(cfg.n_list == std::vector<int>{2, 3});
    CHECK(cfg.r_list == std::vector<int>{1, 2});
    CHECK(cfg.samples == 20000);
    CHECK(cfg.seed == 1);
    CHECK(cfg.words.size() == 1);
    CHECK(cfg.words[0].tokens.size() == 2);
    CHECK(cfg.words[0].tokens[0].is_x);
}

TEST_CASE("config round trip through serialization") {
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.det_bindings["d"] = "identity";
    cfg.words[0].tokens.push_back({false, 1, Mark::plain, "d"});
    cfg.words[0].coefficient = Complex(0.5, -1.0);
    cfg.samples = 1234;
    cfg.seed = 99;
    cfg.audit = true;
    cfg.out_plot_prefix = "pp";
    cfg.threads = 3;
    ExperimentConfig back = parse_config(serialize_config(cfg));
    CHECK(back == cfg);
}

TEST_CASE("config errors carry the JSON path") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config(text);
            FAIL(("expected ConfigError for " + needle));
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("{}", "/mode");
    expect_error(R"({"mode": "dance"})", "/mode");
    expect_error(R"({"mode": "exact"})", "/model");
    expect_error(R"({"mode": "exact", "model": "gue"})", "/polynomial");
    expect_error(R"({"mode": "exact", "model": "xue",
                     "polynomial": [{"word": [["X",1]]}]})",
                 "/model");
    expect_error(R"({"mode": "exact", "model": "gue",
                     "polynomial": [{"word": [["Q",1]]}]})",
                 "/polynomial/0/word/0");
    expect_error(R"({"mode": "exact", "model": "gue",
                     "polynomial": [{"word": [["X",1],["D","d"]]}]})",
                 "unbound deterministic symbol");
    expect_error(R"({"mode": "exact", "model": "gue",
                     "polynomial": [{"word": [["X",1]]}], "N": [0]})",
                 "/N");
    expect_error("not json at all", "not valid JSON");
    // verify-lemmas needs neither model nor polynomial
    ExperimentConfig vl = parse_config(R"({"mode": "verify-lemmas"})");
    CHECK(vl.mode == "verify-lemmas");
}

TEST_CASE("word normalization rotates and folds deterministic runs") {
    ExperimentConfig cfg = parse_config(R"({
      "mode": "exact", "model": "gue",
      "deterministic": {"a": "identity", "b": "upper-bidiagonal-ones"},
      "polynomial": [
        {"word": [["D","a"], ["X",1], ["D","b"]]},
        {"word": [["X",1], ["D","a"], ["D","b"], ["X",2,"T"]]}
      ]})");
    DeterministicSet det = build_detset(cfg, 4);
    PolynomialSpec spec = normalize_words(cfg.words, det);
    REQUIRE(spec.monomials.size() == 2);
    // first word rotates to X1 b a (the trailing run wraps around)
    REQUIRE(spec.monomials[0].slots.size() == 1);
    CHECK(spec.monomials[0].slots[0].x_index == 1);
    CHECK(spec.monomials[0].slots[0].d_name == "b*a");
    CHECK(det.has("b*a"));
    // second word folds the a,b run into a composite product
    REQUIRE(spec.monomials[1].slots.size() == 2);
    CHECK(spec.monomials[1].slots[0].d_name == "a*b");
    CHECK(spec.monomials[1].slots[1].mark == Mark::transpose);
    CHECK(spec.degree() == 2);

    RawWord no_x;
    no_x.tokens.push_back({false, 1, Mark::plain, "a"});
    CHECK_THROWS_AS(normalize_words({no_x}, det), ConfigError);
}

TEST_CASE("builtin deterministic matrices and operator norms") {
    Matrix id = builtin_deterministic("identity", 4);
    CHECK(operator_norm(id) == doctest::Approx(1.0).epsilon(1e-8));
    Matrix alt = builtin_deterministic("diag-alternating-signs", 4);
    CHECK(operator_norm(alt) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(alt(0, 0).real() == 1.0);
    CHECK(alt(1, 1).real() == -1.0);
    Matrix bi = builtin_deterministic("upper-bidiagonal-ones", 64);
    double nb = operator_norm(bi);
    CHECK(nb > 1.0);
    CHECK(nb <= 2.0 + 1e-9);
    Matrix shift(2, 2);
    shift.setZero();
    shift(0, 1) = Complex(2.0, 0.0);
    CHECK(operator_norm(shift) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_THROWS_AS(builtin_deterministic("no-such-builder", 4), ConfigError);
}

TEST_CASE("matrix csv files round trip, including the file: builder") {
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = Complex(i - j, 0.25 * i * j);
    std::string path = "test_matrix_roundtrip.csv";
    save_matrix_csv(path, m);
    Matrix back = load_matrix_csv(path, 3);
    CHECK((m - back).norm() < 1e-12);
    Matrix viafile = builtin_deterministic("file:" + path, 3);
    CHECK((m - viafile).norm() < 1e-12);
    CHECK_THROWS_AS(load_matrix_csv(path, 5), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("experiment runs write identical row files across repeats and threads") {
    ExperimentConfig cfg = parse_config(R"({
      "mode": "mc", "model": "gue",
      "polynomial": [{"word": [["X",1],["X",1]]}],
      "N": [4], "r": [1, 2], "samples": 4000, "seed": 5,
      "output": {"report": "t_rep.json", "rows": "t_rows_a.csv"}})");
    std::ostringstream log;
    cfg.single_thread = true;
    REQUIRE(run_experiment(cfg, log) == 0);
    std::string rows_single = slurp("t_rows_a.csv");

    cfg.single_thread = false;
    cfg.threads = 4;
    cfg.out_rows = "t_rows_b.csv";
    REQUIRE(run_experiment(cfg, log) == 0);
    CHECK(slurp("t_rows_b.csv") == rows_single);

    // repeat run is byte-identical
    cfg.out_rows = "t_rows_c.csv";
    REQUIRE(run_experiment(cfg, log) == 0);
    CHECK(slurp("t_rows_c.csv") == rows_single);

    CHECK(rows_single.find("N,r,mode,value_re,value_im,stderr,bound,verdict") == 0);
    for (const char* f : {"t_rep.json", "t_rows_a.csv", "t_rows_b.csv", "t_rows_c.csv"})
        std::remove(f);
}

TEST_CASE("exact experiment emits bound verdicts and a report") {
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.out_report = "t_exact_rep.json";
    cfg.out_rows = "t_exact_rows.csv";
    std::ostringstream log;
    REQUIRE(run_experiment(cfg, log) == 0);
    std::string rows = slurp("t_exact_rows.csv");
    CHECK(rows.find("pass") != std::string::npos);
    std::string rep = slurp("t_exact_rep.json");
    CHECK(rep.find("\"wall_time_s\"") != std::string::npos);
    CHECK(rep.find("\"version\"") != std::string::npos);
    CHECK(rep.find("\"rows\"") != std::string::npos);
    std::remove("t_exact_rep.json");
    std::remove("t_exact_rows.csv");
}

TEST_CASE("thread selection honors the config override") {
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.single_thread = true;
    CHECK(effective_threads(cfg) == 1);
    cfg.single_thread = false;
    cfg.threads = 3;
    CHECK(effective_threads(cfg) == 3);
    cfg.threads = 0;
    CHECK(effective_threads(cfg) >= 1);
}

TEST_CASE("lemma verification runs clean at reduced scale") {
    LemmaOptions opts;
    opts.max_m = 4;
    opts.max_r = 2;
    opts.random_trials = 25;
    auto verdicts = verify_lemmas(opts);
    CHECK(verdicts.size() == 7);
    for (const auto& v : verdicts) {
        CHECK(v.checked > 0);
        CHECK(v.violations == 0);
    }
}
