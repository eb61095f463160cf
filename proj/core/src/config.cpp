#include "rmtcum/config.hpp"

#include <algorithm>

#include <json.hpp>

namespace rmtcum {

using nlohmann::json;

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    return mode == o.mode && model == o.model && dist.kind == o.dist.kind &&
           dist.scale == o.dist.scale && words == o.words && det_bindings == o.det_bindings &&
           n_list == o.n_list && r_list == o.r_list && samples == o.samples && seed == o.seed &&
           max_m == o.max_m && tensor_budget == o.tensor_budget &&
           oracle_max_n == o.oracle_max_n && audit == o.audit && c1_prime == o.c1_prime &&
           verify_max_m == o.verify_max_m && verify_max_r == o.verify_max_r &&
           out_report == o.out_report && out_rows == o.out_rows &&
           out_plot_prefix == o.out_plot_prefix && single_thread == o.single_thread &&
           threads == o.threads;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

EnsembleTag parse_model(const std::string& s) {
    if (s == "gue") return EnsembleTag::gue;
    if (s == "goe") return EnsembleTag::goe;
    if (s == "wigner") return EnsembleTag::wigner_custom;
    fail("/model", "unknown model \"" + s + "\" (expected gue, goe or wigner)");
}

std::string model_name(EnsembleTag t) {
    switch (t) {
        case EnsembleTag::gue: return "gue";
        case EnsembleTag::goe: return "goe";
        case EnsembleTag::wigner_custom: return "wigner";
    }
    return "?";
}

Complex parse_coefficient(const json& j, const std::string& path) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    fail(path, "coefficient must be a number or [re, im]");
}

RawWord parse_word(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object with a \"word\" array");
    RawWord w;
    if (j.contains("coefficient")) w.coefficient = parse_coefficient(j["coefficient"], path);
    if (!j.contains("word") || !j["word"].is_array() || j["word"].empty())
        fail(path + "/word", "expected a nonempty array of letters");
    int k = 0;
    for (const json& tok : j["word"]) {
        std::string tpath = path + "/word/" + std::to_string(k++);
        if (!tok.is_array() || tok.size() < 2 || !tok[0].is_string())
            fail(tpath, "expected [\"X\", i] , [\"X\", i, \"T\"] or [\"D\", name]");
        std::string kind = tok[0].get<std::string>();
        RawToken t;
        if (kind == "X") {
            t.is_x = true;
            if (!tok[1].is_number_integer() || tok[1].get<int>() < 1)
                fail(tpath, "random symbol index must be a positive integer");
            t.x_index = tok[1].get<int>();
            if (tok.size() == 3) {
                if (!(tok[2].is_string() && tok[2].get<std::string>() == "T"))
                    fail(tpath, "third element of an X letter must be \"T\"");
                t.mark = Mark::transpose;
            } else if (tok.size() > 3) {
                fail(tpath, "too many elements in an X letter");
            }
        } else if (kind == "D") {
            t.is_x = false;
            if (tok.size() != 2 || !tok[1].is_string())
                fail(tpath, "a D letter is [\"D\", name]");
            t.d_symbol = tok[1].get<std::string>();
        } else {
            fail(tpath, "letter kind must be \"X\" or \"D\"");
        }
        w.tokens.push_back(std::move(t));
    }
    return w;
}

json word_to_json(const RawWord& w) {
    json j;
    if (w.coefficient != Complex(1.0, 0.0))
        j["coefficient"] = {w.coefficient.real(), w.coefficient.imag()};
    json letters = json::array();
    for (const RawToken& t : w.tokens) {
        if (t.is_x) {
            if (t.mark == Mark::transpose)
                letters.push_back({"X", t.x_index, "T"});
            else
                letters.push_back({"X", t.x_index});
        } else {
            letters.push_back({"D", t.d_symbol});
        }
    }
    j["word"] = std::move(letters);
    return j;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    ExperimentConfig cfg;
    if (!j.contains("mode") || !j["mode"].is_string()) fail("/mode", "required string");
    cfg.mode = j["mode"].get<std::string>();
    static const std::vector<std::string> kModes{"exact", "mc", "verify-lemmas", "scaling",
                                                "clt"};
    if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end())
        fail("/mode", "unknown mode \"" + cfg.mode + "\"");
    if (j.contains("model")) {
        if (!j["model"].is_string()) fail("/model", "expected a string");
        cfg.model = parse_model(j["model"].get<std::string>());
    } else if (cfg.mode != "verify-lemmas") {
        fail("/model", "required field");
    }
    if (j.contains("entry_distribution")) {
        const json& d = j["entry_distribution"];
        if (!d.is_object() || !d.contains("name") || !d["name"].is_string())
            fail("/entry_distribution", "expected {\"name\": ..., \"scale\"?: ...}");
        double scale = d.value("scale", 1.0);
        cfg.dist = EntryDistribution::from_name(d["name"].get<std::string>(), scale);
    }
    if (j.contains("polynomial")) {
        if (!j["polynomial"].is_array() || j["polynomial"].empty())
            fail("/polynomial", "expected a nonempty array of words");
        int k = 0;
        for (const json& w : j["polynomial"])
            cfg.words.push_back(parse_word(w, "/polynomial/" + std::to_string(k++)));
    } else if (cfg.mode != "verify-lemmas") {
        fail("/polynomial", "required field");
    }
    if (j.contains("deterministic")) {
        if (!j["deterministic"].is_object()) fail("/deterministic", "expected an object");
        for (const auto& [name, builder] : j["deterministic"].items()) {
            if (!builder.is_string())
                fail("/deterministic/" + name, "builder must be a string");
            cfg.det_bindings[name] = builder.get<std::string>();
        }
    }
    // Every referenced deterministic symbol must be bound.
    for (std::size_t wi = 0; wi < cfg.words.size(); ++wi) {
        for (const RawToken& t : cfg.words[wi].tokens) {
            if (!t.is_x && !cfg.det_bindings.count(t.d_symbol))
                fail("/polynomial/" + std::to_string(wi),
                     "unbound deterministic symbol \"" + t.d_symbol + "\"");
        }
    }
    auto int_list = [&](const char* key, std::vector<int>& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_array() || j[key].empty())
            fail(std::string("/") + key, "expected a nonempty integer array");
        out.clear();
        for (const json& v : j[key]) {
            if (!v.is_number_integer() || v.get<int>() < 1)
                fail(std::string("/") + key, "entries must be positive integers");
            out.push_back(v.get<int>());
        }
    };
    int_list("N", cfg.n_list);
    int_list("r", cfg.r_list);
    if (j.contains("samples")) cfg.samples = j["samples"].get<long>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("budgets")) {
        const json& b = j["budgets"];
        if (!b.is_object()) fail("/budgets", "expected an object");
        cfg.max_m = b.value("max_m", cfg.max_m);
        cfg.tensor_budget = b.value("tensor_budget", cfg.tensor_budget);
        cfg.oracle_max_n = b.value("oracle_max_n", cfg.oracle_max_n);
    }
    cfg.audit = j.value("audit", cfg.audit);
    cfg.c1_prime = j.value("c1_prime", cfg.c1_prime);
    if (j.contains("verify")) {
        const json& v = j["verify"];
        cfg.verify_max_m = v.value("max_m", cfg.verify_max_m);
        cfg.verify_max_r = v.value("max_r", cfg.verify_max_r);
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        cfg.out_report = o.value("report", cfg.out_report);
        cfg.out_rows = o.value("rows", cfg.out_rows);
        cfg.out_plot_prefix = o.value("plot_prefix", cfg.out_plot_prefix);
    }
    cfg.single_thread = j.value("single_thread", cfg.single_thread);
    cfg.threads = j.value("threads", cfg.threads);
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["mode"] = cfg.mode;
    j["model"] = model_name(cfg.model);
    j["entry_distribution"] = {{"name", cfg.dist.name()}, {"scale", cfg.dist.scale}};
    json words = json::array();
    for (const RawWord& w : cfg.words) words.push_back(word_to_json(w));
    if (!words.empty()) j["polynomial"] = std::move(words);
    json det = json::object();
    for (const auto& [name, builder] : cfg.det_bindings) det[name] = builder;
    j["deterministic"] = std::move(det);
    j["N"] = cfg.n_list;
    j["r"] = cfg.r_list;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["budgets"] = {{"max_m", cfg.max_m},
                    {"tensor_budget", cfg.tensor_budget},
                    {"oracle_max_n", cfg.oracle_max_n}};
    j["audit"] = cfg.audit;
    j["c1_prime"] = cfg.c1_prime;
    j["verify"] = {{"max_m", cfg.verify_max_m}, {"max_r", cfg.verify_max_r}};
    j["output"] = {{"report", cfg.out_report},
                   {"rows", cfg.out_rows},
                   {"plot_prefix", cfg.out_plot_prefix}};
    j["single_thread"] = cfg.single_thread;
    j["threads"] = cfg.threads;
    return j.dump(2);
}

DeterministicSet build_detset(const ExperimentConfig& cfg, int n) {
    DeterministicSet set(n);
    for (const auto& [name, builder] : cfg.det_bindings)
        set.add(name, builtin_deterministic(builder, n));
    return set;
}

PolynomialSpec normalize_words(const std::vector<RawWord>& words, DeterministicSet& detset) {
    PolynomialSpec spec;
    for (const RawWord& w : words) {
        auto has_x = std::find_if(w.tokens.begin(), w.tokens.end(),
                                  [](const RawToken& t) { return t.is_x; });
        if (has_x == w.tokens.end())
            throw ConfigError("normalize_words: a word must contain at least one random symbol");
        // Rotate so the word starts with a random letter; traces are
        // invariant under cyclic rotation.
        std::vector<RawToken> rot(has_x, w.tokens.end());
        rot.insert(rot.end(), w.tokens.begin(), has_x);
        Monomial mono;
        mono.coefficient = w.coefficient;
        for (std::size_t i = 0; i < rot.size();) {
            // rot[i] is a random letter; collect the deterministic run after it.
            Slot slot;
            slot.x_index = rot[i].x_index;
            slot.mark = rot[i].mark;
            std::vector<std::string> run;
            for (++i; i < rot.size() && !rot[i].is_x; ++i) run.push_back(rot[i].d_symbol);
            if (run.size() == 1) {
                slot.d_name = run[0];
                detset.get(slot.d_name);  // validate binding
            } else if (run.size() > 1) {
                std::string composite = run[0];
                for (std::size_t k = 1; k < run.size(); ++k) composite += "*" + run[k];
                if (!detset.has(composite)) {
                    Matrix prod = detset.get(run[0]);
                    for (std::size_t k = 1; k < run.size(); ++k) prod = prod * detset.get(run[k]);
                    detset.add(composite, std::move(prod));
                }
                slot.d_name = composite;
            }
            mono.slots.push_back(std::move(slot));
        }
        spec.monomials.push_back(std::move(mono));
    }
    return spec;
}

EntryCumulantModel config_entry_model(const ExperimentConfig& cfg, int max_order) {
    return entry_model_for(cfg.model, cfg.dist, max_order);
}

}  // namespace rmtcum
