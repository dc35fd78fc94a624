#pragma once

/**
 * @file suite.hpp
 * @brief Config-driven check suite: parse a JSON config, run the
 * requested verifiers deterministically, assemble a JSON report.
 *
 * Config schema:
 * {
 *   "dimension": 1,
 *   "samples": 200,            // optional; env default may apply
 *   "seed": 42,                // optional, default 0
 *   "tolerance": 1e-6,         // optional, default 1e-9
 *   "maps": { "f": {"expr": "exp(x0)", "in": 1, "out": 1}, ... },
 *   "christoffel": ["0", ...], // optional, n^3 expression strings
 *   "jubin": [["1","2"], [0, -1], ...],   // optional (a,b) rational pairs
 *   "checks": [ "axioms", "connection", "ftf", "self-morphism", "jubin",
 *               {"check": "morphism", "map": "f",
 *                "source_gamma": [...], "target_gamma": [...]},
 *               {"check": "horizontal", "map": "f", ...} ]
 * }
 *
 * Each check draws from its own RNG stream seeded from (seed, check
 * name), so reports are byte-identical across runs and independent of
 * check order; the report lists checks sorted by name.
 */

#include <cstdlib>
#include <map>

#include "geometry.hpp"
#include "jubin.hpp"

namespace jetgeom {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SuiteConfig {
    int n = 1;
    int samples = 100;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::map<std::string, SmoothMap<double>> maps;
    std::optional<ChristoffelField> gamma;
    std::vector<std::pair<Rat, Rat>> jubin;
    std::vector<nlohmann::json> checks;
};

namespace detail {

inline Rat rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw config_error("jubin parameters must be integers or rational strings like \"5/3\"");
}

inline std::vector<std::string> string_list(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw config_error(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw config_error(std::string(what) + " must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

/// FNV-1a over the check name, folded into the suite seed.
inline std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ seed;
}

}  // namespace detail

inline SuiteConfig parse_suite_config(const nlohmann::json& j) {
    SuiteConfig cfg;
    if (!j.is_object()) throw config_error("config must be a JSON object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw config_error("config needs an integer 'dimension'");
    cfg.n = j["dimension"].get<int>();
    if (cfg.n < 1 || cfg.n > 4) throw config_error("dimension must be in [1,4]");

    if (const char* env = std::getenv("JETGEOM_SAMPLES")) cfg.samples = std::atoi(env);
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (cfg.samples < 1) throw config_error("samples must be positive");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance")) cfg.tol = j["tolerance"].get<double>();

    if (j.contains("maps")) {
        for (auto it = j["maps"].begin(); it != j["maps"].end(); ++it) {
            const auto& m = it.value();
            if (!m.is_object() || !m.contains("expr") || !m.contains("in") || !m.contains("out"))
                throw config_error("map '" + it.key() + "' needs expr/in/out fields");
            cfg.maps.emplace(it.key(), parse_map(m["expr"].get<std::string>(), m["in"].get<int>(),
                                                 m["out"].get<int>()));
        }
    }
    if (j.contains("christoffel"))
        cfg.gamma = ChristoffelField::parse(cfg.n, detail::string_list(j["christoffel"], "christoffel"));
    if (j.contains("jubin")) {
        if (!j["jubin"].is_array()) throw config_error("jubin must be an array of [a,b] pairs");
        for (const auto& pair : j["jubin"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw config_error("each jubin entry must be an [a,b] pair");
            cfg.jubin.emplace_back(detail::rational_from_json(pair[0]),
                                   detail::rational_from_json(pair[1]));
        }
    }
    if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
        throw config_error("config needs a non-empty 'checks' array");
    for (const auto& c : j["checks"]) cfg.checks.push_back(c);
    return cfg;
}

namespace detail {

inline ChristoffelField gamma_or_zero(const nlohmann::json& spec, const char* key, int n) {
    if (spec.contains(key)) return ChristoffelField::parse(n, string_list(spec[key], key));
    return ChristoffelField::zero(n);
}

inline const SmoothMap<double>& named_map(const SuiteConfig& cfg, const std::string& name) {
    auto it = cfg.maps.find(name);
    if (it == cfg.maps.end()) throw config_error("check references unknown map '" + name + "'");
    return it->second;
}

inline std::vector<LawReport> run_one_check(const SuiteConfig& cfg, const nlohmann::json& spec) {
    std::string kind;
    nlohmann::json opts = nlohmann::json::object();
    if (spec.is_string()) {
        kind = spec.get<std::string>();
    } else if (spec.is_object() && spec.contains("check")) {
        kind = spec["check"].get<std::string>();
        opts = spec;
    } else {
        throw config_error("each check must be a name or an object with a 'check' field");
    }

    auto ctx_for = [&](const std::string& name) {
        return CheckContext(check_seed(cfg.seed, name), cfg.samples, cfg.tol);
    };

    if (kind == "axioms") {
        std::vector<SmoothMap<double>> test_maps;
        for (const auto& [name, m] : cfg.maps)
            if (m.in_dim() == cfg.n) test_maps.push_back(m);
        auto ctx = ctx_for("axioms");
        LawReport r = verify_tangent_axioms(cfg.n, test_maps, ctx);
        r.name = "axioms";
        return {std::move(r)};
    }

    if (kind == "connection" || kind == "ftf" || kind == "self-morphism") {
        if (!cfg.gamma)
            return {LawReport::skipped(kind, "no christoffel field in config")};
        Connection conn = connection_from_christoffel(*cfg.gamma);
        if (kind == "connection") {
            auto ctx = ctx_for("connection");
            std::vector<LawReport> parts;
            parts.push_back(verify_vertical_connection(conn, ctx));
            parts.push_back(verify_horizontal(conn, ctx));
            parts.push_back(verify_compatibility(conn, ctx));
            return {LawReport::combine("connection", std::move(parts))};
        }
        if (kind == "ftf") {
            auto ctx = ctx_for("ftf");
            return {ftf_equivalence(conn, ctx).report};
        }
        auto ctx = ctx_for("self-morphism");
        const SmoothMap<double>* affine = nullptr;
        SmoothMap<double> held;
        if (opts.contains("affine_map")) {
            held = named_map(cfg, opts["affine_map"].get<std::string>());
            affine = &held;
        }
        return {check_self_morphism(make_space(conn), ctx, affine)};
    }

    if (kind == "morphism" || kind == "horizontal") {
        if (!opts.contains("map")) throw config_error("'" + kind + "' check needs a 'map' field");
        const std::string map_name = opts["map"].get<std::string>();
        const SmoothMap<double>& f = named_map(cfg, map_name);
        auto src = make_space(connection_from_christoffel(
            gamma_or_zero(opts, "source_gamma", f.in_dim())));
        auto dst = make_space(connection_from_christoffel(
            gamma_or_zero(opts, "target_gamma", f.out_dim())));
        const std::string label = kind + "[" + map_name + "]";
        auto ctx = ctx_for(label);
        LawReport r = kind == "morphism" ? is_geometric_morphism(f, src, dst, ctx)
                                         : is_horizontal_preserving(f, src, dst, ctx);
        r.name = label;
        return {std::move(r)};
    }

    if (kind == "jubin") {
        if (cfg.jubin.empty())
            return {LawReport::skipped("jubin", "no (a,b) parameter pairs in config")};
        std::vector<LawReport> out;
        for (const auto& [a, b] : cfg.jubin) {
            BimonadInstance inst = build_instance(a, b, cfg.n);
            std::vector<LawReport> parts;
            parts.push_back(verify_monad_laws(inst));
            parts.push_back(verify_comonad_laws(inst));
            parts.push_back(verify_mixed_law(inst));
            parts.push_back(verify_affine_structure(inst));
            out.push_back(LawReport::combine(
                "jubin[a=" + rational_to_string(a) + ",b=" + rational_to_string(b) + "]",
                std::move(parts)));
        }
        return out;
    }

    throw config_error("unknown check '" + kind + "'");
}

}  // namespace detail

struct SuiteResult {
    int exit_code = 0;  // 0 all pass, 1 check failure (2 = config error, raised as config_error)
    nlohmann::json report;
};

inline SuiteResult run_suite(const nlohmann::json& config) {
    SuiteConfig cfg = parse_suite_config(config);
    std::vector<LawReport> reports;
    for (const auto& spec : cfg.checks)
        for (LawReport& r : detail::run_one_check(cfg, spec)) reports.push_back(std::move(r));
    std::stable_sort(reports.begin(), reports.end(),
                     [](const LawReport& a, const LawReport& b) { return a.name < b.name; });

    SuiteResult res;
    bool all_pass = true;
    for (const LawReport& r : reports)
        if (r.status == Status::Fail || r.status == Status::Inconclusive) all_pass = false;
    res.exit_code = all_pass ? 0 : 1;
    res.report = {{"dimension", cfg.n},
                  {"seed", cfg.seed},
                  {"samples", cfg.samples},
                  {"tolerance", cfg.tol},
                  {"checks", reports}};
    return res;
}

}  // namespace jetgeom
