// Command-line front end: run check-suite configs, echo parsed
// expressions, and pretty-print reports.
//
// Exit codes: 0 all non-skipped checks pass; 1 at least one check failed
// or was inconclusive; 2 configuration, file, or expression errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <jetgeom/suite.hpp>

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

void print_law(const jetgeom::LawReport& r, std::ostream& os, int depth) {
    os << std::string(std::size_t(depth) * 2, ' ') << (r.passed() ? "[ ok ]" : "[FAIL]") << " "
       << r.name << "  status=" << jetgeom::status_name(r.status);
    if (r.samples > 0) os << "  samples=" << r.samples << "  max_residual=" << r.max_residual;
    os << "\n";
    if (r.witness && !r.witness->note.empty())
        os << std::string(std::size_t(depth) * 2 + 7, ' ') << "note: " << r.witness->note << "\n";
    for (const auto& c : r.children) print_law(c, os, depth + 1);
}

int cmd_run(const std::string& config_path, const std::string& output_path) {
    nlohmann::json config;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config '" << config_path << "'\n";
            return kExitConfigError;
        }
        try {
            in >> config;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return kExitConfigError;
        }
    }
    jetgeom::SuiteResult result;
    try {
        result = jetgeom::run_suite(config);
    } catch (const jetgeom::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const jetgeom::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const jetgeom::dim_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    const std::string text = result.report.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write report '" << output_path << "'\n";
            return kExitConfigError;
        }
        out << text;
    }
    return result.exit_code == 0 ? 0 : kExitCheckFailure;
}

int cmd_parse(const std::string& expr, int in_dim, int out_dim) {
    try {
        auto m = jetgeom::parse_map(expr, in_dim, out_dim);
        std::cout << m.to_source() << "\n";
        return 0;
    } catch (const jetgeom::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const jetgeom::dim_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

jetgeom::LawReport law_from_json(const nlohmann::json& j) {
    jetgeom::LawReport r;
    r.name = j.value("check", "?");
    const std::string st = j.value("status", "?");
    r.status = st == "pass"           ? jetgeom::Status::Pass
               : st == "fail"         ? jetgeom::Status::Fail
               : st == "skipped"      ? jetgeom::Status::Skipped
                                      : jetgeom::Status::Inconclusive;
    r.max_residual = j.value("max_residual", 0.0);
    r.samples = j.value("samples", 0);
    if (j.contains("witness")) {
        jetgeom::Witness w;
        w.note = j["witness"].value("note", "");
        r.witness = std::move(w);
    }
    if (j.contains("laws"))
        for (const auto& c : j["laws"]) r.children.push_back(law_from_json(c));
    return r;
}

int cmd_report(const std::string& report_path) {
    std::ifstream in(report_path);
    if (!in) {
        std::cerr << "error: cannot open report '" << report_path << "'\n";
        return kExitConfigError;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: report is not valid JSON: " << e.what() << "\n";
        return kExitConfigError;
    }
    std::cout << "suite: dimension=" << j.value("dimension", 0) << " seed=" << j.value("seed", 0)
              << " samples=" << j.value("samples", 0) << " tolerance=" << j.value("tolerance", 0.0)
              << "\n";
    bool all_pass = true;
    if (j.contains("checks"))
        for (const auto& c : j["checks"]) {
            auto r = law_from_json(c);
            if (!r.passed()) all_pass = false;
            print_law(r, std::cout, 0);
        }
    std::cout << (all_pass ? "all checks passed\n" : "FAILURES present\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equational workbench for tangent-bundle geometry on R^n"};
    app.require_subcommand(1);

    std::string config_path, output_path;
    auto* run = app.add_subcommand("run", "Run a JSON check-suite config");
    run->add_option("config", config_path, "Path to config JSON")->required();
    run->add_option("-o,--output", output_path, "Write the report here instead of stdout");

    std::string expr;
    int in_dim = 1, out_dim = 1;
    auto* parse = app.add_subcommand("parse", "Parse an expression and echo its canonical form");
    parse->add_option("expr", expr, "Expression source, components separated by ';'")->required();
    parse->add_option("--in", in_dim, "Input arity")->required();
    parse->add_option("--out", out_dim, "Number of components")->required();

    std::string report_path;
    bool pretty = false;
    auto* report = app.add_subcommand("report", "Render a report JSON for humans");
    report->add_flag("--pretty", pretty, "Human-readable rendering");
    report->add_option("report", report_path, "Path to report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    if (run->parsed()) return cmd_run(config_path, output_path);
    if (parse->parsed()) return cmd_parse(expr, in_dim, out_dim);
    return cmd_report(report_path);
}
