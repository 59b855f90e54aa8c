// Command-line front end: run verification suites from a configuration
// file, evaluate a single n-th product, or print the graded dimensions of
// a module.  Exit codes: 0 when everything requested passed, 1 when some
// check failed, 2 for configuration or usage errors.
#include "vx/suites.hpp"
#include "vx/verma.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + p.string());
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic checks for a coordinate-aware vertex algebra"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run verification suites from a config file");
    std::string run_config;
    run->add_option("config", run_config, "JSON run configuration")->required();
    std::vector<std::string> only;
    run->add_option("--suite", only, "restrict to the named suites (repeatable)");
    std::string out_dir;
    run->add_option("--out", out_dir, "directory receiving report.txt and report.json");
    std::uint64_t seed = 0;
    auto* seed_opt = run->add_option("--seed", seed, "override the configured seed");
    int jobs = 1;
    run->add_option("--jobs", jobs, "number of worker threads")
        ->check(CLI::Range(1, 64));

    auto* ev = app.add_subcommand("eval", "evaluate \"<state> _(n) <state>\"");
    std::string expr;
    ev->add_option("expr", expr, "product expression")->required();
    std::string ev_config;
    ev->add_option("--config", ev_config, "run configuration supplying the engine");

    auto* ch = app.add_subcommand("char", "print the graded dimensions of a module");
    std::string ch_config;
    ch->add_option("config", ch_config, "module configuration JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            vx::SuiteConfig cfg = vx::suite_config_from_json_text(slurp(run_config));
            if (seed_opt->count() > 0) cfg.seed = seed;
            if (!only.empty()) {
                const auto& names = vx::all_suite_names();
                for (const auto& s : only)
                    if (std::find(names.begin(), names.end(), s) == names.end())
                        throw std::invalid_argument("unknown suite: " + s);
                cfg.suites = only;
            }
            std::vector<vx::ReportEntry> entries = vx::run_suites(cfg, jobs);
            std::string text = vx::report_text(entries);
            std::cout << text;
            if (!out_dir.empty()) {
                std::filesystem::path dir(out_dir);
                std::filesystem::create_directories(dir);
                write_file(dir / "report.txt", text);
                write_file(dir / "report.json", vx::report_json(entries));
            }
            return vx::report_all_pass(entries) ? 0 : 1;
        }

        if (ev->parsed()) {
            vx::EngineConfig ec;
            ec.N = 2;
            if (!ev_config.empty())
                ec = vx::suite_config_from_json_text(slurp(ev_config)).engine;
            vx::Engine eng(ec);
            static const std::regex product(R"(_\((-?\d+)\))");
            std::smatch m;
            if (!std::regex_search(expr, m, product))
                throw std::invalid_argument(
                    "expression must contain _(n) between two states");
            long n = std::stol(m[1].str());
            vx::State a = eng.parse_state(m.prefix().str());
            vx::State b = eng.parse_state(m.suffix().str());
            std::cout << eng.str(eng.nth_product(a, n, b)) << "\n";
            return 0;
        }

        // char
        std::string text = slurp(ch_config);
        vx::EngineConfig ec; // one variable unless the file says otherwise
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(
                std::string("module config is not valid JSON: ") + e.what());
        }
        if (j.is_object() && j.contains("engine"))
            ec = vx::engine_config_from_json_text(j.at("engine").dump(), ec);
        vx::VermaConfig vc = vx::verma_config_from_json_text(text);
        vx::Engine eng(ec);
        vx::VermaModule mod(eng, vc);
        std::vector<long> dims = mod.character();
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < dims.size(); ++i)
            os << (i ? "," : "") << dims[i];
        os << "]";
        std::cout << os.str() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
