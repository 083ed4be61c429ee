// aip run <config.json> [--out DIR] [--quad N] [--seed K] [--check NAME...]

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aip/errors.hpp"
#include "aip/runner.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir, std::size_t quad,
                const std::uint64_t* seed, const std::vector<std::string>& checks)
{
    using namespace aip::io;
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!out_dir.empty())
            cfg.output = out_dir;
        if (quad > 0) {
            if (quad < 256)
                throw aip::AipError(aip::ErrorKind::InvalidInput, "--quad must be at least 256");
            cfg.quad_n = quad;
        }
        if (seed != nullptr)
            cfg.seed = *seed;
        if (!checks.empty())
            cfg.analyses = checks;
    } catch (const aip::AipError& e) {
        std::cerr << "aip: " << e.what() << "\n";
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            write_atomic(std::filesystem::path(out_dir) / "report.json",
                         dump_stable(error_report(std::string(to_string(e.kind())), e.what())));
        }
        return 2;
    }

    const RunOutcome res = run(cfg);
    const auto& rep = res.report;
    if (res.exit_code == 2) {
        std::cerr << "aip: "
                  << rep["error"]["message"].get<std::string>() << "\n";
    } else {
        std::cout << "status " << rep["status"].get<std::string>() << ", "
                  << rep["checks"].size() << " checks, " << rep["failures"].size() << " failed\n";
        for (const auto& f : rep["failures"])
            std::cout << "  failed: " << f.get<std::string>() << "\n";
    }
    std::cout << "report: " << (cfg.output / "report.json").string() << "\n";
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Abstract interpolation problem toolkit"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Build the coefficient matrix and run the configured analyses");
    std::string config;
    std::string out_dir;
    std::size_t quad = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;
    run->add_option("config", config, "Config JSON file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory (overrides the config)");
    run->add_option("--quad", quad, "Quadrature nodes on the circle (≥ 256)");
    auto* seed_opt = run->add_option("--seed", seed, "Seed for random parameter suites");
    run->add_option("--check", checks, "Analyses to run, overriding the config")
        ->check(CLI::IsMember(aip::io::kAnalyses));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run_command(config, out_dir, quad, seed_opt->count() > 0 ? &seed : nullptr, checks);
    } catch (const std::exception& e) {
        std::cerr << "aip: " << e.what() << "\n";
        return 2;
    }
}
