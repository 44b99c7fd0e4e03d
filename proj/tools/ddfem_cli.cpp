// Command-line driver: h-convergence study, canned examples, beta sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ddfem/run.hpp"
#include "ddfem/verify.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitIo = 4;

ddfem::RunConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return ddfem::RunConfig{};
    std::ifstream in(config_path);
    if (!in) throw ddfem::IoError("cannot read config file '" + config_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ddfem::parse_config(ss.str());
}

int run_converge(const std::string& out_dir) {
    const auto rows = ddfem::convergence_study();
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(std::filesystem::path(out_dir) / "convergence.csv");
    if (!csv) throw ddfem::IoError("cannot write convergence.csv");
    csv << "cycle,h,l2_error,rate\n";
    for (const auto& row : rows) {
        csv << row.cycle << ',' << ddfem::detail::fmt_g17(row.h) << ','
            << ddfem::detail::fmt_g17(row.l2_error) << ','
            << (row.cycle == 1 ? std::string("-") : ddfem::detail::fmt_g17(row.rate))
            << '\n';
        std::cout << "cycle " << row.cycle << "  h " << row.h << "  L2 "
                  << row.l2_error << "  rate "
                  << (row.cycle == 1 ? 0.0 : row.rate) << '\n';
    }
    return 0;
}

int run_examples(const ddfem::RunConfig& config) {
    const auto results = ddfem::run_example(config);
    for (const auto& result : results)
        std::cout << "beta " << result.beta << ": converged in "
                  << result.report.iterations << " iterations, outputs in "
                  << result.directory.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-dependent elasticity FE solver"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    auto* converge = app.add_subcommand("converge", "run the h-convergence study");
    converge->add_option("--out", out_dir, "output directory");

    std::string example;
    std::string config_path;
    std::string beta_list;
    int refine = -1;
    auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--example", example, "example id: 1a, 1b, 2, 3, 4");
        cmd->add_option("--config", config_path, "config file");
        cmd->add_option("--beta", beta_list, "comma-separated beta values");
        cmd->add_option("--refine", refine, "global refinements");
        cmd->add_option("--out", out_dir, "output directory");
    };
    auto* run = app.add_subcommand("run", "solve an example or config-defined BVP");
    add_run_options(run);
    auto* sweep = app.add_subcommand("sweep", "solve an example over a beta list");
    add_run_options(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitParse : 0;
    }

    try {
        if (converge->parsed()) return run_converge(out_dir);

        ddfem::RunConfig config = load_config(config_path);
        if (!example.empty()) config.example = example;
        if (refine >= 0) config.refinements = refine;
        if (!beta_list.empty()) config.betas = ddfem::detail::parse_list(beta_list, 0);
        config.output_dir = out_dir;
        config.validate();
        return run_examples(config);
    } catch (const ddfem::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ddfem::ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitParse;
    } catch (const ddfem::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitNoConvergence;
    }
}
