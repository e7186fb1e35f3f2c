#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "relax/config.hpp"
#include "relax/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"relaxlab: spectral laboratory for damped Euler-Poisson and "
                 "Keller-Segel relaxation limits"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    long long seed = -1;
    int threads = 1;

    for (const char* name : {"linear-verify", "besov", "simulate", "limit-study"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--set", overrides, "key=value override (repeatable, dotted keys)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override init.seed");
        sub->add_option("--threads", threads, "worker threads (reserved; runs are serial)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        relax::RunConfig cfg = relax::parse_config(config_path, overrides);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (seed >= 0) cfg.init_seed = static_cast<std::uint64_t>(seed);
        cfg.validate();
        return relax::run_command(command, cfg);
    } catch (const relax::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return relax::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return relax::kExitBlowUp;
    }
}
