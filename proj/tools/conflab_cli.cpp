#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conflab/config.hpp"
#include "conflab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"conflab: numerical experiments on conformal densities of the unit ball"};
    app.require_subcommand(1);

    struct Options {
        std::string config, preset, out, seed;
        bool json_only = false;
        std::vector<std::string> overrides;
    };
    std::vector<Options> opts(std::size(conflab::kSubcommands));
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < opts.size(); ++i) {
        Options& o = opts[i];
        CLI::App* sub = app.add_subcommand(conflab::kSubcommands[i]);
        sub->add_option("--config", o.config, "INI file with [general] and per-subcommand sections");
        sub->add_option("--preset", o.preset, "coarse, default or fine");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--seed", o.seed, "seed for the random samplers");
        sub->add_flag("--json-only", o.json_only, "skip the CSV series");
        sub->add_option("overrides", o.overrides, "key=value settings");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : conflab::kExitUsage;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        const Options& o = opts[i];
        try {
            conflab::ExperimentConfig cfg(conflab::kSubcommands[i]);
            if (!o.config.empty()) cfg.load_file(o.config);
            for (const std::string& kv : o.overrides) cfg.apply_override(kv);
            if (!o.preset.empty()) cfg.set("preset", o.preset);
            if (!o.out.empty()) cfg.set("out", o.out);
            if (!o.seed.empty()) cfg.set("seed", o.seed);
            if (o.json_only) cfg.set("json_only", "true");
            cfg.validate();
            return conflab::run_and_write(cfg, std::cout, std::cerr);
        } catch (const conflab::ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return conflab::kExitUsage;
        }
    }
    return conflab::kExitUsage;
}
