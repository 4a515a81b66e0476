#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "greedylab/runner.hpp"

namespace {

greedylab::io::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw greedylab::validation_error("cannot open config file: " + path);
    greedylab::io::json j;
    try {
        in >> j;
    } catch (const greedylab::io::json::exception& e) {
        throw greedylab::validation_error(std::string("config is not valid JSON: ") + e.what());
    }
    return j;
}

int dispatch(const std::string& op, const std::string& config_path, const std::string& out_dir,
             std::optional<std::uint64_t> seed, int jobs, const std::string& inline_arg) {
    greedylab::io::json config;
    if (!config_path.empty()) {
        config = load_config(config_path);
        if (config.contains("op") && config.at("op").get<std::string>() != op) {
            std::cerr << "validation error: config op '" << config.at("op").get<std::string>()
                      << "' does not match subcommand '" << op << "'\n";
            return greedylab::kExitValidation;
        }
    }
    config["op"] = op;
    if (!inline_arg.empty()) {
        if (op == "params")
            config["name"] = inline_arg;
        else if (op == "reproduce")
            config["suite"] = inline_arg;
    }
    greedylab::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = seed;
    opts.jobs = jobs;
    const greedylab::RunResult result = greedylab::run_experiment(config, opts);
    std::cout << result.summary;
    if (result.exit_code == greedylab::kExitValidation) std::cerr << result.summary;
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedylab: thresholding-greedy measurements on quasi-Banach sequence spaces"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::uint64_t seed_value = 0;
    int jobs = 1;
    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--out", out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", seed_value, "seed override for sampled searches");
    app.add_option("--jobs", jobs, "worker threads for sampled searches");
    app.fallthrough();

    std::string params_name, suite_name = "acceptance";
    app.add_subcommand("norm", "evaluate a quasi-norm");
    app.add_subcommand("construct", "build and dump partitions / DKK tables");
    app.add_subcommand("tga", "thresholding greedy residual curve");
    auto* params_cmd = app.add_subcommand("params", "measured greedy parameters");
    params_cmd->add_option("name", params_name,
                           "democracy | conditionality | embedding | quasi-greedy | suppression "
                           "| threshold-domination | lebesgue");
    app.add_subcommand("verify", "run the invariant suites");
    auto* repro_cmd = app.add_subcommand("reproduce", "run a reproduction suite");
    repro_cmd->add_option("suite", suite_name, "suite name (default: acceptance)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : greedylab::kExitValidation;
    }

    const std::string op = app.get_subcommands().front()->get_name();
    const std::string inline_arg = op == "params" ? params_name : op == "reproduce" ? suite_name
                                                                                     : "";
    try {
        return dispatch(op, config_path, out_dir,
                        seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed_value)
                                              : std::nullopt,
                        jobs, inline_arg);
    } catch (const greedylab::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return greedylab::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
