// Command-line front end: validate / simulate / rates / verify / classify.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lwr/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Belief dynamics on directed networks of in-degree <= 1"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<int> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--config", config_path, "scenario config (JSON)")->required();
        if (needs_out) cmd->add_option("--out", out_path, "output path")->required();
        cmd->add_option("--horizon", horizon, "override the configured horizon");
        cmd->add_option("--seed", seed, "override the configured seed");
        cmd->add_option("--seeds", seeds, "override the configured seed count");
        cmd->add_option("--threads", threads, "worker threads per round")->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "check a scenario config");
    validate->add_option("--config", config_path, "scenario config (JSON)")->required();
    auto* simulate = app.add_subcommand("simulate", "run one simulation, write CSV artifacts");
    add_common(simulate, true);
    auto* rates = app.add_subcommand("rates", "multi-seed rate analysis, write JSON report");
    add_common(rates, true);
    auto* verify = app.add_subcommand("verify", "check the recursion against the one-shot posterior");
    add_common(verify, true);
    auto* classify = app.add_subcommand("classify", "network structure report");
    classify->add_option("--config", config_path, "scenario config (JSON)")->required();
    classify->add_option("--out", out_path, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    lwr::CommandOverrides ov;
    ov.horizon = horizon;
    ov.seed = seed;
    ov.seeds = seeds;
    ov.threads = threads;

    if (validate->parsed()) return lwr::cmd_validate(config_path, std::cout, std::cerr);
    if (simulate->parsed()) return lwr::cmd_simulate(config_path, out_path, ov, std::cout, std::cerr);
    if (rates->parsed()) return lwr::cmd_rates(config_path, out_path, ov, std::cout, std::cerr);
    if (verify->parsed()) return lwr::cmd_verify(config_path, out_path, ov, std::cout, std::cerr);
    if (classify->parsed()) return lwr::cmd_classify(config_path, out_path, std::cout, std::cerr);
    return lwr::kExitRuntimeError;
}
