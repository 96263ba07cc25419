// Copyright 2026 The crheat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// crheat: scenario runner for environment-induced heating in composite open
// quantum systems.
//
//   crheat run <config.json> [--out DIR] [--seed U64] [--threads K]
//   crheat validate <config.json>
//   crheat list-scenarios

#include <CLI11.hpp>

#include <iostream>

#include "crheat/config.hpp"
#include "crheat/scenario.hpp"

namespace {

int run(const std::string& path, const std::optional<std::string>& out_dir, const std::optional<std::uint64_t>& seed,
        unsigned threads) {
    crheat::ScenarioConfig cfg;
    try {
        cfg = crheat::load_config(path);
    } catch (const crheat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        const std::filesystem::path dir = out_dir ? std::filesystem::path(*out_dir) : std::filesystem::path("out");
        try {
            crheat::write_manifest(dir, crheat::config_error_manifest(path, e));
        } catch (const std::exception&) {
        }
        return crheat::kExitConfigError;
    }
    crheat::RunOptions options;
    if (out_dir) options.out_dir = *out_dir;
    options.seed = seed;
    options.threads = threads;
    const auto outcome = crheat::run_scenario(cfg, options);
    for (const auto& c : outcome.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << crheat::format_number(c.value)
                  << " threshold=" << crheat::format_number(c.threshold) << '\n';
    if (!outcome.error.empty()) std::cerr << "error: " << outcome.error << '\n';
    std::cout << "wrote " << (outcome.out_dir / "manifest.json").string() << '\n';
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crheat: composite open quantum systems and environment-induced heating"};
    app.require_subcommand(1);

    std::string run_config;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    auto* run_cmd = app.add_subcommand("run", "run a scenario and write CSV + manifest");
    run_cmd->add_option("config", run_config, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir, "output directory (overrides config.output)");
    run_cmd->add_option("--seed", seed, "random seed (overrides config.seed)");
    run_cmd->add_option("--threads", threads, "worker threads for trajectory ensembles")->check(CLI::PositiveNumber);

    std::string validate_config;
    auto* validate_cmd = app.add_subcommand("validate", "check a config without running it");
    validate_cmd->add_option("config", validate_config, "scenario config (JSON)")->required();

    auto* list_cmd = app.add_subcommand("list-scenarios", "list the shipped scenarios");

    CLI11_PARSE(app, argc, argv);

    if (*run_cmd) return run(run_config, out_dir, seed, threads);
    if (*validate_cmd) {
        try {
            const auto cfg = crheat::load_config(validate_config);
            std::cout << "ok: " << crheat::scenario_name(cfg.scenario) << '\n';
            return crheat::kExitOk;
        } catch (const crheat::ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return crheat::kExitConfigError;
        }
    }
    if (*list_cmd) {
        for (const auto& info : crheat::scenario_catalog()) std::cout << info.name << "\t" << info.summary << '\n';
        return crheat::kExitOk;
    }
    return crheat::kExitOk;
}
