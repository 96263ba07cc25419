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


#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crheat/scenario.hpp"
#include "crheat/trajectories.hpp"

using namespace crheat;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "crheat_unit" / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> data_lines(const fs::path& p) {
    std::vector<std::string> out;
    std::istringstream in(slurp(p));
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

ScenarioConfig small(const std::string& text) { return parse_config_text(text); }

const char* kDark = R"({
  "scenario": "dark-state",
  "model": {"kind": "rabi", "omega_a": 1.0, "omega_b": 1.0, "g_rot": 0.1, "g_cr": 0.0, "fock_cutoff": 6},
  "dissipation": {"gamma_a": 0.1, "kappa_b": 0.1},
  "t_final": 10.0,
  "sample_count": 11
})";

const char* kTrajectories = R"({
  "scenario": "trajectories",
  "model": {"kind": "rabi", "omega_a": 1.0, "omega_b": 1.0, "g_rot": 0.0, "g_cr": 0.3, "fock_cutoff": 5},
  "dissipation": {"gamma_a": 0.5, "kappa_b": 0.5},
  "t_final": 4.0,
  "sample_count": 5,
  "trajectories": {"count": 24, "dt": 0.01},
  "seed": 11
})";

}  // namespace

TEST_CASE("format_number round-trips") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-12) == "1e-12");
    CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("manifest digest depends on config and seed only") {
    const Json a = Json::parse(R"({"x": 1})");
    const Json b = Json::parse(R"({"x": 2})");
    CHECK(manifest_digest(a, 1) == manifest_digest(a, 1));
    CHECK(manifest_digest(a, 1) != manifest_digest(a, 2));
    CHECK(manifest_digest(a, 1) != manifest_digest(b, 1));
    CHECK(manifest_digest(a, 1).rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("dark-state run writes a self-describing time series") {
    const fs::path dir = scratch("dark");
    const auto outcome = run_scenario(small(kDark), RunOptions{dir, std::nullopt, 1});
    CHECK(outcome.exit_code == kExitOk);
    for (const auto& c : outcome.checks) CHECK_MESSAGE(c.passed, c.name);
    const std::string csv = slurp(dir / "timeseries.csv");
    CHECK(csv.rfind("# crheat ", 0) == 0);
    CHECK(csv.find("# manifest_digest: fnv1a64:") != std::string::npos);
    const auto lines = data_lines(dir / "timeseries.csv");
    REQUIRE(lines.size() == 12);
    CHECK(lines[0] == "time,excited_population,mean_phonon,rate_A,rate_B,total_rate,trace_error,min_eigenvalue");
    CHECK(lines[1].rfind("0,", 0) == 0);

    const Json manifest = Json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["status"] == "ok");
    CHECK(manifest["exit_code"] == 0);
    CHECK(manifest["all_checks_passed"] == true);
    CHECK(manifest["config"]["scenario"] == "dark-state");
    CHECK(manifest.contains("wall_clock_seconds"));
    CHECK(manifest["rng"] == std::string(kRngId));
}

TEST_CASE("trajectory runs are byte-identical across worker counts") {
    const auto cfg = small(kTrajectories);
    const auto a = run_scenario(cfg, RunOptions{scratch("traj1"), std::nullopt, 1});
    const auto b = run_scenario(cfg, RunOptions{scratch("traj3"), std::nullopt, 3});
    REQUIRE(a.exit_code == kExitOk);
    REQUIRE(b.exit_code == kExitOk);
    for (const char* f : {"trajectories.csv", "timeseries.csv"})
        CHECK(slurp(a.out_dir / f) == slurp(b.out_dir / f));

    const auto c = run_scenario(cfg, RunOptions{scratch("traj_seed"), 12u, 1});
    CHECK(slurp(a.out_dir / "trajectories.csv") != slurp(c.out_dir / "trajectories.csv"));
}

TEST_CASE("numerical failures exit with status 3 and still write a manifest") {
    // an ensemble with dt this large violates the jump-probability guard
    auto cfg = small(kTrajectories);
    std::get<RabiParams>(cfg.model).g_cr = 0.9;
    cfg.trajectories->dt = 1.0;
    const fs::path dir = scratch("fail");
    const auto outcome = run_scenario(cfg, RunOptions{dir, std::nullopt, 1});
    CHECK(outcome.exit_code == kExitNumericalFailure);
    const Json manifest = Json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["status"] == "numerical-failure");
    CHECK(manifest["exit_code"] == 3);
}

#ifdef CRHEAT_CLI_PATH
TEST_CASE("CLI exit codes") {
    const fs::path dir = scratch("cli");
    fs::create_directories(dir);
    const std::string cli = CRHEAT_CLI_PATH;
    const std::string data = CRHEAT_TEST_DATA;
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status(cli + " list-scenarios") == 0);
    CHECK(status(cli + " validate " + data + "/bad_eta.json") == 2);
    CHECK(status(cli + " run " + data + "/bad_eta.json --out " + dir.string()) == 2);
    const Json manifest = Json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["status"] == "config-error");
    CHECK(manifest["error_field"] == "model.eta");

    std::ofstream(dir / "dark.json") << kDark;
    CHECK(status(cli + " validate " + (dir / "dark.json").string()) == 0);
    CHECK(status(cli + " run " + (dir / "dark.json").string() + " --out " + (dir / "dark").string()) == 0);
    CHECK(fs::exists(dir / "dark" / "timeseries.csv"));
}
#endif
