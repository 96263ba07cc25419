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

#pragma once

// Scenario execution and result emission (CSV tables + JSON run manifest).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crheat/config.hpp"

namespace crheat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

inline constexpr std::string_view kVersion = CRHEAT_VERSION;

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  ///< overrides config.output
    std::optional<std::uint64_t> seed;             ///< overrides config.seed
    unsigned threads = 1;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::filesystem::path out_dir;
    std::vector<std::filesystem::path> files;
    std::vector<CheckResult> checks;
    std::string error;
    nlohmann::ordered_json manifest;
};

/// Runs one scenario, writing timeseries.csv, summary.csv / trajectories.csv
/// where applicable, and manifest.json (always, even on failure).
RunOutcome run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Manifest for a run rejected before execution (bad config).
nlohmann::ordered_json config_error_manifest(const std::string& config_path, const ConfigError& error);

void write_manifest(const std::filesystem::path& dir, const nlohmann::ordered_json& manifest);

/// Shortest round-trip decimal representation.
std::string format_number(double x);

/// FNV-1a 64-bit digest of (config echo, seed, version, generator id), hex encoded.
std::string manifest_digest(const nlohmann::ordered_json& config_echo, std::uint64_t seed);

}  // namespace crheat
