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

// Scenario configuration: one strict JSON document per run. Physics
// parameters carry no defaults; unknown fields are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crheat/error.hpp"
#include "crheat/models.hpp"
#include "crheat/spectra.hpp"

namespace crheat {

enum class ScenarioKind { dark_state, vacuum_emission, sideband, quench, trajectories };

std::string_view scenario_name(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_name(std::string_view name);

struct ScenarioInfo {
    ScenarioKind kind;
    std::string_view name;
    std::string_view summary;
};

const std::vector<ScenarioInfo>& scenario_catalog();

/// Raised for malformed configs; `field()` is the dotted path of the culprit.
class ConfigError : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

struct Tolerances {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
};

struct SweepSpec {
    std::string parameter;       ///< "g_cr" (Rabi) or "include_cr" (sideband)
    std::vector<double> values;  ///< booleans stored as 0 / 1
};

struct TrajectorySpec {
    Index count = 0;
    double dt = 0.0;
};

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::dark_state;
    ModelParams model;
    DissipationSpec dissipation;
    double t_final = 0.0;
    Index sample_count = 0;
    Tolerances tolerances;
    std::optional<SweepSpec> sweep;
    std::optional<TrajectorySpec> trajectories;
    std::uint64_t seed = 0;
    std::string output;
    nlohmann::ordered_json echo;  ///< normalized copy of the accepted document

    /// Evenly spaced sample grid over [0, t_final].
    std::vector<double> sample_times() const;
    SpaceSpec space() const;
};

ScenarioConfig parse_config(const nlohmann::ordered_json& doc);
ScenarioConfig parse_config_text(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace crheat
