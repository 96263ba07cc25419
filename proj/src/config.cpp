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

#include "crheat/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace crheat {
namespace {

using Json = nlohmann::ordered_json;

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "config" : path, "must be a JSON object");
}

void reject_unknown(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ConfigError(join(path, item.key()), "unknown field");
    }
}

const Json& required(const Json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) throw ConfigError(join(path, key), "missing required field");
    return j.at(key);
}

double number(const Json& j, const std::string& path, const std::string& key) {
    const Json& v = required(j, path, key);
    if (!v.is_number()) throw ConfigError(join(path, key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(join(path, key), "must be finite");
    return x;
}

std::int64_t integer(const Json& j, const std::string& path, const std::string& key) {
    const Json& v = required(j, path, key);
    if (!v.is_number_integer()) throw ConfigError(join(path, key), "must be an integer");
    return v.get<std::int64_t>();
}

bool boolean(const Json& j, const std::string& path, const std::string& key) {
    const Json& v = required(j, path, key);
    if (!v.is_boolean()) throw ConfigError(join(path, key), "must be true or false");
    return v.get<bool>();
}

std::string string(const Json& j, const std::string& path, const std::string& key) {
    const Json& v = required(j, path, key);
    if (!v.is_string()) throw ConfigError(join(path, key), "must be a string");
    return v.get<std::string>();
}

// Re-raises parameter validation under the config path of the offending field.
template <typename Fn>
void validated(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidParameter& e) {
        const std::string what = e.what();
        const auto colon = what.find(": ");
        throw ConfigError(join(path, e.field()), colon == std::string::npos ? what : what.substr(colon + 2));
    }
}

ModelParams parse_model(const Json& j) {
    const std::string path = "model";
    require_object(j, path);
    const std::string kind = string(j, path, "kind");
    if (kind == "rabi") {
        reject_unknown(j, path, {"kind", "omega_a", "omega_b", "g_rot", "g_cr", "fock_cutoff"});
        RabiParams p;
        p.omega_a = number(j, path, "omega_a");
        p.omega_b = number(j, path, "omega_b");
        p.g_rot = number(j, path, "g_rot");
        p.g_cr = number(j, path, "g_cr");
        p.fock_cutoff = integer(j, path, "fock_cutoff");
        validated(path, [&] { p.validate(); });
        return p;
    }
    if (kind == "sideband") {
        reject_unknown(j, path, {"kind", "delta", "nu", "omega_rabi", "eta", "include_cr", "fock_cutoff"});
        SidebandParams p;
        p.delta = number(j, path, "delta");
        p.nu = number(j, path, "nu");
        p.omega_rabi = number(j, path, "omega_rabi");
        p.eta = number(j, path, "eta");
        p.include_cr = boolean(j, path, "include_cr");
        p.fock_cutoff = integer(j, path, "fock_cutoff");
        validated(path, [&] { p.validate(); });
        return p;
    }
    throw ConfigError("model.kind", "must be \"rabi\" or \"sideband\"");
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
    for (const auto& info : scenario_catalog())
        if (info.kind == kind) return info.name;
    return "unknown";
}

std::optional<ScenarioKind> parse_scenario_name(std::string_view name) {
    for (const auto& info : scenario_catalog())
        if (info.name == name) return info.kind;
    return std::nullopt;
}

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog{
        {ScenarioKind::dark_state, "dark-state",
         "excitation-conserving coupling from |0,0>: no emission, no phonons"},
        {ScenarioKind::vacuum_emission, "vacuum-emission",
         "sweep of g_cr: steady emission without driving, decorrelation energy, entanglement"},
        {ScenarioKind::sideband, "sideband",
         "laser sideband cooling with and without the counter-rotating term: steady phonon floor"},
        {ScenarioKind::quench, "quench",
         "switch on g_cr at t = 0 from the settled uncoupled state; cumulative emission"},
        {ScenarioKind::trajectories, "trajectories",
         "quantum-jump ensemble compared against the master equation"},
    };
    return catalog;
}

std::vector<double> ScenarioConfig::sample_times() const {
    std::vector<double> t(static_cast<std::size_t>(sample_count));
    for (Index i = 0; i < sample_count; ++i)
        t[static_cast<std::size_t>(i)] = t_final * static_cast<double>(i) / static_cast<double>(sample_count - 1);
    t.back() = t_final;
    return t;
}

SpaceSpec ScenarioConfig::space() const {
    return std::visit([](const auto& p) { return p.space(); }, model);
}

ScenarioConfig parse_config(const Json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"scenario", "model", "dissipation", "t_final", "sample_count", "tolerances", "sweep",
                             "trajectories", "seed", "output"});
    ScenarioConfig cfg;

    const std::string name = string(doc, "", "scenario");
    const auto kind = parse_scenario_name(name);
    if (!kind) throw ConfigError("scenario", "unknown scenario \"" + name + "\"");
    cfg.scenario = *kind;

    cfg.model = parse_model(required(doc, "", "model"));
    const bool is_rabi = std::holds_alternative<RabiParams>(cfg.model);
    if (cfg.scenario == ScenarioKind::sideband && is_rabi)
        throw ConfigError("model.kind", "the sideband scenario needs a sideband model");
    if ((cfg.scenario == ScenarioKind::dark_state || cfg.scenario == ScenarioKind::vacuum_emission ||
         cfg.scenario == ScenarioKind::quench) &&
        !is_rabi)
        throw ConfigError("model.kind", "this scenario needs a rabi model");
    if (!is_rabi && std::get<SidebandParams>(cfg.model).delta > 0.0)
        throw ConfigError("model.delta", "must be <= 0 (red detuning) so |0,0> is the bare ground state");
    if (cfg.scenario == ScenarioKind::dark_state && std::get<RabiParams>(cfg.model).g_cr != 0.0)
        throw ConfigError("model.g_cr", "the dark-state scenario requires g_cr = 0");

    const Json& diss = required(doc, "", "dissipation");
    require_object(diss, "dissipation");
    reject_unknown(diss, "dissipation", {"gamma_a", "kappa_b"});
    cfg.dissipation.gamma_a = number(diss, "dissipation", "gamma_a");
    cfg.dissipation.kappa_b = number(diss, "dissipation", "kappa_b");
    validated("dissipation", [&] { cfg.dissipation.validate_for_steady_state(); });

    cfg.t_final = number(doc, "", "t_final");
    if (!(cfg.t_final > 0.0)) throw ConfigError("t_final", "must be positive");
    cfg.sample_count = integer(doc, "", "sample_count");
    if (cfg.sample_count < 2) throw ConfigError("sample_count", "must be at least 2");

    if (doc.contains("tolerances")) {
        const Json& tol = doc.at("tolerances");
        require_object(tol, "tolerances");
        reject_unknown(tol, "tolerances", {"rel_tol", "abs_tol"});
        cfg.tolerances.rel_tol = number(tol, "tolerances", "rel_tol");
        cfg.tolerances.abs_tol = number(tol, "tolerances", "abs_tol");
        if (!(cfg.tolerances.rel_tol >= 1e-12 && cfg.tolerances.rel_tol <= 1e-4))
            throw ConfigError("tolerances.rel_tol", "must lie in [1e-12, 1e-4]");
        if (!(cfg.tolerances.abs_tol > 0.0)) throw ConfigError("tolerances.abs_tol", "must be positive");
    }

    const bool wants_sweep = cfg.scenario == ScenarioKind::vacuum_emission || cfg.scenario == ScenarioKind::sideband;
    if (doc.contains("sweep")) {
        if (!wants_sweep) throw ConfigError("sweep", "only vacuum-emission and sideband take a sweep");
        const Json& sw = doc.at("sweep");
        require_object(sw, "sweep");
        reject_unknown(sw, "sweep", {"parameter", "values"});
        SweepSpec spec;
        spec.parameter = string(sw, "sweep", "parameter");
        const std::string expected = is_rabi ? "g_cr" : "include_cr";
        if (spec.parameter != expected) throw ConfigError("sweep.parameter", "must be \"" + expected + "\"");
        const Json& values = required(sw, "sweep", "values");
        if (!values.is_array() || values.empty()) throw ConfigError("sweep.values", "must be a non-empty array");
        for (const auto& v : values) {
            if (is_rabi) {
                if (!v.is_number() || !std::isfinite(v.get<double>()) || v.get<double>() < 0.0)
                    throw ConfigError("sweep.values", "g_cr values must be nonnegative numbers");
                spec.values.push_back(v.get<double>());
            } else {
                if (!v.is_boolean()) throw ConfigError("sweep.values", "include_cr values must be booleans");
                spec.values.push_back(v.get<bool>() ? 1.0 : 0.0);
            }
        }
        if (std::set<double>(spec.values.begin(), spec.values.end()).size() != spec.values.size())
            throw ConfigError("sweep.values", "values must be distinct");
        cfg.sweep = std::move(spec);
    } else if (wants_sweep) {
        throw ConfigError("sweep", "missing required field");
    }

    if (doc.contains("trajectories")) {
        if (cfg.scenario != ScenarioKind::trajectories)
            throw ConfigError("trajectories", "only the trajectories scenario takes this block");
        const Json& tr = doc.at("trajectories");
        require_object(tr, "trajectories");
        reject_unknown(tr, "trajectories", {"count", "dt"});
        TrajectorySpec spec;
        spec.count = integer(tr, "trajectories", "count");
        spec.dt = number(tr, "trajectories", "dt");
        if (spec.count < 2) throw ConfigError("trajectories.count", "must be at least 2");
        if (!(spec.dt > 0.0)) throw ConfigError("trajectories.dt", "must be positive");
        const double interval = cfg.t_final / static_cast<double>(cfg.sample_count - 1);
        const double ratio = interval / spec.dt;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio) || std::round(ratio) < 1.0)
            throw ConfigError("trajectories.dt", "sample spacing t_final / (sample_count - 1) must be a multiple of dt");
        cfg.trajectories = spec;
    } else if (cfg.scenario == ScenarioKind::trajectories) {
        throw ConfigError("trajectories", "missing required field");
    }

    if (doc.contains("seed")) {
        const Json& s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            throw ConfigError("seed", "must be a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    } else if (cfg.scenario == ScenarioKind::trajectories) {
        throw ConfigError("seed", "missing required field");
    }

    cfg.output = doc.contains("output") ? string(doc, "", "output") : "out/" + name;
    cfg.echo = doc;
    return cfg;
}

ScenarioConfig parse_config_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace crheat
