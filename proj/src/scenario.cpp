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

#include "crheat/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>

#include "crheat/lindblad.hpp"
#include "crheat/observables.hpp"
#include "crheat/spectra.hpp"
#include "crheat/trajectories.hpp"

namespace crheat {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kConvergenceTol = 1e-6;
constexpr double kDarkTol = 1e-12;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

LinOp hamiltonian(const ModelParams& model) {
    return std::visit(
        [](const auto& p) -> LinOp {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RabiParams>)
                return build_rabi(p);
            else
                return build_sideband(p);
        },
        model);
}

ModelParams with_cutoff(ModelParams model, Index cutoff) {
    std::visit([cutoff](auto& p) { p.fock_cutoff = cutoff; }, model);
    return model;
}

Index cutoff_of(const ModelParams& model) {
    return std::visit([](const auto& p) { return p.fock_cutoff; }, model);
}

SpaceSpec space_of(const ModelParams& model) { return SpaceSpec(cutoff_of(model)); }

std::vector<JumpChannel> channels_for(const ModelParams& model, const DissipationSpec& diss) {
    return jump_channels(diss, space_of(model));
}

struct SteadyRow {
    double excited = 0.0;
    double phonon = 0.0;
    EmissionReport emission;
    double delta_e = 0.0;
    double entropy = 0.0;
    double phonon_refined = 0.0;  ///< steady phonon number at cutoff + 10
    DensityDefects defects{};
};

SteadyRow steady_row(const ModelParams& model, const DissipationSpec& diss) {
    const SpaceSpec space = space_of(model);
    const LinOp h = hamiltonian(model);
    const auto channels = channels_for(model, diss);
    const DensityOp rho = steady_state(h, channels);
    SteadyRow row;
    row.excited = excited_population(rho, space);
    row.phonon = mean_phonon(rho, space);
    row.emission = emission_rates(rho, channels);
    row.defects = density_defects(rho);
    const auto ground = ground_state(h);
    row.delta_e = decorrelation_energy(h, product_ground(model), ground);
    row.entropy = entanglement_entropy(ground.state, space);

    const ModelParams refined = with_cutoff(model, cutoff_of(model) + 10);
    const DensityOp rho_refined = steady_state(hamiltonian(refined), channels_for(refined, diss));
    row.phonon_refined = mean_phonon(rho_refined, space_of(refined));
    return row;
}

Table time_series(const EvolutionResult& res, const SpaceSpec& space, const std::vector<JumpChannel>& channels,
                  std::vector<EmissionReport>* reports = nullptr) {
    Table t{{"time", "excited_population", "mean_phonon", "rate_A", "rate_B", "total_rate", "trace_error",
             "min_eigenvalue"},
            {}};
    for (std::size_t i = 0; i < res.states.size(); ++i) {
        const DensityOp& rho = res.states[i];
        const auto em = emission_rates(rho, channels);
        const auto defects = density_defects(rho);
        t.rows.push_back({res.times[i], excited_population(rho, space), mean_phonon(rho, space), em.rates[0],
                          em.rates[1], em.total, defects.trace_error, defects.min_eigenvalue});
        if (reports) reports->push_back(em);
    }
    return t;
}

void write_csv(const fs::path& file, const std::vector<std::string>& header, const Table& table) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + file.string());
    for (const auto& line : header) out << "# " << line << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!std::isfinite(row[c])) throw InvariantViolation("non-finite value in column " + table.columns[c]);
            out << (c ? "," : "") << format_number(row[c]);
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing " + file.string());
}

CheckResult check_le(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

CheckResult check_gt(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value > threshold, value, threshold, std::move(detail)};
}

double column_max(const Table& t, std::size_t col) {
    double m = -INFINITY;
    for (const auto& r : t.rows) m = std::max(m, r[col]);
    return m;
}

double column_min(const Table& t, std::size_t col) {
    double m = INFINITY;
    for (const auto& r : t.rows) m = std::min(m, r[col]);
    return m;
}

void hygiene_checks(const std::string& prefix, const Table& series, const EvolutionResult& res,
                    std::vector<CheckResult>& checks) {
    checks.push_back(check_le(prefix + "trace_error_max", column_max(series, 6), 1e-8));
    checks.push_back(check_le(prefix + "hermiticity_max", res.max_hermiticity_defect, 1e-10));
    checks.push_back({prefix + "min_eigenvalue", column_min(series, 7) >= -1e-8, column_min(series, 7), -1e-8, ""});
}

void steady_checks(const std::string& prefix, const SteadyRow& row, std::vector<CheckResult>& checks) {
    checks.push_back(check_le(prefix + "steady_hermiticity", row.defects.hermiticity, 1e-10));
    checks.push_back({prefix + "steady_min_eigenvalue", row.defects.min_eigenvalue >= -1e-8,
                      row.defects.min_eigenvalue, -1e-8, ""});
    checks.push_back(
        check_le(prefix + "truncation_convergence", std::abs(row.phonon - row.phonon_refined), kConvergenceTol,
                 "|n_ss(N) - n_ss(N+10)|"));
}

std::vector<double> steady_values(const SteadyRow& r) {
    return {r.excited,      r.phonon,  r.emission.rates[0],
            r.emission.rates[1], r.emission.total, r.delta_e,
            r.entropy,      std::abs(r.phonon - r.phonon_refined)};
}

const std::vector<std::string> kSteadyColumns{"steady_excited", "steady_phonon",  "steady_rate_A",
                                              "steady_rate_B",  "steady_total_rate", "delta_e",
                                              "entanglement_entropy", "truncation_delta"};

EvolveOptions evolve_options(const ScenarioConfig& cfg, std::vector<double> times) {
    EvolveOptions opt;
    opt.rel_tol = cfg.tolerances.rel_tol;
    opt.abs_tol = cfg.tolerances.abs_tol;
    opt.sample_times = std::move(times);
    return opt;
}

struct Outputs {
    std::vector<std::pair<std::string, Table>> tables;
    std::vector<CheckResult> checks;
};

Outputs run_dark_state(const ScenarioConfig& cfg) {
    Outputs out;
    const SpaceSpec space = cfg.space();
    const LinOp h = hamiltonian(cfg.model);
    const auto channels = channels_for(cfg.model, cfg.dissipation);
    const auto res = evolve(h, channels, projector(basis_ket(space, 0, 0)), cfg.t_final,
                            evolve_options(cfg, cfg.sample_times()));
    Table series = time_series(res, space, channels);
    out.checks.push_back(check_le("dark_total_rate_max", column_max(series, 5), kDarkTol));
    out.checks.push_back(check_le("dark_mean_phonon_max", column_max(series, 2), kDarkTol));
    hygiene_checks("", series, res, out.checks);
    steady_checks("", steady_row(cfg.model, cfg.dissipation), out.checks);
    out.tables.emplace_back("timeseries.csv", std::move(series));
    return out;
}

Outputs run_vacuum_emission(const ScenarioConfig& cfg) {
    Outputs out;
    const SpaceSpec space = cfg.space();
    const auto channels = channels_for(cfg.model, cfg.dissipation);
    const auto res = evolve(hamiltonian(cfg.model), channels, projector(basis_ket(space, 0, 0)), cfg.t_final,
                            evolve_options(cfg, cfg.sample_times()));
    Table series = time_series(res, space, channels);
    hygiene_checks("", series, res, out.checks);

    std::vector<double> g_values = cfg.sweep->values;
    std::sort(g_values.begin(), g_values.end());
    Table summary{{"g_cr"}, {}};
    summary.columns.insert(summary.columns.end(), kSteadyColumns.begin(), kSteadyColumns.end());
    std::map<double, SteadyRow> rows;
    for (double g : g_values) {
        RabiParams p = std::get<RabiParams>(cfg.model);
        p.g_cr = g;
        const SteadyRow row = steady_row(p, cfg.dissipation);
        const std::string tag = "g_cr=" + format_number(g) + ":";
        steady_checks(tag, row, out.checks);
        if (g == 0.0) {
            out.checks.push_back(check_le(tag + "steady_total_rate", row.emission.total, kDarkTol));
            out.checks.push_back(check_le(tag + "delta_e", row.delta_e, 1e-10));
            out.checks.push_back(check_le(tag + "entanglement_entropy", row.entropy, 1e-12));
        } else {
            out.checks.push_back(check_gt(tag + "steady_total_rate", row.emission.total, 0.0));
            out.checks.push_back(check_gt(tag + "delta_e", row.delta_e, 0.0));
            out.checks.push_back(check_gt(tag + "entanglement_entropy", row.entropy, 0.0));
        }
        std::vector<double> values{g};
        const auto sv = steady_values(row);
        values.insert(values.end(), sv.begin(), sv.end());
        summary.rows.push_back(std::move(values));
        rows.emplace(g, row);
    }
    for (std::size_t i = 1; i < g_values.size(); ++i) {
        const auto& lo = rows.at(g_values[i - 1]);
        const auto& hi = rows.at(g_values[i]);
        const std::string tag = "increasing[" + format_number(g_values[i - 1]) + "->" + format_number(g_values[i]) + "]:";
        out.checks.push_back(check_gt(tag + "steady_total_rate", hi.emission.total - lo.emission.total, 0.0));
        out.checks.push_back(check_gt(tag + "delta_e", hi.delta_e - lo.delta_e, 0.0));
    }
    for (double g : g_values) {
        if (g > 0.0 && rows.count(2.0 * g)) {
            const double ratio = rows.at(2.0 * g).emission.total / rows.at(g).emission.total;
            out.checks.push_back({"rate_ratio[" + format_number(2.0 * g) + "/" + format_number(g) + "]",
                                  ratio >= 3.5 && ratio <= 4.5, ratio, 4.0, "expected in [3.5, 4.5]"});
        }
    }
    out.tables.emplace_back("timeseries.csv", std::move(series));
    out.tables.emplace_back("summary.csv", std::move(summary));
    return out;
}

Outputs run_sideband(const ScenarioConfig& cfg) {
    Outputs out;
    const SpaceSpec space = cfg.space();
    const auto channels = channels_for(cfg.model, cfg.dissipation);
    const auto res = evolve(hamiltonian(cfg.model), channels, projector(basis_ket(space, 0, 0)), cfg.t_final,
                            evolve_options(cfg, cfg.sample_times()));
    Table series = time_series(res, space, channels);
    hygiene_checks("", series, res, out.checks);

    Table summary{{"include_cr"}, {}};
    summary.columns.insert(summary.columns.end(), kSteadyColumns.begin(), kSteadyColumns.end());
    std::vector<double> flags = cfg.sweep->values;
    std::sort(flags.begin(), flags.end());
    std::map<double, double> phonon;
    for (double flag : flags) {
        SidebandParams p = std::get<SidebandParams>(cfg.model);
        p.include_cr = flag != 0.0;
        const SteadyRow row = steady_row(p, cfg.dissipation);
        steady_checks(std::string("include_cr=") + (p.include_cr ? "true" : "false") + ":", row, out.checks);
        std::vector<double> values{flag};
        const auto sv = steady_values(row);
        values.insert(values.end(), sv.begin(), sv.end());
        summary.rows.push_back(std::move(values));
        phonon[flag] = row.phonon;
    }
    if (phonon.count(0.0) && phonon.count(1.0)) {
        out.checks.push_back(check_gt("phonon_floor_rwa_positive", phonon[0.0], 0.0));
        out.checks.push_back(check_gt("phonon_floor_cr_exceeds_rwa", phonon[1.0] - phonon[0.0], 0.0));
    }
    out.tables.emplace_back("timeseries.csv", std::move(series));
    out.tables.emplace_back("summary.csv", std::move(summary));
    return out;
}

Outputs run_quench(const ScenarioConfig& cfg) {
    Outputs out;
    const SpaceSpec space = cfg.space();
    const auto channels = channels_for(cfg.model, cfg.dissipation);
    RabiParams before = std::get<RabiParams>(cfg.model);
    before.g_cr = 0.0;
    const DensityOp settled = steady_state(build_rabi(before), channels);
    const LinOp h = hamiltonian(cfg.model);
    const auto res = evolve(h, channels, settled, cfg.t_final, evolve_options(cfg, cfg.sample_times()));
    std::vector<EmissionReport> reports;
    Table series = time_series(res, space, channels, &reports);
    hygiene_checks("", series, res, out.checks);

    const double emitted = cumulative_emission(res.times, reports);
    const SteadyRow row = steady_row(cfg.model, cfg.dissipation);
    steady_checks("", row, out.checks);
    const double g_cr = std::get<RabiParams>(cfg.model).g_cr;
    if (g_cr > 0.0) out.checks.push_back(check_gt("cumulative_emission", emitted, 0.0));
    else out.checks.push_back(check_le("cumulative_emission", emitted, kDarkTol));

    const double energy_start = expect(h, res.states.front()).real();
    const double energy_end = expect(h, res.states.back()).real();
    Table summary{{"g_cr", "cumulative_emission", "energy_start", "energy_end", "final_total_rate"}, {}};
    summary.columns.insert(summary.columns.end(), kSteadyColumns.begin(), kSteadyColumns.end());
    std::vector<double> values{g_cr, emitted, energy_start, energy_end, reports.back().total};
    const auto sv = steady_values(row);
    values.insert(values.end(), sv.begin(), sv.end());
    summary.rows.push_back(std::move(values));
    out.tables.emplace_back("timeseries.csv", std::move(series));
    out.tables.emplace_back("summary.csv", std::move(summary));
    return out;
}

Outputs run_trajectories(const ScenarioConfig& cfg, std::uint64_t seed, unsigned threads) {
    Outputs out;
    const SpaceSpec space = cfg.space();
    const LinOp h = hamiltonian(cfg.model);
    const auto channels = channels_for(cfg.model, cfg.dissipation);
    const std::vector<double> times = cfg.sample_times();
    const Ket psi0 = basis_ket(space, 0, 0);

    TrajectorySetup setup;
    setup.t_final = cfg.t_final;
    setup.dt = cfg.trajectories->dt;
    setup.observables = {excited_projector(space), number_operator(space)};
    // snap the sample grid onto the step lattice
    for (double t : times) setup.sample_times.push_back(std::round(t / setup.dt) * setup.dt);
    const auto ens = ensemble_mean(h, channels, psi0, setup, cfg.trajectories->count, seed, threads);

    const auto res = evolve(h, channels, projector(psi0), cfg.t_final, evolve_options(cfg, times));
    Table series = time_series(res, space, channels);
    hygiene_checks("", series, res, out.checks);
    steady_checks("", steady_row(cfg.model, cfg.dissipation), out.checks);

    Table traj{{"time", "excited_mean", "excited_se", "phonon_mean", "phonon_se", "excited_master", "phonon_master",
                "mean_jumps"},
               {}};
    std::vector<double> jumps(ens.jump_counts.begin(), ens.jump_counts.end());
    const double mean_jumps = mean_and_standard_error(jumps).first;
    for (std::size_t i = 0; i < times.size(); ++i) {
        traj.rows.push_back({times[i], ens.mean[0][i], ens.standard_error[0][i], ens.mean[1][i],
                             ens.standard_error[1][i], series.rows[i][1], series.rows[i][2], mean_jumps});
    }
    // a handful of checkpoints keeps the 3-sigma false-alarm rate small
    const std::size_t last = times.size() - 1;
    for (std::size_t idx : {last / 4, last / 2, last}) {
        if (idx == 0) continue;
        for (int obs = 0; obs < 2; ++obs) {
            const double diff = std::abs(ens.mean[obs][idx] - series.rows[idx][1 + obs]);
            const double bound = 3.0 * ens.standard_error[obs][idx] + 1e-12;
            out.checks.push_back(check_le(std::string(obs ? "phonon" : "excited") + "_agreement@t=" +
                                              format_number(times[idx]),
                                          diff, bound, "|ensemble - master| <= 3 SE"));
        }
    }
    out.tables.emplace_back("timeseries.csv", std::move(series));
    out.tables.emplace_back("trajectories.csv", std::move(traj));
    return out;
}

Json checks_json(const std::vector<CheckResult>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["value"] = c.value;
        j["threshold"] = c.threshold;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

std::string format_number(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string manifest_digest(const nlohmann::ordered_json& config_echo, std::uint64_t seed) {
    Json payload;
    payload["config"] = config_echo;
    payload["seed"] = seed;
    payload["version"] = std::string(kVersion);
    payload["rng"] = std::string(kRngId);
    const std::string text = payload.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

void write_manifest(const fs::path& dir, const nlohmann::ordered_json& manifest) {
    fs::create_directories(dir);
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << '\n';
}

nlohmann::ordered_json config_error_manifest(const std::string& config_path, const ConfigError& error) {
    Json m;
    m["artifact"] = "crheat";
    m["version"] = std::string(kVersion);
    m["rng"] = std::string(kRngId);
    m["config_path"] = config_path;
    m["status"] = "config-error";
    m["exit_code"] = kExitConfigError;
    m["error"] = error.what();
    m["error_field"] = error.field();
    m["checks"] = Json::array();
    m["wall_clock_seconds"] = 0.0;
    return m;
}

RunOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    RunOutcome outcome;
    outcome.out_dir = options.out_dir ? *options.out_dir : fs::path(cfg.output);
    const std::uint64_t seed = options.seed ? *options.seed : cfg.seed;
    const std::string digest = manifest_digest(cfg.echo, seed);
    const std::vector<std::string> header{
        "crheat " + std::string(kVersion),
        "scenario: " + std::string(scenario_name(cfg.scenario)),
        "manifest_digest: " + digest,
        "rng: " + std::string(kRngId),
        "seed: " + std::to_string(seed),
    };

    std::string status = "ok";
    try {
        fs::create_directories(outcome.out_dir);
        Outputs out;
        switch (cfg.scenario) {
            case ScenarioKind::dark_state: out = run_dark_state(cfg); break;
            case ScenarioKind::vacuum_emission: out = run_vacuum_emission(cfg); break;
            case ScenarioKind::sideband: out = run_sideband(cfg); break;
            case ScenarioKind::quench: out = run_quench(cfg); break;
            case ScenarioKind::trajectories: out = run_trajectories(cfg, seed, options.threads); break;
        }
        for (const auto& [name, table] : out.tables) {
            write_csv(outcome.out_dir / name, header, table);
            outcome.files.push_back(outcome.out_dir / name);
        }
        outcome.checks = std::move(out.checks);
    } catch (const NumericalFailure& e) {
        outcome.exit_code = kExitNumericalFailure;
        outcome.error = e.what();
        status = "numerical-failure";
    } catch (const InvalidParameter& e) {
        outcome.exit_code = kExitConfigError;
        outcome.error = e.what();
        status = "config-error";
    } catch (const std::exception& e) {
        outcome.exit_code = 1;
        outcome.error = e.what();
        status = "error";
    }

    const bool all_passed =
        std::all_of(outcome.checks.begin(), outcome.checks.end(), [](const auto& c) { return c.passed; });
    Json m;
    m["artifact"] = "crheat";
    m["version"] = std::string(kVersion);
    m["rng"] = std::string(kRngId);
    m["scenario"] = std::string(scenario_name(cfg.scenario));
    m["config"] = cfg.echo;
    m["seed"] = seed;
    m["threads"] = options.threads;
    m["manifest_digest"] = digest;
    m["status"] = status;
    m["exit_code"] = outcome.exit_code;
    if (!outcome.error.empty()) m["error"] = outcome.error;
    Json files = Json::array();
    for (const auto& f : outcome.files) files.push_back(f.filename().string());
    m["files"] = files;
    m["checks"] = checks_json(outcome.checks);
    m["all_checks_passed"] = all_passed && outcome.exit_code == kExitOk;
    m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.manifest = m;
    try {
        write_manifest(outcome.out_dir, m);
    } catch (const std::exception& e) {
        if (outcome.exit_code == kExitOk) {
            outcome.exit_code = 1;
            outcome.error = e.what();
        }
    }
    return outcome;
}

}  // namespace crheat
