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

// Quantum-jump (Monte-Carlo wavefunction) unraveling of the Lindblad dynamics.
//
// Each fixed step draws one uniform number u. With dp_k = dt g_k ||L_k psi||^2,
// u < sum_k dp_k selects a jump through the channel whose cumulative interval
// contains u; otherwise the state follows the no-jump evolution generated by
// H_eff = H - (i/2) sum_k g_k L_k^dag L_k and is renormalized.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "crheat/hilbert.hpp"
#include "crheat/models.hpp"

namespace crheat {

struct JumpEvent {
    double time = 0.0;
    int channel = 0;
    friend bool operator==(const JumpEvent&, const JumpEvent&) = default;
};

/// How the conditional (no-jump) state is advanced over one step.
enum class NoJumpScheme {
    first_order,  ///< psi -> (1 - i dt H_eff) psi
    exact,        ///< psi -> exp(-i dt H_eff) psi, propagator precomputed once
};

inline constexpr double kMaxJumpProbability = 0.1;

struct StepOutcome {
    Ket psi;
    std::optional<int> channel;  ///< set when a jump occurred
};

class McwfStepper {
public:
    McwfStepper(const LinOp& h, const std::vector<JumpChannel>& channels, double dt,
                NoJumpScheme scheme = NoJumpScheme::first_order);

    /// Throws StepTooLarge when sum_k dp_k >= 0.1.
    StepOutcome step(const Ket& psi, double draw) const;

    double dt() const noexcept { return dt_; }
    Index dim() const noexcept { return dim_; }
    std::size_t channel_count() const noexcept { return jumps_.size(); }

private:
    Index dim_;
    double dt_;
    NoJumpScheme scheme_;
    LinOp h_eff_;
    Eigen::MatrixXcd propagator_;
    std::vector<LinOp> jumps_;  ///< zero-rate channels kept so indices match the input list
    std::vector<double> rates_;
};

/// One step with the first-order no-jump update.
StepOutcome mcwf_step(const Ket& psi, const LinOp& h, const std::vector<JumpChannel>& channels, double dt,
                      double draw);

/// Deterministic uniform stream in [0, 1): mt19937_64 with 53-bit mantissa extraction.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed);
    double next();

private:
    std::mt19937_64 engine_;
};

inline constexpr std::string_view kRngId = "mt19937_64+splitmix64(seed^golden*(index+1))";

std::uint64_t splitmix64(std::uint64_t x);

/// Stateless per-trajectory seed.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

struct TrajectorySetup {
    double t_final = 1.0;
    double dt = 1e-2;
    /// Must be multiples of dt within 1e-9 relative; empty samples {0, t_final}.
    std::vector<double> sample_times;
    std::vector<LinOp> observables;
    NoJumpScheme scheme = NoJumpScheme::first_order;
};

struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<double> sample_times;
    std::vector<std::vector<double>> values;  ///< [observable][sample], <psi|O|psi>
    std::vector<JumpEvent> jumps;
};

TrajectoryRecord run_trajectory(const LinOp& h, const std::vector<JumpChannel>& channels, const Ket& psi0,
                                const TrajectorySetup& setup, std::uint64_t seed);

/// Reuses a prebuilt stepper; `setup.dt` must equal `stepper.dt()`.
TrajectoryRecord run_trajectory(const McwfStepper& stepper, const Ket& psi0, const TrajectorySetup& setup,
                                std::uint64_t seed);

struct EnsembleResult {
    Index trajectories = 0;
    std::vector<double> sample_times;
    std::vector<std::vector<double>> mean;            ///< [observable][sample]
    std::vector<std::vector<double>> standard_error;  ///< sample std / sqrt(M)
    std::vector<std::size_t> jump_counts;              ///< per trajectory, index order
    std::vector<double> first_jump_times;              ///< per trajectory; NaN when none
};

/// M independent trajectories seeded by trajectory_seed(master_seed, i),
/// executed on `threads` workers and reduced in index order.
EnsembleResult ensemble_mean(const LinOp& h, const std::vector<JumpChannel>& channels, const Ket& psi0,
                             const TrajectorySetup& setup, Index trajectories, std::uint64_t master_seed,
                             unsigned threads = 1);

/// Mean and standard error of a sample, in order; requires at least two values.
std::pair<double, double> mean_and_standard_error(const std::vector<double>& samples);

}  // namespace crheat
