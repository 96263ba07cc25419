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

// Physical readouts shared by the master-equation and trajectory backends.

#include <vector>

#include "crheat/hilbert.hpp"
#include "crheat/models.hpp"

namespace crheat {

struct EmissionReport {
    std::vector<double> rates;  ///< g_k <L_k^dag L_k>, one per channel
    double total = 0.0;
    bool clamped = false;  ///< a tiny negative rate (>= -1e-10) was set to zero
};

/// rate_k = g_k * <L_k^dag L_k>. Throws InvariantViolation on a rate below -1e-10.
EmissionReport emission_rates(const DensityOp& rho, const std::vector<JumpChannel>& channels);
EmissionReport emission_rates(const Ket& psi, const std::vector<JumpChannel>& channels);

/// Trapezoid integral of the total rate: the mean number of emitted quanta.
double cumulative_emission(const std::vector<double>& times, const std::vector<EmissionReport>& reports);

double mean_phonon(const DensityOp& rho, const SpaceSpec& space);
double mean_phonon(const Ket& psi, const SpaceSpec& space);
double excited_population(const DensityOp& rho, const SpaceSpec& space);
double excited_population(const Ket& psi, const SpaceSpec& space);

/// Energy flow into the system from the reservoirs, sum_k g_k Re tr(rho L_k^dag [H, L_k]).
/// Equals d/dt tr(rho H) under the Lindblad generator.
double dissipative_power(const DensityOp& rho, const LinOp& h, const std::vector<JumpChannel>& channels);

}  // namespace crheat
