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

// Composite Hamiltonians H = H_A + H_B + H_int for a two-level system A and a
// bosonic mode B, plus the two bare-basis decay channels. Units: hbar = 1,
// angular frequencies.

#include <vector>

#include "crheat/hilbert.hpp"

namespace crheat {

/// Two-level system coupled to a single mode. Covers the atom-cavity system
/// (A = atom, B = cavity mode) and the bare quantum Rabi model.
struct RabiParams {
    double omega_a = 1.0;
    double omega_b = 1.0;
    double g_rot = 0.0;  ///< excitation-conserving coupling
    double g_cr = 0.0;   ///< counter-rotating coupling
    Index fock_cutoff = 2;

    void validate() const;
    SpaceSpec space() const { return SpaceSpec(fock_cutoff); }
};

/// Laser-driven trapped ion in the laser frame, first order in the Lamb-Dicke
/// parameter.
struct SidebandParams {
    double delta = 0.0;       ///< laser detuning; negative is red-detuned
    double nu = 1.0;          ///< trap frequency
    double omega_rabi = 0.0;  ///< carrier Rabi frequency
    double eta = 0.0;         ///< Lamb-Dicke parameter
    bool include_cr = true;
    Index fock_cutoff = 2;

    void validate() const;
    SpaceSpec space() const { return SpaceSpec(fock_cutoff); }
};

struct DissipationSpec {
    double gamma_a = 0.0;  ///< decay of A through sigma_minus
    double kappa_b = 0.0;  ///< decay of B through b

    void validate() const;
    /// Additionally requires a positive rate, as a steady-state solve needs.
    void validate_for_steady_state() const;
};

struct JumpChannel {
    LinOp op;
    double rate = 0.0;
};

/// H = wA s+s- + wB b^dag b + g_rot (s+ b + s- b^dag) + g_cr (s+ b^dag + s- b)
LinOp build_rabi(const RabiParams& p);

/// H = -delta s+s- + nu b^dag b + (Omega/2)(s+ + s-)
///     + (eta Omega/2)(s+ b + s- b^dag) [+ (eta Omega/2)(s+ b^dag + s- b)]
LinOp build_sideband(const SidebandParams& p);

/// The counter-rotating part s+ b^dag + s- b, without prefactor.
LinOp counter_rotating_term(const SpaceSpec& space);

/// The excitation-conserving part s+ b + s- b^dag, without prefactor.
LinOp rotating_term(const SpaceSpec& space);

/// Always two channels, in order: (s- x I, gamma_a), (I x b, kappa_b).
std::vector<JumpChannel> jump_channels(const DissipationSpec& spec, const SpaceSpec& space);

/// s+s- x I
LinOp excited_projector(const SpaceSpec& space);

/// I x b^dag b
LinOp number_operator(const SpaceSpec& space);

}  // namespace crheat
