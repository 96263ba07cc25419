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

// Exact diagonalization of the composite Hamiltonian and ground-state
// entanglement / decorrelation-energy readouts.

#include <variant>

#include "crheat/hilbert.hpp"
#include "crheat/models.hpp"

namespace crheat {

struct EigenPair {
    double energy = 0.0;
    Ket state;
    bool degenerate = false;  ///< lowest level degenerate within 1e-10
};

inline constexpr double kDegeneracyTol = 1e-10;

/// Rotates `psi` so its first amplitude with magnitude > 1e-10 is real positive.
Ket fix_phase(const Ket& psi);

/// Lowest eigenpair of a Hermitian operator (dense solve).
///
/// For a degenerate lowest level the returned vector is the normalized
/// projection of the lowest-index basis vector with nonzero overlap onto the
/// ground eigenspace, and `degenerate` is set. Throws NonHermitian if
/// max|H - H^dag| exceeds 1e-12 * max(1, ||H||).
EigenPair ground_state(const LinOp& h);

using ModelParams = std::variant<RabiParams, SidebandParams>;

/// Product of bare subsystem ground states, |0>_A x |0>_B.
Ket product_ground(const ModelParams& params);

/// <psi_prod|H|psi_prod> - E0. Values in [-1e-10, 0) clamp to zero; anything
/// lower means the supplied ground state is not the ground state of `h`.
double decorrelation_energy(const LinOp& h, const Ket& psi_prod, const EigenPair& ground);

/// Von Neumann entropy (natural log) of the reduced state of subsystem A.
double entanglement_entropy(const Ket& psi, const SpaceSpec& space);

/// Entropy of a density matrix; eigenvalues below 1e-14 count as zero.
double von_neumann_entropy(const DensityOp& rho);

}  // namespace crheat
