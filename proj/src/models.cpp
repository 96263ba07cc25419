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

#include "crheat/models.hpp"

#include <cmath>

namespace crheat {
namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw InvalidParameter(field, what);
}

bool finite(double x) { return std::isfinite(x); }

LinOp sigma_plus_full(const SpaceSpec& space) { return embed(dag(sigma_minus()), Subsystem::A, space); }

LinOp sigma_minus_full(const SpaceSpec& space) { return embed(sigma_minus(), Subsystem::A, space); }

}  // namespace

void RabiParams::validate() const {
    require(finite(omega_a) && omega_a > 0.0, "omega_a", "must be positive");
    require(finite(omega_b) && omega_b > 0.0, "omega_b", "must be positive");
    require(finite(g_rot) && g_rot >= 0.0, "g_rot", "must be nonnegative");
    require(finite(g_cr) && g_cr >= 0.0, "g_cr", "must be nonnegative");
    require(fock_cutoff >= 2, "fock_cutoff", "must be at least 2");
}

void SidebandParams::validate() const {
    require(finite(delta), "delta", "must be finite");
    require(finite(nu) && nu > 0.0, "nu", "must be positive");
    require(finite(omega_rabi) && omega_rabi >= 0.0, "omega_rabi", "must be nonnegative");
    require(finite(eta) && eta >= 0.0 && eta < 1.0, "eta", "must lie in [0, 1)");
    require(fock_cutoff >= 2, "fock_cutoff", "must be at least 2");
}

void DissipationSpec::validate() const {
    require(finite(gamma_a) && gamma_a >= 0.0, "gamma_a", "must be nonnegative");
    require(finite(kappa_b) && kappa_b >= 0.0, "kappa_b", "must be nonnegative");
}

void DissipationSpec::validate_for_steady_state() const {
    validate();
    require(gamma_a > 0.0 || kappa_b > 0.0, "gamma_a", "gamma_a and kappa_b cannot both be zero");
}

LinOp excited_projector(const SpaceSpec& space) {
    return embed(compose(dag(sigma_minus()), sigma_minus()), Subsystem::A, space);
}

LinOp number_operator(const SpaceSpec& space) {
    const LinOp b = destroy(space.fock_cutoff());
    return embed(compose(dag(b), b), Subsystem::B, space);
}

// Each coupling is assembled as T + T^dag so the result is Hermitian entry by entry.
LinOp rotating_term(const SpaceSpec& space) {
    const LinOp t = kron(dag(sigma_minus()), destroy(space.fock_cutoff()));
    return canonical(LinOp(t + dag(t)));
}

LinOp counter_rotating_term(const SpaceSpec& space) {
    const LinOp t = kron(dag(sigma_minus()), dag(destroy(space.fock_cutoff())));
    return canonical(LinOp(t + dag(t)));
}

LinOp build_rabi(const RabiParams& p) {
    p.validate();
    const SpaceSpec space = p.space();
    LinOp h = p.omega_a * excited_projector(space) + p.omega_b * number_operator(space);
    if (p.g_rot != 0.0) h += p.g_rot * rotating_term(space);
    if (p.g_cr != 0.0) h += p.g_cr * counter_rotating_term(space);
    return canonical(std::move(h));
}

LinOp build_sideband(const SidebandParams& p) {
    p.validate();
    const SpaceSpec space = p.space();
    const double half_rabi = 0.5 * p.omega_rabi;
    const double sideband = 0.5 * p.eta * p.omega_rabi;
    LinOp h = -p.delta * excited_projector(space) + p.nu * number_operator(space);
    if (half_rabi != 0.0) h += half_rabi * LinOp(sigma_plus_full(space) + sigma_minus_full(space));
    if (sideband != 0.0) {
        h += sideband * rotating_term(space);
        if (p.include_cr) h += sideband * counter_rotating_term(space);
    }
    return canonical(std::move(h));
}

std::vector<JumpChannel> jump_channels(const DissipationSpec& spec, const SpaceSpec& space) {
    spec.validate();
    return {
        JumpChannel{sigma_minus_full(space), spec.gamma_a},
        JumpChannel{embed(destroy(space.fock_cutoff()), Subsystem::B, space), spec.kappa_b},
    };
}

}  // namespace crheat
