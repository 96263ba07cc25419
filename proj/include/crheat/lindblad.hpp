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

// Lindblad master-equation dynamics:
//   drho/dt = -i[H, rho] + sum_k g_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho})
//
// Vectorization is column-stacking everywhere: vec(A rho B) = (B^T x A) vec(rho).

#include <vector>

#include "crheat/hilbert.hpp"
#include "crheat/models.hpp"

namespace crheat {

/// Precomputed generator; applies the right-hand side to dense matrices.
class LindbladGenerator {
public:
    LindbladGenerator(const LinOp& h, const std::vector<JumpChannel>& channels);

    Index dim() const noexcept { return dim_; }
    DensityOp operator()(const DensityOp& rho) const;

private:
    Index dim_;
    LinOp h_eff_;                ///< H - (i/2) sum_k g_k L_k^dag L_k
    LinOp h_eff_dag_;
    std::vector<LinOp> jumps_;   ///< sqrt(g_k) L_k, zero-rate channels dropped
    std::vector<LinOp> jumps_dag_;
};

DensityOp lindblad_rhs(const LinOp& h, const std::vector<JumpChannel>& channels, const DensityOp& rho);

struct LiouvillianMatrix {
    Index dim = 0;  ///< d^2
    LinOp matrix;
};

LiouvillianMatrix build_liouvillian(const LinOp& h, const std::vector<JumpChannel>& channels);

Eigen::VectorXcd vec(const DensityOp& rho);
DensityOp unvec(const Eigen::VectorXcd& v, Index dim);

struct EvolveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    /// Zero selects 1e-3 / ||H||.
    double initial_step = 0.0;
    /// Times at which to store the state; empty stores {0, t_final}.
    std::vector<double> sample_times;
    long max_steps = 50'000'000;
    /// Throw InvariantViolation when a stored state breaks the tolerances below.
    bool enforce_invariants = true;
    double trace_tol = 1e-8;
    double hermiticity_tol = 1e-10;
    double positivity_tol = 1e-8;
};

struct StepStatistics {
    long accepted = 0;
    long rejected = 0;
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<DensityOp> states;
    StepStatistics steps;
    double max_trace_drift = 0.0;
    double max_hermiticity_defect = 0.0;
    double min_eigenvalue = 1.0;
};

/// Adaptive Dormand-Prince 5(4) integration from rho0 to t_final.
EvolutionResult evolve(const LinOp& h, const std::vector<JumpChannel>& channels, const DensityOp& rho0,
                       double t_final, const EvolveOptions& options = {});

struct SteadyStateOptions {
    double residual_tol = 1e-8;
    /// Reciprocal condition estimates below this mark the bordered system singular.
    double singular_rcond = 1e-12;
};

/// Unique fixed point of the Liouvillian. The last row of M (the equation for
/// the (d-1, d-1) element, redundant by trace preservation) is replaced with
/// the trace functional and the bordered system M' vec(rho) = e_last is solved.
DensityOp steady_state(const LinOp& h, const std::vector<JumpChannel>& channels,
                       const SteadyStateOptions& options = {});

}  // namespace crheat
