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

#include "crheat/spectra.hpp"

#include <cmath>

namespace crheat {

Ket fix_phase(const Ket& psi) {
    for (Index i = 0; i < psi.size(); ++i) {
        if (std::abs(psi(i)) > 1e-10) {
            const Complex phase = std::conj(psi(i)) / std::abs(psi(i));
            Ket out = psi * phase;
            out(i) = std::abs(psi(i));
            return out;
        }
    }
    return psi;
}

EigenPair ground_state(const LinOp& h) {
    if (h.rows() != h.cols()) throw DimensionMismatch("ground_state: operator is not square");
    const DensityOp dense(h);
    const double scale = std::max(1.0, op_norm_inf(h));
    if ((dense - dense.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw NonHermitian("ground_state: operator is not Hermitian");

    Eigen::SelfAdjointEigenSolver<DensityOp> es(0.5 * (dense + dense.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalFailure("ground_state: eigensolver failed");
    const auto& values = es.eigenvalues();
    const auto& vectors = es.eigenvectors();

    EigenPair out;
    out.energy = values(0);
    Index multiplicity = 1;
    while (multiplicity < values.size() && values(multiplicity) - values(0) <= kDegeneracyTol) ++multiplicity;

    if (multiplicity == 1) {
        out.state = fix_phase(vectors.col(0).normalized());
        return out;
    }

    out.degenerate = true;
    const auto basis = vectors.leftCols(multiplicity);
    for (Index i = 0; i < dense.rows(); ++i) {
        // projection of e_i onto the ground eigenspace
        Ket proj = basis * basis.row(i).adjoint();
        if (proj.norm() > 1e-8) {
            out.state = fix_phase(proj.normalized());
            return out;
        }
    }
    throw NumericalFailure("ground_state: empty ground eigenspace");
}

Ket product_ground(const ModelParams& params) {
    return std::visit(
        [](const auto& p) -> Ket {
            p.validate();
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SidebandParams>) {
                if (p.delta > 0.0)
                    throw InvalidParameter("delta", "bare qubit ground state is |0> only for delta <= 0");
            }
            return basis_ket(p.space(), 0, 0);
        },
        params);
}

double decorrelation_energy(const LinOp& h, const Ket& psi_prod, const EigenPair& ground) {
    if (psi_prod.size() != h.rows() || ground.state.size() != h.rows())
        throw DimensionMismatch("decorrelation_energy: inputs live on different spaces");
    const double delta = expect(h, psi_prod).real() - ground.energy;
    if (delta < -1e-10)
        throw InvariantViolation("decorrelation_energy: product state lies below the supplied ground energy");
    return std::max(delta, 0.0);
}

double von_neumann_entropy(const DensityOp& rho) {
    Eigen::SelfAdjointEigenSolver<DensityOp> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-14) s -= p * std::log(p);
    }
    return std::max(s, 0.0);
}

double entanglement_entropy(const Ket& psi, const SpaceSpec& space) {
    if (psi.size() != space.total_dim()) throw DimensionMismatch("entanglement_entropy: state dimension");
    if (std::abs(psi.norm() - 1.0) > 1e-10) throw DegenerateState("entanglement_entropy: state is not normalized");
    return von_neumann_entropy(partial_trace(projector(psi), Subsystem::A, space));
}

}  // namespace crheat
