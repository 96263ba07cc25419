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

#include "crheat/hilbert.hpp"

#include <cmath>
#include <string>

namespace crheat {

SpaceSpec::SpaceSpec(Index fock_cutoff) : fock_cutoff_(fock_cutoff) {
    if (fock_cutoff < 2)
        throw InvalidDimension("fock cutoff must be at least 2, got " + std::to_string(fock_cutoff));
}

LinOp from_entries(Index dim, const std::vector<Entry<Complex>>& triplets) {
    if (dim <= 0) throw InvalidDimension("operator dimension must be positive");
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(triplets.size());
    for (const auto& e : triplets) {
        if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim)
            throw InvalidDimension("entry coordinate outside [0, dim)");
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
            throw Error("non-finite operator entry");
        trip.emplace_back(e.row, e.col, e.value);
    }
    LinOp op(dim, dim);
    bool duplicate = false;
    op.setFromTriplets(trip.begin(), trip.end(), [&duplicate](const Complex& a, const Complex&) {
        duplicate = true;
        return a;
    });
    if (duplicate) throw Error("duplicate (row, col) coordinate in operator entries");
    return canonical(std::move(op));
}

LinOp destroy(Index fock_cutoff) {
    if (fock_cutoff < 2)
        throw InvalidDimension("destroy: N must be at least 2, got " + std::to_string(fock_cutoff));
    LinOp b(fock_cutoff, fock_cutoff);
    b.reserve(Eigen::VectorXi::Constant(fock_cutoff, 1));
    for (Index n = 0; n + 1 < fock_cutoff; ++n)
        b.insert(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    return canonical(std::move(b));
}

LinOp sigma_minus() {
    LinOp s(2, 2);
    s.insert(0, 1) = 1.0;
    return canonical(std::move(s));
}

LinOp compose(const LinOp& a, const LinOp& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("compose: inner dimensions differ");
    return canonical(LinOp(a * b));
}

LinOp embed(const LinOp& op, Subsystem where, const SpaceSpec& space) {
    if (where == Subsystem::A) {
        if (op.rows() != 2 || op.cols() != 2) throw DimensionMismatch("embed: qubit operator must be 2x2");
        return kron(op, identity(space.fock_cutoff()));
    }
    if (op.rows() != space.fock_cutoff() || op.cols() != space.fock_cutoff())
        throw DimensionMismatch("embed: mode operator must match the Fock cutoff");
    return kron(identity(2), op);
}

Complex expect(const LinOp& op, const Ket& psi) {
    if (op.rows() != psi.size() || op.cols() != psi.size())
        throw DimensionMismatch("expect: operator and state dimensions differ");
    return psi.dot(op * psi);
}

Complex expect(const LinOp& op, const DensityOp& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols() || rho.rows() != rho.cols())
        throw DimensionMismatch("expect: operator and density dimensions differ");
    Complex acc = 0.0;
    for (Index k = 0; k < op.outerSize(); ++k)
        for (LinOp::InnerIterator it(op, k); it; ++it) acc += it.value() * rho(it.col(), it.row());
    return acc;
}

DensityOp projector(const Ket& psi) { return psi * psi.adjoint(); }

DensityOp partial_trace(const DensityOp& rho, Subsystem keep, const SpaceSpec& space) {
    const Index d = space.total_dim();
    const Index n_levels = space.fock_cutoff();
    if (rho.rows() != d || rho.cols() != d)
        throw DimensionMismatch("partial_trace: density dimension does not match the space");
    if (keep == Subsystem::A) {
        DensityOp out = DensityOp::Zero(2, 2);
        for (Index q = 0; q < 2; ++q)
            for (Index qp = 0; qp < 2; ++qp)
                out(q, qp) = rho.block(q * n_levels, qp * n_levels, n_levels, n_levels).trace();
        return out;
    }
    return rho.topLeftCorner(n_levels, n_levels) + rho.bottomRightCorner(n_levels, n_levels);
}

Ket normalize(const Ket& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw DegenerateState("normalize: zero-norm state");
    return psi / norm;
}

Ket basis_ket(const SpaceSpec& space, Index qubit_level, Index fock_level) {
    if (qubit_level < 0 || qubit_level > 1 || fock_level < 0 || fock_level >= space.fock_cutoff())
        throw InvalidDimension("basis_ket: level outside the truncated space");
    Ket psi = Ket::Zero(space.total_dim());
    psi(space.index(qubit_level, fock_level)) = 1.0;
    return psi;
}

DensityDefects density_defects(const DensityOp& rho) {
    if (rho.rows() != rho.cols()) throw DimensionMismatch("density matrix must be square");
    DensityDefects out{};
    out.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    out.trace_error = std::abs(rho.trace() - Complex(1.0));
    const DensityOp herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DensityOp> es(herm, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    return out;
}

bool is_valid_density(const DensityOp& rho, double herm_tol, double trace_tol, double eig_tol) {
    const auto d = density_defects(rho);
    return d.hermiticity <= herm_tol && d.trace_error <= trace_tol && d.min_eigenvalue >= -eig_tol;
}

double op_norm_inf(const LinOp& op) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(op.rows());
    for (Index k = 0; k < op.outerSize(); ++k)
        for (LinOp::InnerIterator it(op, k); it; ++it) row_sums(it.row()) += std::abs(it.value());
    return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

double trace_distance(const DensityOp& a, const DensityOp& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("trace_distance: dimensions differ");
    const DensityOp diff = 0.5 * ((a - b) + (a - b).adjoint());
    Eigen::SelfAdjointEigenSolver<DensityOp> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace crheat
