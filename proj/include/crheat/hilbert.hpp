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

// Operator algebra on the composite space (qubit) x (truncated Fock mode).
//
// Basis ordering is qubit-major: index = q * N + n for qubit level q in {0, 1}
// and Fock level n in [0, N). Operators are stored sparse (compressed, sorted
// within each column); states and density matrices are dense.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <complex>
#include <vector>

#include "crheat/error.hpp"

namespace crheat {

using Complex = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using SparseOp = Eigen::SparseMatrix<Scalar>;

using LinOp = SparseOp<Complex>;
using Ket = Eigen::VectorXcd;
using DensityOp = Eigen::MatrixXcd;

enum class Subsystem { A, B };

/// One qubit tensored with an N-level truncated bosonic mode.
class SpaceSpec {
public:
    explicit SpaceSpec(Index fock_cutoff);

    Index fock_cutoff() const noexcept { return fock_cutoff_; }
    static constexpr Index qubit_dim() noexcept { return 2; }
    Index total_dim() const noexcept { return 2 * fock_cutoff_; }
    Index index(Index qubit_level, Index fock_level) const noexcept {
        return qubit_level * fock_cutoff_ + fock_level;
    }

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

private:
    Index fock_cutoff_;
};

template <typename Scalar>
struct Entry {
    Index row;
    Index col;
    Scalar value;
    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Drops explicit zeros and compresses, so equal operators have equal storage.
template <typename Scalar>
SparseOp<Scalar> canonical(SparseOp<Scalar> op) {
    op.prune(Scalar(0));
    op.makeCompressed();
    return op;
}

/// Nonzero entries sorted by (row, col).
template <typename Scalar>
std::vector<Entry<Scalar>> entries(const SparseOp<Scalar>& op) {
    std::vector<Entry<Scalar>> out;
    out.reserve(static_cast<std::size_t>(op.nonZeros()));
    for (Index k = 0; k < op.outerSize(); ++k)
        for (typename SparseOp<Scalar>::InnerIterator it(op, k); it; ++it)
            if (it.value() != Scalar(0)) out.push_back({it.row(), it.col(), it.value()});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
}

/// Builds a square operator from explicit triplets. Rejects duplicates,
/// out-of-range coordinates and non-finite values.
LinOp from_entries(Index dim, const std::vector<Entry<Complex>>& triplets);

template <typename Scalar>
SparseOp<Scalar> kron(const SparseOp<Scalar>& a, const SparseOp<Scalar>& b) {
    SparseOp<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<Scalar>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (Index ka = 0; ka < a.outerSize(); ++ka)
        for (typename SparseOp<Scalar>::InnerIterator ia(a, ka); ia; ++ia)
            for (Index kb = 0; kb < b.outerSize(); ++kb)
                for (typename SparseOp<Scalar>::InnerIterator ib(b, kb); ib; ++ib)
                    trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
    out.setFromTriplets(trip.begin(), trip.end());
    return canonical(std::move(out));
}

template <typename Scalar>
SparseOp<Scalar> dag(const SparseOp<Scalar>& a) {
    return canonical(SparseOp<Scalar>(a.adjoint()));
}

template <typename Scalar>
SparseOp<Scalar> identity(Index dim) {
    SparseOp<Scalar> id(dim, dim);
    id.setIdentity();
    return id;
}

inline LinOp identity(Index dim) { return identity<Complex>(dim); }

/// Bosonic lowering operator on N Fock levels: b[n, n+1] = sqrt(n + 1).
LinOp destroy(Index fock_cutoff);

/// Qubit lowering operator |0><1|.
LinOp sigma_minus();

/// Product of two operators, returned in canonical form.
LinOp compose(const LinOp& a, const LinOp& b);

/// Embeds a subsystem operator into the composite space.
LinOp embed(const LinOp& op, Subsystem where, const SpaceSpec& space);

Complex expect(const LinOp& op, const Ket& psi);
Complex expect(const LinOp& op, const DensityOp& rho);

DensityOp projector(const Ket& psi);

DensityOp partial_trace(const DensityOp& rho, Subsystem keep, const SpaceSpec& space);

Ket normalize(const Ket& psi);

/// |q, n> in the composite basis.
Ket basis_ket(const SpaceSpec& space, Index qubit_level, Index fock_level);

/// Distances of a matrix from the density-operator constraint set.
struct DensityDefects {
    double hermiticity;     ///< max |rho - rho^dag| entry
    double trace_error;     ///< |tr(rho) - 1|
    double min_eigenvalue;  ///< of the Hermitian part
};

DensityDefects density_defects(const DensityOp& rho);

bool is_valid_density(const DensityOp& rho, double herm_tol = 1e-10, double trace_tol = 1e-10,
                      double eig_tol = 1e-9);

/// Max absolute row sum.
double op_norm_inf(const LinOp& op);

/// Trace distance 0.5 * || a - b ||_1 between Hermitian matrices.
double trace_distance(const DensityOp& a, const DensityOp& b);

}  // namespace crheat
