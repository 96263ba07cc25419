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

#include <random>

#include "crheat/hilbert.hpp"

namespace crheat::testing {

inline DensityOp random_density(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    DensityOp rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline DensityOp random_hermitian(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

inline Ket random_ket(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Ket psi(dim);
    for (Index i = 0; i < dim; ++i) psi(i) = Complex(g(rng), g(rng));
    return psi.normalized();
}

inline LinOp random_sparse(Index dim, std::mt19937_64& rng, double fill = 0.4) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g;
    LinOp op(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j)
            if (u(rng) < fill) op.insert(i, j) = Complex(g(rng), g(rng));
    return canonical(std::move(op));
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double max_abs_diff(const LinOp& a, const LinOp& b) {
    return max_abs(Eigen::MatrixXcd(a) - Eigen::MatrixXcd(b));
}

}  // namespace crheat::testing
