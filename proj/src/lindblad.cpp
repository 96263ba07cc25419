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

#include "crheat/lindblad.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace crheat {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_channels(Index dim, const std::vector<JumpChannel>& channels) {
    for (const auto& c : channels) {
        if (c.op.rows() != dim || c.op.cols() != dim)
            throw DimensionMismatch("jump operator dimension does not match the Hamiltonian");
        if (!(c.rate >= 0.0)) throw InvalidParameter("rate", "jump rates must be nonnegative");
    }
}

}  // namespace

LindbladGenerator::LindbladGenerator(const LinOp& h, const std::vector<JumpChannel>& channels)
    : dim_(h.rows()) {
    if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian is not square");
    check_channels(dim_, channels);
    LinOp decay(dim_, dim_);
    for (const auto& c : channels) {
        if (c.rate == 0.0) continue;
        const LinOp scaled = std::sqrt(c.rate) * c.op;
        jumps_.push_back(scaled);
        jumps_dag_.push_back(dag(scaled));
        decay += jumps_dag_.back() * scaled;
    }
    h_eff_ = canonical(LinOp(h - 0.5 * kI * decay));
    h_eff_dag_ = dag(h_eff_);
}

DensityOp LindbladGenerator::operator()(const DensityOp& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_)
        throw DimensionMismatch("density dimension does not match the generator");
    DensityOp out = -kI * (h_eff_ * rho);
    out.noalias() += kI * (rho * h_eff_dag_);
    for (std::size_t k = 0; k < jumps_.size(); ++k) out.noalias() += jumps_[k] * (rho * jumps_dag_[k]);
    return out;
}

DensityOp lindblad_rhs(const LinOp& h, const std::vector<JumpChannel>& channels, const DensityOp& rho) {
    return LindbladGenerator(h, channels)(rho);
}

Eigen::VectorXcd vec(const DensityOp& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DensityOp unvec(const Eigen::VectorXcd& v, Index dim) {
    if (v.size() != dim * dim) throw DimensionMismatch("unvec: vector length is not dim^2");
    return Eigen::Map<const DensityOp>(v.data(), dim, dim);
}

LiouvillianMatrix build_liouvillian(const LinOp& h, const std::vector<JumpChannel>& channels) {
    const Index d = h.rows();
    if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian is not square");
    check_channels(d, channels);
    const LinOp id = identity(d);
    const LinOp ht = canonical(LinOp(h.transpose()));
    LinOp m = -kI * kron(id, h) + kI * kron(ht, id);
    for (const auto& c : channels) {
        if (c.rate == 0.0) continue;
        const LinOp ldl = compose(dag(c.op), c.op);
        const LinOp ldl_t = canonical(LinOp(ldl.transpose()));
        const LinOp l_conj = canonical(LinOp(c.op.conjugate()));
        m += c.rate * (kron(l_conj, c.op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl_t, id));
    }
    return {d * d, canonical(std::move(m))};
}

EvolutionResult evolve(const LinOp& h, const std::vector<JumpChannel>& channels, const DensityOp& rho0,
                       double t_final, const EvolveOptions& options) {
    if (!(t_final > 0.0)) throw InvalidParameter("t_final", "must be positive");
    if (!(options.rel_tol >= 1e-12 && options.rel_tol <= 1e-4))
        throw InvalidParameter("rel_tol", "must lie in [1e-12, 1e-4]");
    if (!(options.abs_tol > 0.0)) throw InvalidParameter("abs_tol", "must be positive");
    const LindbladGenerator rhs(h, channels);
    if (rho0.rows() != rhs.dim() || rho0.cols() != rhs.dim())
        throw DimensionMismatch("initial state dimension does not match the Hamiltonian");

    std::vector<double> samples = options.sample_times;
    if (samples.empty()) samples = {0.0, t_final};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i] < 0.0 || samples[i] > t_final * (1.0 + 1e-12))
            throw InvalidParameter("sample_times", "must lie in [0, t_final]");
        if (i > 0 && !(samples[i] > samples[i - 1]))
            throw InvalidParameter("sample_times", "must be strictly increasing");
    }

    EvolutionResult result;
    const Complex trace0 = rho0.trace();
    auto record = [&](double t, const DensityOp& rho) {
        const auto defects = density_defects(rho);
        const double drift = std::abs(rho.trace() - trace0);
        result.max_trace_drift = std::max(result.max_trace_drift, drift);
        result.max_hermiticity_defect = std::max(result.max_hermiticity_defect, defects.hermiticity);
        result.min_eigenvalue = std::min(result.min_eigenvalue, defects.min_eigenvalue);
        if (options.enforce_invariants) {
            if (drift > options.trace_tol)
                throw InvariantViolation("evolve: trace drift " + std::to_string(drift) + " at t=" + std::to_string(t));
            if (defects.hermiticity > options.hermiticity_tol)
                throw InvariantViolation("evolve: Hermiticity defect at t=" + std::to_string(t));
            if (defects.min_eigenvalue < -options.positivity_tol)
                throw InvariantViolation("evolve: negative eigenvalue " + std::to_string(defects.min_eigenvalue) +
                                         " at t=" + std::to_string(t));
        }
        result.times.push_back(t);
        result.states.push_back(rho);
    };

    // Dormand-Prince 5(4) tableau; the generator is autonomous so the nodes c_i are unused
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double h_norm = op_norm_inf(h);
    double step = options.initial_step > 0.0 ? options.initial_step : 1e-3 / std::max(h_norm, 1.0);
    double t = 0.0;
    DensityOp rho = rho0;
    DensityOp k1 = rhs(rho);
    std::size_t next = 0;
    while (next < samples.size() && samples[next] <= 0.0) record(samples[next++], rho);

    while (next < samples.size()) {
        const double target = samples[next];
        const bool hits_target = t + step >= target;
        const double dt = hits_target ? target - t : step;
        if (dt < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepUnderflow(t, "evolve: step size underflow at t=" + std::to_string(t));
        if (result.steps.accepted + result.steps.rejected >= options.max_steps)
            throw StepUnderflow(t, "evolve: step budget exhausted at t=" + std::to_string(t));

        const DensityOp k2 = rhs(rho + dt * a21 * k1);
        const DensityOp k3 = rhs(rho + dt * (a31 * k1 + a32 * k2));
        const DensityOp k4 = rhs(rho + dt * (a41 * k1 + a42 * k2 + a43 * k3));
        const DensityOp k5 = rhs(rho + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const DensityOp k6 = rhs(rho + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        DensityOp next_rho = rho + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const DensityOp k7 = rhs(next_rho);
        const DensityOp err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const Eigen::MatrixXd scale =
            (options.abs_tol + options.rel_tol * rho.cwiseAbs().cwiseMax(next_rho.cwiseAbs()).array()).matrix();
        const double err_norm = (err.cwiseAbs().array() / scale.array()).maxCoeff();

        if (err_norm <= 1.0) {
            ++result.steps.accepted;
            t = hits_target ? target : t + dt;
            // rounding breaks Hermiticity slowly over long runs; project it back
            rho = 0.5 * (next_rho + next_rho.adjoint());
            k1 = 0.5 * (k7 + k7.adjoint());
            if (hits_target) record(samples[next++], rho);
            const double grow = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
            // a step shortened to land on a sample time keeps the previous proposal
            step = (hits_target && dt < step) ? step : dt * grow;
        } else {
            ++result.steps.rejected;
            step = dt * std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.9);
        }
    }
    return result;
}

DensityOp steady_state(const LinOp& h, const std::vector<JumpChannel>& channels, const SteadyStateOptions& options) {
    const bool any_rate = std::any_of(channels.begin(), channels.end(), [](const auto& c) { return c.rate > 0.0; });
    if (!any_rate) throw InvalidParameter("rate", "steady_state needs at least one positive channel rate");
    const auto liou = build_liouvillian(h, channels);
    const Index d = h.rows();
    const Index n = liou.dim;
    const Index last = n - 1;

    Eigen::VectorXcd rhs_vec = Eigen::VectorXcd::Zero(n);
    rhs_vec(last) = 1.0;
    Eigen::VectorXcd solution;

    if (n <= 4096) {
        Eigen::MatrixXcd bordered(liou.matrix);
        bordered.row(last).setZero();
        for (Index i = 0; i < d; ++i) bordered(last, i + i * d) = 1.0;
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(bordered);
        if (!(lu.rcond() >= options.singular_rcond))
            throw SingularSystem("steady_state: bordered system is singular (steady state not unique)");
        solution = lu.solve(rhs_vec);
    } else {
        std::vector<Eigen::Triplet<Complex>> trip;
        trip.reserve(static_cast<std::size_t>(liou.matrix.nonZeros() + d));
        for (Index k = 0; k < liou.matrix.outerSize(); ++k)
            for (LinOp::InnerIterator it(liou.matrix, k); it; ++it)
                if (it.row() != last) trip.emplace_back(it.row(), it.col(), it.value());
        for (Index i = 0; i < d; ++i) trip.emplace_back(last, i + i * d, 1.0);
        LinOp bordered(n, n);
        bordered.setFromTriplets(trip.begin(), trip.end());
        bordered.makeCompressed();
        Eigen::SparseLU<LinOp> lu;
        lu.compute(bordered);
        if (lu.info() != Eigen::Success)
            throw SingularSystem("steady_state: bordered system is singular (steady state not unique)");
        solution = lu.solve(rhs_vec);
    }

    const double residual = (liou.matrix * solution).cwiseAbs().maxCoeff();
    if (!(residual <= options.residual_tol))
        throw ResidualFailure("steady_state: residual " + std::to_string(residual) + " exceeds tolerance");
    DensityOp rho = unvec(solution, d);
    const auto defects = density_defects(rho);
    if (defects.hermiticity > 1e-10 || defects.trace_error > 1e-10 || defects.min_eigenvalue < -1e-9)
        throw InvariantViolation("steady_state: solution is not a valid density operator");
    return rho;
}

}  // namespace crheat
