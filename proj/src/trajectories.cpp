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

#include "crheat/trajectories.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <thread>

namespace crheat {
namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<std::size_t> sample_steps(const std::vector<double>& times, double dt, std::size_t total_steps) {
    std::vector<std::size_t> out;
    out.reserve(times.size());
    for (double t : times) {
        const double k = std::round(t / dt);
        if (k < 0.0 || std::abs(k * dt - t) > 1e-9 * std::max(1.0, std::abs(t)))
            throw InvalidParameter("sample_times", "must be nonnegative multiples of dt");
        const auto step = static_cast<std::size_t>(k);
        if (step > total_steps) throw InvalidParameter("sample_times", "must not exceed t_final");
        if (!out.empty() && step <= out.back()) throw InvalidParameter("sample_times", "must be strictly increasing");
        out.push_back(step);
    }
    return out;
}

}  // namespace

McwfStepper::McwfStepper(const LinOp& h, const std::vector<JumpChannel>& channels, double dt, NoJumpScheme scheme)
    : dim_(h.rows()), dt_(dt), scheme_(scheme) {
    if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian is not square");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("dt", "must be positive");
    LinOp decay(dim_, dim_);
    for (const auto& c : channels) {
        if (c.op.rows() != dim_ || c.op.cols() != dim_)
            throw DimensionMismatch("jump operator dimension does not match the Hamiltonian");
        if (!(c.rate >= 0.0)) throw InvalidParameter("rate", "jump rates must be nonnegative");
        jumps_.push_back(c.op);
        rates_.push_back(c.rate);
        if (c.rate != 0.0) decay += c.rate * LinOp(dag(c.op) * c.op);
    }
    h_eff_ = canonical(LinOp(h - 0.5 * kI * decay));
    if (scheme_ == NoJumpScheme::exact) {
        const Eigen::MatrixXcd gen = -kI * dt_ * Eigen::MatrixXcd(h_eff_);
        propagator_ = gen.exp();
    }
}

StepOutcome McwfStepper::step(const Ket& psi, double draw) const {
    if (psi.size() != dim_) throw DimensionMismatch("mcwf step: state dimension");
    std::vector<double> dp(jumps_.size(), 0.0);
    std::vector<Ket> jumped(jumps_.size());
    double total = 0.0;
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
        if (rates_[k] == 0.0) continue;
        jumped[k] = jumps_[k] * psi;
        dp[k] = dt_ * rates_[k] * jumped[k].squaredNorm();
        total += dp[k];
    }
    if (total >= kMaxJumpProbability)
        throw StepTooLarge("mcwf step: total jump probability " + std::to_string(total) + " >= 0.1, shrink dt");

    if (draw < total) {
        double cumulative = 0.0;
        for (std::size_t k = 0; k < jumps_.size(); ++k) {
            if (dp[k] == 0.0) continue;
            cumulative += dp[k];
            if (draw < cumulative) return {normalize(jumped[k]), static_cast<int>(k)};
        }
        // rounding placed the draw past the last nonzero interval
        for (std::size_t k = jumps_.size(); k-- > 0;)
            if (dp[k] > 0.0) return {normalize(jumped[k]), static_cast<int>(k)};
    }

    Ket next = scheme_ == NoJumpScheme::exact ? Ket(propagator_ * psi) : Ket(psi - kI * dt_ * (h_eff_ * psi));
    return {normalize(next), std::nullopt};
}

StepOutcome mcwf_step(const Ket& psi, const LinOp& h, const std::vector<JumpChannel>& channels, double dt,
                      double draw) {
    return McwfStepper(h, channels, dt, NoJumpScheme::first_order).step(psi, draw);
}

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

TrajectoryRecord run_trajectory(const LinOp& h, const std::vector<JumpChannel>& channels, const Ket& psi0,
                                const TrajectorySetup& setup, std::uint64_t seed) {
    return run_trajectory(McwfStepper(h, channels, setup.dt, setup.scheme), psi0, setup, seed);
}

TrajectoryRecord run_trajectory(const McwfStepper& stepper, const Ket& psi0, const TrajectorySetup& setup,
                                std::uint64_t seed) {
    if (setup.dt != stepper.dt()) throw InvalidParameter("dt", "setup dt differs from the stepper");
    if (!(setup.t_final > 0.0)) throw InvalidParameter("t_final", "must be positive");
    if (psi0.size() != stepper.dim()) throw DimensionMismatch("initial state dimension");
    const double steps_real = std::round(setup.t_final / setup.dt);
    if (std::abs(steps_real * setup.dt - setup.t_final) > 1e-9 * setup.t_final)
        throw InvalidParameter("t_final", "must be a multiple of dt");
    const auto total_steps = static_cast<std::size_t>(steps_real);

    TrajectoryRecord rec;
    rec.seed = seed;
    rec.sample_times = setup.sample_times.empty() ? std::vector<double>{0.0, setup.t_final} : setup.sample_times;
    const auto sample_at = sample_steps(rec.sample_times, setup.dt, total_steps);
    rec.values.assign(setup.observables.size(), std::vector<double>(sample_at.size(), 0.0));

    UniformStream rng(seed);
    Ket psi = normalize(psi0);
    std::size_t next_sample = 0;
    auto record = [&](std::size_t step) {
        while (next_sample < sample_at.size() && sample_at[next_sample] == step) {
            for (std::size_t o = 0; o < setup.observables.size(); ++o)
                rec.values[o][next_sample] = expect(setup.observables[o], psi).real();
            ++next_sample;
        }
    };
    record(0);
    for (std::size_t step = 0; step < total_steps && next_sample < sample_at.size(); ++step) {
        auto outcome = stepper.step(psi, rng.next());
        psi = std::move(outcome.psi);
        if (outcome.channel) rec.jumps.push_back({static_cast<double>(step + 1) * setup.dt, *outcome.channel});
        record(step + 1);
    }
    return rec;
}

std::pair<double, double> mean_and_standard_error(const std::vector<double>& samples) {
    if (samples.size() < 2) throw InvalidParameter("trajectories", "need at least two samples");
    const double m = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double mean = sum / m;
    double sq = 0.0;
    for (double x : samples) sq += (x - mean) * (x - mean);
    return {mean, std::sqrt(sq / (m - 1.0)) / std::sqrt(m)};
}

EnsembleResult ensemble_mean(const LinOp& h, const std::vector<JumpChannel>& channels, const Ket& psi0,
                             const TrajectorySetup& setup, Index trajectories, std::uint64_t master_seed,
                             unsigned threads) {
    if (trajectories < 2) throw InvalidParameter("trajectories", "ensemble needs at least two trajectories");
    const McwfStepper stepper(h, channels, setup.dt, setup.scheme);
    const auto count = static_cast<std::size_t>(trajectories);
    std::vector<TrajectoryRecord> records(count);

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < count; i += workers)
                records[i] = run_trajectory(stepper, psi0, setup, trajectory_seed(master_seed, i));
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    EnsembleResult out;
    out.trajectories = trajectories;
    out.sample_times = records.front().sample_times;
    const std::size_t n_obs = setup.observables.size();
    const std::size_t n_samples = out.sample_times.size();
    out.mean.assign(n_obs, std::vector<double>(n_samples, 0.0));
    out.standard_error.assign(n_obs, std::vector<double>(n_samples, 0.0));
    std::vector<double> column(count);
    for (std::size_t o = 0; o < n_obs; ++o) {
        for (std::size_t s = 0; s < n_samples; ++s) {
            for (std::size_t i = 0; i < count; ++i) column[i] = records[i].values[o][s];
            std::tie(out.mean[o][s], out.standard_error[o][s]) = mean_and_standard_error(column);
        }
    }
    out.jump_counts.reserve(count);
    out.first_jump_times.reserve(count);
    for (const auto& r : records) {
        out.jump_counts.push_back(r.jumps.size());
        out.first_jump_times.push_back(r.jumps.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                       : r.jumps.front().time);
    }
    return out;
}

}  // namespace crheat
