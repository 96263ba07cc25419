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

#include "crheat/observables.hpp"

#include <cmath>

namespace crheat {
namespace {

template <typename State>
EmissionReport rates_impl(const State& state, const std::vector<JumpChannel>& channels) {
    EmissionReport out;
    out.rates.reserve(channels.size());
    for (const auto& c : channels) {
        double r = 0.0;
        if (c.rate != 0.0) r = c.rate * expect(compose(dag(c.op), c.op), state).real();
        if (r < 0.0) {
            if (r < -1e-10) throw InvariantViolation("emission_rates: negative rate");
            r = 0.0;
            out.clamped = true;
        }
        out.rates.push_back(r);
        out.total += r;
    }
    return out;
}

}  // namespace

EmissionReport emission_rates(const DensityOp& rho, const std::vector<JumpChannel>& channels) {
    return rates_impl(rho, channels);
}

EmissionReport emission_rates(const Ket& psi, const std::vector<JumpChannel>& channels) {
    return rates_impl(psi, channels);
}

double cumulative_emission(const std::vector<double>& times, const std::vector<EmissionReport>& reports) {
    if (times.size() != reports.size() || times.size() < 2)
        throw InvalidParameter("times", "need matching time and report series of length >= 2");
    double acc = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        if (!(dt > 0.0)) throw InvalidParameter("times", "must be strictly increasing");
        acc += 0.5 * dt * (reports[i].total + reports[i - 1].total);
    }
    return acc;
}

double mean_phonon(const DensityOp& rho, const SpaceSpec& space) {
    return expect(number_operator(space), rho).real();
}

double mean_phonon(const Ket& psi, const SpaceSpec& space) { return expect(number_operator(space), psi).real(); }

double excited_population(const DensityOp& rho, const SpaceSpec& space) {
    return expect(excited_projector(space), rho).real();
}

double excited_population(const Ket& psi, const SpaceSpec& space) {
    return expect(excited_projector(space), psi).real();
}

double dissipative_power(const DensityOp& rho, const LinOp& h, const std::vector<JumpChannel>& channels) {
    double p = 0.0;
    for (const auto& c : channels) {
        if (c.rate == 0.0) continue;
        const LinOp comm = canonical(LinOp(h * c.op - c.op * h));
        p += c.rate * expect(compose(dag(c.op), comm), rho).real();
    }
    return p;
}

}  // namespace crheat
