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


#include <doctest.h>

#include "crheat/models.hpp"
#include "helpers.hpp"

using namespace crheat;
using crheat::testing::max_abs;
using crheat::testing::max_abs_diff;

namespace {

Complex element(const LinOp& h, const SpaceSpec& s, Index q_row, Index n_row, Index q_col, Index n_col) {
    return h.coeff(s.index(q_row, n_row), s.index(q_col, n_col));
}

bool exactly_hermitian(const LinOp& h) { return entries(h) == entries(dag(h)); }

}  // namespace

TEST_CASE("build_rabi: uncoupled spectrum") {
    const LinOp h = build_rabi({1.0, 1.0, 0.0, 0.0, 2});
    const Eigen::MatrixXcd dense(h);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected.diagonal() << 0.0, 1.0, 1.0, 2.0;
    CHECK(max_abs(dense - expected) == 0.0);
}

TEST_CASE("build_rabi: coupling bookkeeping") {
    const SpaceSpec s(2);
    const LinOp cr = build_rabi({1.0, 1.0, 0.0, 0.1, 2});
    CHECK(element(cr, s, 1, 1, 0, 0) == Complex(0.1));
    const LinOp jc = build_rabi({1.0, 1.0, 0.1, 0.0, 2});
    CHECK(element(jc, s, 0, 1, 1, 0) == Complex(0.1));
    CHECK(element(jc, s, 1, 1, 0, 0) == Complex(0.0));
}

TEST_CASE("build_sideband: term bookkeeping") {
    const SpaceSpec s(3);
    SidebandParams p{-10.0, 10.0, 1.0, 0.1, false, 3};
    const LinOp rwa = build_sideband(p);
    CHECK(std::abs(element(rwa, s, 1, 0, 0, 1) - 0.05) < 1e-15);
    CHECK(element(rwa, s, 1, 1, 0, 0) == Complex(0.0));
    p.include_cr = true;
    const LinOp full = build_sideband(p);
    CHECK(std::abs(element(full, s, 1, 1, 0, 0) - 0.05) < 1e-15);

    const LinOp diff = canonical(LinOp(full - rwa));
    const LinOp expected = canonical(LinOp(0.05 * counter_rotating_term(s)));
    CHECK(max_abs_diff(diff, expected) == 0.0);
}

TEST_CASE("build_sideband: no drive is diagonal") {
    const SidebandParams p{-3.0, 2.0, 0.0, 0.1, true, 4};
    const SpaceSpec s(4);
    const Eigen::MatrixXcd h(build_sideband(p));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 8);
    for (Index q = 0; q < 2; ++q)
        for (Index n = 0; n < 4; ++n) expected(s.index(q, n), s.index(q, n)) = 3.0 * q + 2.0 * n;
    CHECK(max_abs(h - expected) <= 1e-14);
}

TEST_CASE("built Hamiltonians are exactly Hermitian") {
    for (double g_rot : {0.0, 0.13, 0.7})
        for (double g_cr : {0.0, 0.05, 0.31})
            CHECK(exactly_hermitian(build_rabi({1.3, 0.9, g_rot, g_cr, 7})));
    for (bool cr : {false, true}) CHECK(exactly_hermitian(build_sideband({-9.5, 10.0, 1.2, 0.17, cr, 9})));
}

TEST_CASE("rabi without counter-rotating terms conserves excitation number below the cutoff") {
    const Index n = 8;
    const SpaceSpec s(n);
    const LinOp h = build_rabi({1.0, 1.2, 0.3, 0.0, n});
    const LinOp total = canonical(LinOp(excited_projector(s) + number_operator(s)));
    const Eigen::MatrixXcd comm = Eigen::MatrixXcd(compose(h, total) - compose(total, h));
    for (Index q = 0; q < 2; ++q)
        for (Index m = 0; m + 1 < n; ++m)
            for (Index qq = 0; qq < 2; ++qq)
                for (Index mm = 0; mm + 1 < n; ++mm)
                    CHECK(std::abs(comm(s.index(q, m), s.index(qq, mm))) <= 1e-14);

    const LinOp with_cr = build_rabi({1.0, 1.2, 0.3, 0.1, n});
    const Eigen::MatrixXcd comm_cr = Eigen::MatrixXcd(compose(with_cr, total) - compose(total, with_cr));
    CHECK(max_abs(comm_cr) > 0.1);
}

TEST_CASE("builders are deterministic") {
    const RabiParams p{1.1, 0.7, 0.2, 0.05, 6};
    CHECK(entries(build_rabi(p)) == entries(build_rabi(p)));
}

TEST_CASE("parameter validation names the field") {
    auto field_of = [](auto&& fn) -> std::string {
        try {
            fn();
        } catch (const InvalidParameter& e) {
            return e.field();
        }
        return "";
    };
    CHECK(field_of([] { build_rabi({-1.0, 1.0, 0.0, 0.0, 4}); }) == "omega_a");
    CHECK(field_of([] { build_rabi({1.0, 0.0, 0.0, 0.0, 4}); }) == "omega_b");
    CHECK(field_of([] { build_rabi({1.0, 1.0, -0.1, 0.0, 4}); }) == "g_rot");
    CHECK(field_of([] { build_rabi({1.0, 1.0, 0.0, -0.1, 4}); }) == "g_cr");
    CHECK(field_of([] { build_rabi({1.0, 1.0, 0.0, 0.0, 1}); }) == "fock_cutoff");
    CHECK(field_of([] { build_sideband({-1.0, 1.0, 1.0, 1.5, true, 4}); }) == "eta");
    CHECK(field_of([] { build_sideband({-1.0, 0.0, 1.0, 0.1, true, 4}); }) == "nu");
    CHECK(field_of([] { build_sideband({-1.0, 1.0, -1.0, 0.1, true, 4}); }) == "omega_rabi");
    CHECK(field_of([] { DissipationSpec{-1.0, 0.0}.validate(); }) == "gamma_a");
    CHECK(field_of([] { DissipationSpec{0.0, -1.0}.validate(); }) == "kappa_b");
    CHECK_THROWS_AS(DissipationSpec{}.validate_for_steady_state(), InvalidParameter);
}

TEST_CASE("jump_channels") {
    using E = Entry<Complex>;
    const auto c1 = jump_channels({1.0, 0.0}, SpaceSpec(2));
    REQUIRE(c1.size() == 2);
    CHECK(entries(c1[0].op) == std::vector<E>{{0, 2, 1.0}, {1, 3, 1.0}});
    CHECK(c1[0].rate == 1.0);
    CHECK(c1[1].rate == 0.0);

    const auto c2 = jump_channels({0.0, 2.0}, SpaceSpec(3));
    CHECK(max_abs_diff(c2[1].op, kron(identity(2), destroy(3))) == 0.0);
    CHECK(c2[1].rate == 2.0);

    const auto c3 = jump_channels({0.0, 0.0}, SpaceSpec(2));
    CHECK(c3.size() == 2);
    CHECK(c3[0].rate == 0.0);
    CHECK(c3[1].rate == 0.0);
}
