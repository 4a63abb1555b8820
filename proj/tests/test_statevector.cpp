// Copyright 2026 The qsimnet Authors
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

#include <cmath>
#include <numbers>
#include <vector>

#include "oracle.hpp"
#include "qsimnet/error.hpp"
#include "qsimnet/rng.hpp"
#include "qsimnet/statevector.hpp"

using namespace qsimnet;
using std::numbers::pi;

namespace {

StateVector random_state(int n, Rng &rng) {
    std::vector<Complex> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {rng.normal(), rng.normal()};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector::from_amplitudes(amps);
}

double max_diff(const StateVector &a, const StateVector &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        m = std::max(m, std::abs(a.amplitudes()[k] - b.amplitudes()[k]));
    }
    return m;
}

} // namespace

TEST_SUITE("statevector") {

TEST_CASE("zero state") {
    auto s1 = StateVector::zero(1);
    CHECK(s1.dim() == 2);
    CHECK(s1.amplitudes()[0] == Complex(1.0));
    CHECK(s1.amplitudes()[1] == Complex(0.0));
    auto s2 = StateVector::zero(2);
    CHECK(s2.dim() == 4);
    CHECK(s2.amplitudes()[0] == Complex(1.0));
    CHECK(s2.norm_squared() == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)StateVector::zero(25), ResourceError);
    CHECK_THROWS_AS((void)StateVector::zero(0), ResourceError);
    CHECK_NOTHROW((void)StateVector::zero(StateVector::kMaxQubits));
}

TEST_CASE("amplitude embedding") {
    std::vector<double> basis{1, 0, 0, 0};
    auto s = StateVector::from_real(basis);
    CHECK(s.n_qubits() == 2);
    CHECK(s.amplitudes()[0] == Complex(1.0));

    std::vector<double> v{3, 4, 0, 0};
    auto t = StateVector::from_real(v);
    CHECK(t.amplitudes()[0].real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(t.amplitudes()[1].real() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(t.amplitudes()[2] == Complex(0.0));

    std::vector<double> zeros{0, 0};
    CHECK_THROWS_AS((void)StateVector::from_real(zeros), DegenerateInputError);
    std::vector<double> three{1, 2, 3};
    CHECK_THROWS_AS((void)StateVector::from_real(three), ShapeError);
    std::vector<double> nan{1, std::nan("")};
    CHECK_THROWS_AS((void)StateVector::from_real(nan), DegenerateInputError);
}

TEST_CASE("R3 examples") {
    Rng rng(11);
    auto s = random_state(3, rng);
    auto id = s;
    id.apply_r3(1, 0, 0, 0);
    CHECK(max_diff(s, id) < 1e-15);

    auto flip = StateVector::zero(1);
    flip.apply_r3(0, 0, pi, 0);
    CHECK(std::abs(flip.amplitudes()[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(flip.amplitudes()[0]) < 1e-12);

    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.uniform(-pi, pi);
        const double b = rng.uniform(-pi, pi);
        const double c = rng.uniform(-pi, pi);
        auto u = s;
        u.apply_r3(2, a, b, c);
        u.apply_r3(2, -c, -b, -a);
        CHECK(max_diff(s, u) < 1e-10);
    }
    CHECK_THROWS_AS(s.apply_r3(3, 0, 0, 0), IndexError);
    CHECK_THROWS_AS(s.apply_r3(-1, 0, 0, 0), IndexError);
}

TEST_CASE("R3 matrix matches the Rz Ry Rz product") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const double p1 = rng.uniform(-4, 4), p2 = rng.uniform(-4, 4),
                     p3 = rng.uniform(-4, 4);
        const Matrix2 m = r3_matrix(p1, p2, p3);
        const auto ref = oracle::r3(p1, p2, p3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(m[2 * i + j] - ref[i][j]) < 1e-14);
    }
}

TEST_CASE("CX truth table, little-endian") {
    // |q1 q0> = |01>: qubit 0 set, index 1.
    auto s = StateVector::from_real(std::vector<double>{0, 1, 0, 0});
    s.apply_cx(0, 1);
    CHECK(s.amplitudes()[3] == Complex(1.0));

    auto z = StateVector::zero(2);
    z.apply_cx(0, 1);
    CHECK(z.amplitudes()[0] == Complex(1.0));

    Rng rng(3);
    auto r = random_state(4, rng);
    auto twice = r;
    twice.apply_cx(3, 1);
    twice.apply_cx(3, 1);
    CHECK(max_diff(r, twice) < 1e-12);

    CHECK_THROWS_AS(r.apply_cx(1, 1), IndexError);
    CHECK_THROWS_AS(r.apply_cx(0, 4), IndexError);
    CHECK_THROWS_AS((void)GateOp::cx(2, 2), IndexError);
}

TEST_CASE("CX agrees with the permutation-matrix oracle") {
    Rng rng(8);
    for (int c = 0; c < 4; ++c) {
        for (int t = 0; t < 4; ++t) {
            if (c == t) {
                continue;
            }
            auto s = random_state(4, rng);
            std::vector<oracle::C> v(s.amplitudes().begin(), s.amplitudes().end());
            s.apply_cx(c, t);
            const auto ref = oracle::apply(oracle::cx(c, t, 4), v);
            for (std::size_t k = 0; k < ref.size(); ++k) {
                CHECK(std::abs(s.amplitudes()[k] - ref[k]) < 1e-15);
            }
        }
    }
}

TEST_CASE("expectation_z examples") {
    CHECK(StateVector::zero(1).expectation_z(0) == 1.0);
    auto one = StateVector::from_real(std::vector<double>{0, 1});
    CHECK(one.expectation_z(0) == -1.0);
    auto plus = StateVector::from_real(std::vector<double>{1, 1});
    CHECK(std::abs(plus.expectation_z(0)) < 1e-12);
    CHECK_THROWS_AS((void)plus.expectation_z(1), IndexError);
}

TEST_CASE("property: expectation_z equals brute-force marginals") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        auto s = random_state(n, rng);
        std::vector<oracle::C> v(s.amplitudes().begin(), s.amplitudes().end());
        for (int q = 0; q < n; ++q) {
            const double e = s.expectation_z(q);
            CHECK(e >= -1.0);
            CHECK(e <= 1.0);
            CHECK(std::abs(e - oracle::z(v, q)) < 1e-12);
        }
    }
}

TEST_CASE("property: unitarity over random circuits") {
    Rng rng(1234);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        auto s = random_state(n, rng);
        const int gates = 5 + static_cast<int>(rng.below(40));
        for (int g = 0; g < gates; ++g) {
            if (n >= 2 && rng.below(3) == 0) {
                const int c = static_cast<int>(rng.below(n));
                int t = static_cast<int>(rng.below(n - 1));
                if (t >= c) {
                    ++t;
                }
                s.apply(GateOp::cx(c, t));
            } else {
                s.apply(GateOp::r3(static_cast<int>(rng.below(n)),
                                   rng.uniform(-7, 7), rng.uniform(-7, 7),
                                   rng.uniform(-7, 7)));
            }
        }
        worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("property: linearity") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3;
        auto a = random_state(n, rng);
        auto b = random_state(n, rng);
        const Complex ca(rng.normal(), rng.normal()), cb(rng.normal(), rng.normal());
        std::vector<Complex> mix(a.dim());
        for (std::size_t k = 0; k < mix.size(); ++k) {
            mix[k] = ca * a.amplitudes()[k] + cb * b.amplitudes()[k];
        }
        auto m = StateVector::from_amplitudes(mix);
        const double p1 = rng.uniform(-3, 3), p2 = rng.uniform(-3, 3),
                     p3 = rng.uniform(-3, 3);
        for (auto *s : {&a, &b, &m}) {
            s->apply_r3(1, p1, p2, p3);
            s->apply_cx(1, 2);
        }
        for (std::size_t k = 0; k < mix.size(); ++k) {
            CHECK(std::abs(m.amplitudes()[k] -
                           (ca * a.amplitudes()[k] + cb * b.amplitudes()[k])) <
                  1e-12);
        }
    }
}

TEST_CASE("property: CX commutes with Z on the control") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_state(4, rng);
        const double before = s.expectation_z(2);
        s.apply_cx(2, 0);
        CHECK(std::abs(s.expectation_z(2) - before) < 1e-12);
    }
}

TEST_CASE("log2_exact") {
    CHECK(log2_exact(1) == 0);
    CHECK(log2_exact(512) == 9);
    CHECK_THROWS_AS((void)log2_exact(0), ShapeError);
    CHECK_THROWS_AS((void)log2_exact(6), ShapeError);
}

} // TEST_SUITE
