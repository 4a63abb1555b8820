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
#include "qsimnet/ansatz.hpp"
#include "qsimnet/error.hpp"
#include "qsimnet/rng.hpp"

using namespace qsimnet;

namespace {

ParameterVector random_params(const CircuitSpec &spec, Rng &rng) {
    std::vector<double> p(parameter_count(spec));
    for (auto &x : p) {
        x = rng.uniform(0, 2 * std::numbers::pi);
    }
    return ParameterVector(p);
}

std::vector<double> random_input(int n, Rng &rng) {
    std::vector<double> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = rng.uniform(0, 1);
    }
    return v;
}

} // namespace

TEST_SUITE("ansatz") {

TEST_CASE("parameter_count") {
    CHECK(parameter_count(CircuitSpec::pair(4, 4)) == 48);
    CHECK(parameter_count(CircuitSpec::pair(11, 4)) == 132);
    CHECK(parameter_count(CircuitSpec{1, 1, {}, {}}) == 3);
}

TEST_CASE("spec validation") {
    CHECK_NOTHROW(CircuitSpec::pair(4, 1));
    CHECK_NOTHROW(CircuitSpec::single(2, 1));
    CHECK_THROWS_AS(CircuitSpec::pair(3, 1), IndexError);
    CHECK_THROWS_AS(CircuitSpec::pair(25, 1), ResourceError);
    CHECK_THROWS_AS(CircuitSpec::pair(4, 0), ValidationError);
    CircuitSpec dup{4, 1, {0, 1, 1, 2}, {0, 1}};
    CHECK_THROWS_AS(dup.validate(), IndexError);
    CircuitSpec slots{4, 1, {0, 1, 2, 3}, {2, 3}};
    CHECK_THROWS_AS(slots.validate(), ValidationError);
    CircuitSpec three{4, 1, {0, 1, 2}, {0, 1}};
    CHECK_THROWS_AS(three.validate(), ValidationError);
}

TEST_CASE("ring entangler") {
    using P = std::vector<std::pair<int, int>>;
    CHECK(entangler_pairs(CircuitSpec::single(2, 1)) == P{{0, 1}});
    CHECK(entangler_pairs(CircuitSpec::pair(4, 1)) ==
          P{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

TEST_CASE("zero parameters on |0...0> keep every Z at +1") {
    const auto spec = CircuitSpec::pair(5, 3);
    std::vector<double> e0(32, 0.0);
    e0[0] = 1.0;
    auto s = run_circuit(e0, spec, ParameterVector(std::vector<double>(45, 0.0)));
    for (int q = 0; q < 5; ++q) {
        CHECK(s.expectation_z(q) == doctest::Approx(1.0).epsilon(1e-15));
    }
    const auto proj = measure_projection(s, spec);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(proj[i] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("two-qubit hand example") {
    const auto spec = CircuitSpec::single(2, 1);
    auto s = run_circuit(std::vector<double>{0, 0, 0, 1}, spec,
                         ParameterVector(std::vector<double>(6, 0.0)));
    CHECK(s.expectation_z(0) == doctest::Approx(-1.0));
    CHECK(s.expectation_z(1) == doctest::Approx(1.0));
}

TEST_CASE("uniform superposition measures zero") {
    auto s = StateVector::from_real(std::vector<double>(16, 1.0));
    const auto proj = measure_projection(s, CircuitSpec::pair(4, 1));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(proj[i]) < 1e-12);
    }
}

TEST_CASE("reordered measured qubits permute the projection") {
    Rng rng(4);
    auto spec = CircuitSpec::pair(5, 2);
    const auto input = random_input(5, rng);
    const auto params = random_params(spec, rng);
    const auto s = run_circuit(input, spec, params);
    const auto a = measure_projection(s, spec);
    auto other = spec;
    other.measured_qubits = {3, 2, 1, 0};
    const auto b = measure_projection(s, other);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a[i] == b[3 - i]);
    }
}

TEST_CASE("circuit agrees with the dense matrix oracle") {
    Rng rng(17);
    for (int n = 2; n <= 5; ++n) {
        for (int layers = 1; layers <= 3; ++layers) {
            CircuitSpec spec = n >= 4 ? CircuitSpec::pair(n, layers)
                                      : CircuitSpec::single(n, layers);
            const auto input = random_input(n, rng);
            const auto params = random_params(spec, rng);
            const auto s = run_circuit(input, spec, params);
            const std::vector<double> pv(params.values().begin(),
                                         params.values().end());
            const auto ref =
                oracle::apply(oracle::circuit(n, layers, pv), oracle::embed(input));
            for (std::size_t k = 0; k < ref.size(); ++k) {
                CHECK(std::abs(s.amplitudes()[k] - ref[k]) < 1e-12);
            }
        }
    }
}

TEST_CASE("output norm is one") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = CircuitSpec::pair(6, 3);
        const auto s =
            run_circuit(random_input(6, rng), spec, random_params(spec, rng));
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-9);
    }
}

TEST_CASE("shape errors") {
    const auto spec = CircuitSpec::pair(4, 2);
    Rng rng(1);
    const auto params = random_params(spec, rng);
    CHECK_THROWS_AS((void)run_circuit(std::vector<double>(8, 1.0), spec, params),
                    ShapeError);
    CHECK_THROWS_AS((void)run_circuit(std::vector<double>(16, 1.0), spec,
                                      ParameterVector(std::vector<double>(5))),
                    ShapeError);
    CHECK_THROWS_AS((void)run_circuit(std::vector<double>(16, 0.0), spec, params),
                    DegenerateInputError);
    CHECK_THROWS_AS((void)measure_projection(StateVector::zero(3), spec),
                    ShapeError);
}

TEST_CASE("parameter-shift Jacobian matches central differences") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const auto spec = CircuitSpec::pair(4, 2);
        const auto input = random_input(4, rng);
        const auto params = random_params(spec, rng);
        const auto jac = parameter_shift_jacobian(input, spec, params);
        const auto value = measure_projection(run_circuit(input, spec, params), spec);
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(jac.value[c] == doctest::Approx(value[c]).epsilon(1e-14));
            const std::vector<double> x(params.values().begin(),
                                        params.values().end());
            const auto fd = oracle::central_difference(
                [&](const std::vector<double> &p) {
                    const auto circuit = oracle::circuit(4, 2, p);
                    return oracle::z(oracle::apply(circuit, oracle::embed(input)),
                                     spec.measured_qubits[c]);
                },
                x, 1e-5);
            for (std::size_t j = 0; j < params.size(); ++j) {
                CHECK(std::abs(jac.row(c)[j] - fd[j]) < 1e-7);
            }
        }
    }
}

TEST_CASE("execution counters") {
    const auto spec = CircuitSpec::pair(4, 1);
    Rng rng(2);
    const auto input = random_input(4, rng);
    const auto params = random_params(spec, rng);
    reset_execution_counts();
    (void)run_circuit(input, spec, params);
    CHECK(execution_counts().forward == 1);
    (void)parameter_shift_jacobian(input, spec, params);
    CHECK(execution_counts().forward == 2);
    CHECK(execution_counts().shifted == 2 * parameter_count(spec));
    reset_execution_counts();
    CHECK(execution_counts().forward == 0);
}

} // TEST_SUITE
