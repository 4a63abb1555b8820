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

#include "qsimnet/ansatz.hpp"

#include <algorithm>
#include <atomic>
#include <numbers>
#include <string>

#include "qsimnet/error.hpp"

namespace qsimnet {

namespace {

std::atomic<std::uint64_t> g_forward{0};
std::atomic<std::uint64_t> g_shifted{0};

constexpr double kShift = std::numbers::pi / 2.0;

void check_shapes(std::span<const double> input, const CircuitSpec &spec,
                  const ParameterVector &params) {
    spec.validate();
    const std::size_t dim = std::size_t{1} << spec.n_qubits;
    if (input.size() != dim) {
        throw ShapeError("circuit input has length " +
                         std::to_string(input.size()) + ", expected " +
                         std::to_string(dim));
    }
    if (params.size() != parameter_count(spec)) {
        throw ShapeError("parameter vector has length " +
                         std::to_string(params.size()) + ", expected " +
                         std::to_string(parameter_count(spec)));
    }
}

void measure_into(const StateVector &state, const CircuitSpec &spec,
                  std::vector<double> &out) {
    out.resize(spec.measured_qubits.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = state.expectation_z(spec.measured_qubits[i]);
    }
}

} // namespace

CircuitSpec CircuitSpec::pair(int n_qubits, int n_layers) {
    CircuitSpec spec{n_qubits, n_layers, {0, 1, 2, 3}, {0, 1}};
    spec.validate();
    return spec;
}

CircuitSpec CircuitSpec::single(int n_qubits, int n_layers) {
    CircuitSpec spec{n_qubits, n_layers, {0, 1}, {0, 1}};
    spec.validate();
    return spec;
}

void CircuitSpec::validate() const {
    if (n_qubits < 1 || n_qubits > StateVector::kMaxQubits) {
        throw ResourceError("circuit qubit count " + std::to_string(n_qubits) +
                            " outside [1, " +
                            std::to_string(StateVector::kMaxQubits) + "]");
    }
    if (n_layers < 1) {
        throw ValidationError("circuit needs at least one layer");
    }
    const std::size_t m = measured_qubits.size();
    if (m != 2 && m != 4) {
        throw ValidationError("circuit must measure two or four qubits");
    }
    for (std::size_t i = 0; i < m; ++i) {
        const int q = measured_qubits[i];
        if (q < 0 || q >= n_qubits) {
            throw IndexError("measured qubit " + std::to_string(q) +
                             " out of range for " + std::to_string(n_qubits) +
                             " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (measured_qubits[j] == q) {
                throw IndexError("measured qubits must be distinct");
            }
        }
    }
    if (anchor_slots != std::vector<int>{0, 1}) {
        throw ValidationError("anchor slots must be the first two measured "
                              "positions");
    }
}

std::size_t parameter_count(const CircuitSpec &spec) {
    return 3 * static_cast<std::size_t>(spec.n_qubits) *
           static_cast<std::size_t>(spec.n_layers);
}

std::vector<std::pair<int, int>> entangler_pairs(const CircuitSpec &spec) {
    std::vector<std::pair<int, int>> pairs;
    switch (spec.entangler) {
    case Entangler::Ring:
        for (int i = 0; i + 1 < spec.n_qubits; ++i) {
            pairs.emplace_back(i, i + 1);
        }
        // n == 2 would repeat the (0,1) pair in reverse.
        if (spec.n_qubits >= 3) {
            pairs.emplace_back(spec.n_qubits - 1, 0);
        }
        break;
    }
    return pairs;
}

std::vector<GateOp> circuit_gates(const CircuitSpec &spec,
                                  const ParameterVector &params) {
    const auto pairs = entangler_pairs(spec);
    std::vector<GateOp> gates;
    gates.reserve(static_cast<std::size_t>(spec.n_layers) *
                  (spec.n_qubits + pairs.size()));
    std::size_t j = 0;
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        for (int q = 0; q < spec.n_qubits; ++q, j += 3) {
            gates.push_back(
                GateOp::r3(q, params[j], params[j + 1], params[j + 2]));
        }
        for (auto [c, t] : pairs) {
            gates.push_back(GateOp::cx(c, t));
        }
    }
    return gates;
}

StateVector run_circuit(std::span<const double> input, const CircuitSpec &spec,
                        const ParameterVector &params) {
    check_shapes(input, spec, params);
    StateVector state = StateVector::from_real(input);
    for (const GateOp &g : circuit_gates(spec, params)) {
        state.apply(g);
    }
    g_forward.fetch_add(1, std::memory_order_relaxed);
    return state;
}

Projection measure_projection(const StateVector &state,
                              const CircuitSpec &spec) {
    if (state.n_qubits() != spec.n_qubits) {
        throw ShapeError("state has " + std::to_string(state.n_qubits()) +
                         " qubits, circuit expects " +
                         std::to_string(spec.n_qubits));
    }
    std::vector<double> coords;
    measure_into(state, spec, coords);
    return Projection(std::move(coords));
}

ProjectionJacobian parameter_shift_jacobian(std::span<const double> input,
                                            const CircuitSpec &spec,
                                            const ParameterVector &params) {
    check_shapes(input, spec, params);
    const std::vector<GateOp> gates = circuit_gates(spec, params);
    const std::size_t n_params = params.size();
    const std::size_t n_coords = spec.measured_qubits.size();

    std::vector<Matrix2> matrices(gates.size());
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (gates[g].kind == GateKind::R3) {
            const auto &p = gates[g].params;
            matrices[g] = r3_matrix(p[0], p[1], p[2]);
        }
    }

    // snapshots[r] is the state right before the r-th R3 gate.
    std::vector<StateVector> snapshots;
    std::vector<std::size_t> r3_positions;
    snapshots.reserve(n_params / 3);
    StateVector state = StateVector::from_real(input);
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (gates[g].kind == GateKind::R3) {
            snapshots.push_back(state);
            r3_positions.push_back(g);
        }
        state.apply(gates[g]);
    }
    g_forward.fetch_add(1, std::memory_order_relaxed);

    ProjectionJacobian out;
    out.value = measure_projection(state, spec);
    out.n_params = n_params;
    out.d.assign(n_coords * n_params, 0.0);

    std::vector<double> plus;
    std::vector<double> minus;
    StateVector shifted = state;
    for (std::size_t r = 0; r < r3_positions.size(); ++r) {
        const std::size_t pos = r3_positions[r];
        const GateOp &gate = gates[pos];
        for (int k = 0; k < 3; ++k) {
            for (int sign : {+1, -1}) {
                std::array<double, 3> p = gate.params;
                p[k] += sign * kShift;
                shifted = snapshots[r];
                shifted.apply_r3(gate.qubits[0], p[0], p[1], p[2]);
                for (std::size_t g = pos + 1; g < gates.size(); ++g) {
                    if (gates[g].kind == GateKind::R3) {
                        shifted.apply_matrix(gates[g].qubits[0], matrices[g]);
                    } else {
                        shifted.apply(gates[g]);
                    }
                }
                measure_into(shifted, spec, sign > 0 ? plus : minus);
            }
            const std::size_t j = 3 * r + static_cast<std::size_t>(k);
            for (std::size_t c = 0; c < n_coords; ++c) {
                out.d[c * n_params + j] = 0.5 * (plus[c] - minus[c]);
            }
        }
    }
    g_shifted.fetch_add(2 * n_params, std::memory_order_relaxed);
    return out;
}

ExecutionCounts execution_counts() noexcept {
    return {g_forward.load(std::memory_order_relaxed),
            g_shifted.load(std::memory_order_relaxed)};
}

void reset_execution_counts() noexcept {
    g_forward.store(0, std::memory_order_relaxed);
    g_shifted.store(0, std::memory_order_relaxed);
}

} // namespace qsimnet
