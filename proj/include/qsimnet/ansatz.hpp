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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qsimnet/projection.hpp"
#include "qsimnet/statevector.hpp"

namespace qsimnet {

/// Entangling block applied after each rotation layer.
enum class Entangler {
    /// CX(i, i+1) for i = 0..n-2, then CX(n-1, 0) when n >= 3.
    Ring,
};

/**
 * Topology of the layered variational circuit.
 *
 * Every layer applies R3 to qubits 0..n-1 in ascending order (three angles
 * each), then the entangler. Pair-mode circuits measure four qubits with the
 * first two designated to the anchor; single-input circuits measure two.
 */
struct CircuitSpec {
    int n_qubits = 0;
    int n_layers = 0;
    std::vector<int> measured_qubits;
    std::vector<int> anchor_slots; // positions into measured_qubits
    Entangler entangler = Entangler::Ring;

    /// measured {0,1,2,3}, anchor positions {0,1}.
    static CircuitSpec pair(int n_qubits, int n_layers);
    /// measured {0,1}.
    static CircuitSpec single(int n_qubits, int n_layers);

    [[nodiscard]] bool is_pair() const noexcept {
        return measured_qubits.size() == 4;
    }

    /// Throws ValidationError / IndexError when the invariants do not hold.
    void validate() const;

    friend bool operator==(const CircuitSpec &, const CircuitSpec &) = default;
};

/// 3 * n_qubits * n_layers.
[[nodiscard]] std::size_t parameter_count(const CircuitSpec &spec);

/// CX (control, target) pairs of one entangling block.
[[nodiscard]] std::vector<std::pair<int, int>>
entangler_pairs(const CircuitSpec &spec);

/// Rotation angles in circuit order: layer-major, then qubit, then p1..p3.
class ParameterVector {
  public:
    ParameterVector() = default;
    explicit ParameterVector(std::vector<double> values)
        : values_(std::move(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept {
        return values_;
    }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    double &operator[](std::size_t i) { return values_[i]; }

    friend bool operator==(const ParameterVector &,
                           const ParameterVector &) = default;

  private:
    std::vector<double> values_;
};

/// The circuit as a flat gate list.
[[nodiscard]] std::vector<GateOp> circuit_gates(const CircuitSpec &spec,
                                                const ParameterVector &params);

/// Amplitude-embeds input (length 2^n_qubits) and applies all layers.
/// Counts one forward execution.
[[nodiscard]] StateVector run_circuit(std::span<const double> input,
                                      const CircuitSpec &spec,
                                      const ParameterVector &params);

[[nodiscard]] Projection measure_projection(const StateVector &state,
                                            const CircuitSpec &spec);

/// Projection plus d(coord)/d(param) for every measured coordinate.
struct ProjectionJacobian {
    Projection value;
    std::size_t n_params = 0;
    std::vector<double> d; // row-major [coord][param]

    [[nodiscard]] std::span<const double> row(std::size_t coord) const {
        return std::span<const double>(d).subspan(coord * n_params, n_params);
    }
};

/**
 * Jacobian of the measured expectations by the parameter-shift rule:
 * d<Z>/dtheta = (<Z>(theta + pi/2) - <Z>(theta - pi/2)) / 2 for every angle.
 *
 * Circuit prefixes are cached so each shifted evaluation only replays the
 * gates after the shifted one. Counts one forward execution and 2 * P
 * shifted executions.
 */
[[nodiscard]] ProjectionJacobian
parameter_shift_jacobian(std::span<const double> input,
                         const CircuitSpec &spec,
                         const ParameterVector &params);

struct ExecutionCounts {
    std::uint64_t forward = 0;
    std::uint64_t shifted = 0;
};

/// Process-wide circuit execution counters (thread-safe).
[[nodiscard]] ExecutionCounts execution_counts() noexcept;
void reset_execution_counts() noexcept;

} // namespace qsimnet
