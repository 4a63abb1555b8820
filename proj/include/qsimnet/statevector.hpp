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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qsimnet {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Complex, 4>;

/**
 * R3(p1, p2, p3) = Rz(p3) * Ry(p2) * Rz(p1), with
 *
 *   Rz(a) = [[e^{-ia/2}, 0], [0, e^{ia/2}]]
 *   Ry(b) = [[cos(b/2), -sin(b/2)], [sin(b/2), cos(b/2)]]
 *
 * which multiplies out to
 *
 *   [[ c e^{-i(p1+p3)/2}, -s e^{ i(p1-p3)/2}],
 *    [ s e^{-i(p1-p3)/2},  c e^{ i(p1+p3)/2}]],   c = cos(p2/2), s = sin(p2/2).
 *
 * Each angle enters through a Pauli rotation exp(-i p sigma / 2), so the
 * two-term parameter-shift rule with shifts of +-pi/2 is exact for all three.
 */
[[nodiscard]] Matrix2 r3_matrix(double p1, double p2, double p3);

enum class GateKind { R3, CX };

/// One gate of a circuit. Build through r3()/cx(); they validate arity.
struct GateOp {
    GateKind kind;
    std::array<int, 2> qubits; // R3: {target, -1}; CX: {control, target}
    std::array<double, 3> params;

    static GateOp r3(int qubit, double p1, double p2, double p3);
    static GateOp cx(int control, int target);
};

/**
 * Dense statevector over n qubits.
 *
 * Bit ordering is little-endian throughout the library: qubit q is bit q of
 * the basis index, so qubit 0 is the least-significant bit.
 */
class StateVector {
  public:
    static constexpr int kMaxQubits = 24;

    /// |0...0>. Throws ResourceError outside [1, kMaxQubits].
    static StateVector zero(int n_qubits);

    /// Real amplitude embedding: amplitudes[k] = v[k] / ||v||_2.
    static StateVector from_real(std::span<const double> v);

    /// Takes the amplitudes as given (no normalization). Length must be a
    /// power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }

    void apply_r3(int qubit, double p1, double p2, double p3);
    void apply_matrix(int qubit, const Matrix2 &u);
    void apply_cx(int control, int target);
    void apply(const GateOp &op);

    /// <Z_q> = sum_k |a_k|^2 * (+1 if bit q of k is 0 else -1). Exact.
    [[nodiscard]] double expectation_z(int qubit) const;

    [[nodiscard]] double norm_squared() const noexcept;

  private:
    StateVector(int n_qubits, std::vector<Complex> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    void check_qubit(int qubit) const;

    int n_qubits_;
    std::vector<Complex> amps_;
};

/// True for 1, 2, 4, ...
[[nodiscard]] constexpr bool is_pow2(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

/// log2 of a power of two.
[[nodiscard]] int log2_exact(std::size_t n);

} // namespace qsimnet
