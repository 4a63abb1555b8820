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

#include "qsimnet/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "qsimnet/error.hpp"

namespace qsimnet {

Matrix2 r3_matrix(double p1, double p2, double p3) {
    const double c = std::cos(p2 / 2.0);
    const double s = std::sin(p2 / 2.0);
    const double sum = (p1 + p3) / 2.0;
    const double diff = (p1 - p3) / 2.0;
    return {std::polar(c, -sum), -std::polar(s, diff), std::polar(s, -diff),
            std::polar(c, sum)};
}

GateOp GateOp::r3(int qubit, double p1, double p2, double p3) {
    if (qubit < 0) {
        throw IndexError("R3 qubit index must be non-negative");
    }
    return {GateKind::R3, {qubit, -1}, {p1, p2, p3}};
}

GateOp GateOp::cx(int control, int target) {
    if (control < 0 || target < 0 || control == target) {
        throw IndexError("CX needs two distinct non-negative qubit indices");
    }
    return {GateKind::CX, {control, target}, {0.0, 0.0, 0.0}};
}

int log2_exact(std::size_t n) {
    if (!is_pow2(n)) {
        throw ShapeError("length " + std::to_string(n) +
                         " is not a power of two");
    }
    return std::countr_zero(n);
}

StateVector StateVector::zero(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ResourceError("qubit count " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) +
                            "]");
    }
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    amps[0] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_real(std::span<const double> v) {
    const int n = log2_exact(v.size());
    if (n < 1 || n > kMaxQubits) {
        throw ResourceError("embedding of length " + std::to_string(v.size()) +
                            " needs an unsupported qubit count");
    }
    double sq = 0.0;
    for (double x : v) {
        sq += x * x;
    }
    if (!(sq > 0.0) || !std::isfinite(sq)) {
        throw DegenerateInputError(
            "cannot embed a vector with zero or non-finite norm");
    }
    const double inv = 1.0 / std::sqrt(sq);
    std::vector<Complex> amps(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        amps[k] = v[k] * inv;
    }
    return {n, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const int n = log2_exact(amplitudes.size());
    if (n < 1 || n > kMaxQubits) {
        throw ResourceError("unsupported qubit count");
    }
    return {n, std::move(amplitudes)};
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw IndexError("qubit " + std::to_string(qubit) +
                         " out of range for " + std::to_string(n_qubits_) +
                         "-qubit state");
    }
}

void StateVector::apply_r3(int qubit, double p1, double p2, double p3) {
    apply_matrix(qubit, r3_matrix(p1, p2, p3));
}

void StateVector::apply_matrix(int qubit, const Matrix2 &u) {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    const double ur0 = u[0].real(), ui0 = u[0].imag();
    const double ur1 = u[1].real(), ui1 = u[1].imag();
    const double ur2 = u[2].real(), ui2 = u[2].imag();
    const double ur3 = u[3].real(), ui3 = u[3].imag();
    // Interleaved (re, im) doubles; std::complex guarantees this layout.
    double *d = reinterpret_cast<double *>(amps_.data());
    const std::size_t n = amps_.size();
    for (std::size_t base = 0; base < n; base += 2 * mask) {
        double *x = d + 2 * base;
        double *y = x + 2 * mask;
        for (std::size_t i = 0; i < 2 * mask; i += 2) {
            const double xr = x[i], xi = x[i + 1];
            const double yr = y[i], yi = y[i + 1];
            x[i] = ur0 * xr - ui0 * xi + ur1 * yr - ui1 * yi;
            x[i + 1] = ur0 * xi + ui0 * xr + ur1 * yi + ui1 * yr;
            y[i] = ur2 * xr - ui2 * xi + ur3 * yr - ui3 * yi;
            y[i + 1] = ur2 * xi + ui2 * xr + ur3 * yi + ui3 * yr;
        }
    }
}

void StateVector::apply_cx(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw IndexError("CX control and target must differ");
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t lo = std::min(cmask, tmask);
    const std::size_t hi = std::max(cmask, tmask);
    const std::size_t n = amps_.size();
    Complex *a = amps_.data();
    for (std::size_t outer = 0; outer < n; outer += 2 * hi) {
        for (std::size_t mid = outer; mid < outer + hi; mid += 2 * lo) {
            Complex *block = a + (mid | cmask);
            for (std::size_t i = 0; i < lo; ++i) {
                std::swap(block[i], block[i + tmask]);
            }
        }
    }
}

void StateVector::apply(const GateOp &op) {
    switch (op.kind) {
    case GateKind::R3:
        apply_r3(op.qubits[0], op.params[0], op.params[1], op.params[2]);
        break;
    case GateKind::CX:
        apply_cx(op.qubits[0], op.qubits[1]);
        break;
    }
}

double StateVector::expectation_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double up = 0.0;
    double down = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        if ((k & mask) == 0) {
            up += p;
        } else {
            down += p;
        }
    }
    return up - down;
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const Complex &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

} // namespace qsimnet
