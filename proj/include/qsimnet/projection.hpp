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
#include <initializer_list>
#include <span>
#include <vector>

namespace qsimnet {

/**
 * Measured coordinates, one Pauli-Z expectation per designated qubit.
 *
 * Two coordinates for single-input runs. Four for pair runs, where positions
 * 0-1 belong to the anchor and 2-3 to the partner.
 */
class Projection {
  public:
    Projection() = default;
    explicit Projection(std::vector<double> coords)
        : coords_(std::move(coords)) {}
    Projection(std::initializer_list<double> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] std::span<const double> coords() const noexcept {
        return coords_;
    }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }

    /// Positions 0-1.
    [[nodiscard]] std::span<const double> anchor() const;
    /// Positions 2-3 of a four-coordinate projection.
    [[nodiscard]] std::span<const double> partner() const;

  private:
    std::vector<double> coords_;
};

} // namespace qsimnet
