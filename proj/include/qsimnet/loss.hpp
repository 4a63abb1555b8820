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

#include <span>

#include "qsimnet/projection.hpp"

namespace qsimnet {

/// Weights of the objective and consistency terms.
struct LossWeights {
    double alpha = 1.0;
    double beta = 1.0;

    /// Non-negative, finite, not both zero.
    void validate() const;
};

// All coordinate arguments are 2-vectors (x, y); anything else is a
// ShapeError.

/// Squared-L2 triplet loss:
/// ((Ax-Px)^2 + (Ay-Py)^2) - ((Ax-Nx)^2 + (Ay-Ny)^2).
[[nodiscard]] double triplet_l2_loss(std::span<const double> a,
                                     std::span<const double> p,
                                     std::span<const double> n);

/// L1 triplet objective: (|Ax-Px| + |Ay-Py|) - (|Ax-Nx| + |Ay-Ny|).
[[nodiscard]] double l_obj(std::span<const double> a,
                           std::span<const double> p,
                           std::span<const double> n);

/// L1 objective where the positive and negative distances are each measured
/// from the anchor's own reading in that run.
[[nodiscard]] double l_obj(std::span<const double> anchor_pos,
                           std::span<const double> p,
                           std::span<const double> anchor_neg,
                           std::span<const double> n);

/// Anchor consistency between the two runs: |Apx-Anx| + |Apy-Any|.
[[nodiscard]] double l_pvm(std::span<const double> anchor_from_positive_run,
                           std::span<const double> anchor_from_negative_run);

/// alpha * obj + beta * pvm.
[[nodiscard]] double l_total(const LossWeights &w, double obj, double pvm);

/// Sum of |a_i - b_i|.
[[nodiscard]] double l1_distance(std::span<const double> a,
                                 std::span<const double> b);
/// Sum of (a_i - b_i)^2.
[[nodiscard]] double squared_l2_distance(std::span<const double> a,
                                         std::span<const double> b);

} // namespace qsimnet
