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

#include "qsimnet/loss.hpp"

#include <cmath>
#include <string>

#include "qsimnet/error.hpp"

namespace qsimnet {

namespace {

void check_xy(std::span<const double> v) {
    if (v.size() != 2) {
        throw ShapeError("expected a 2-coordinate point, got " +
                         std::to_string(v.size()) + " coordinates");
    }
}

} // namespace

void LossWeights::validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) ||
        !std::isfinite(beta)) {
        throw ValidationError("loss weights must be finite and non-negative");
    }
    if (alpha == 0.0 && beta == 0.0) {
        throw ValidationError("loss weights alpha and beta cannot both be 0");
    }
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("distance operands differ in length");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += std::abs(a[i] - b[i]);
    }
    return d;
}

double squared_l2_distance(std::span<const double> a,
                           std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("distance operands differ in length");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return d;
}

double triplet_l2_loss(std::span<const double> a, std::span<const double> p,
                       std::span<const double> n) {
    check_xy(a);
    check_xy(p);
    check_xy(n);
    return squared_l2_distance(a, p) - squared_l2_distance(a, n);
}

double l_obj(std::span<const double> a, std::span<const double> p,
             std::span<const double> n) {
    return l_obj(a, p, a, n);
}

double l_obj(std::span<const double> anchor_pos, std::span<const double> p,
             std::span<const double> anchor_neg, std::span<const double> n) {
    check_xy(anchor_pos);
    check_xy(p);
    check_xy(anchor_neg);
    check_xy(n);
    return l1_distance(anchor_pos, p) - l1_distance(anchor_neg, n);
}

double l_pvm(std::span<const double> anchor_from_positive_run,
             std::span<const double> anchor_from_negative_run) {
    check_xy(anchor_from_positive_run);
    check_xy(anchor_from_negative_run);
    return l1_distance(anchor_from_positive_run, anchor_from_negative_run);
}

double l_total(const LossWeights &w, double obj, double pvm) {
    if (!std::isfinite(obj) || !std::isfinite(pvm)) {
        throw ValidationError("loss terms must be finite");
    }
    return w.alpha * obj + w.beta * pvm;
}

} // namespace qsimnet
