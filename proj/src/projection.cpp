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

#include "qsimnet/projection.hpp"

#include "qsimnet/error.hpp"

namespace qsimnet {

std::span<const double> Projection::anchor() const {
    if (coords_.size() < 2) {
        throw ShapeError("projection has fewer than two coordinates");
    }
    return std::span<const double>(coords_).first(2);
}

std::span<const double> Projection::partner() const {
    if (coords_.size() != 4) {
        throw ShapeError("partner coordinates need a four-coordinate "
                         "projection");
    }
    return std::span<const double>(coords_).subspan(2, 2);
}

} // namespace qsimnet
