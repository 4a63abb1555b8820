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

#include <cstdint>
#include <filesystem>

#include "qsimnet/io.hpp"

namespace qsimnet {

/**
 * Small RGB images, each dominated by one color: a rectangle covering most
 * of the frame in a palette color at a random brightness, on a random
 * background, with per-pixel noise. Histogram similarity therefore follows
 * the dominant color and its brightness.
 */
struct ColorBlobsOptions {
    int n = 200;
    int width = 8;
    int height = 8;
    std::uint64_t seed = 0;
};

/// Two labeled Gaussian classes in `dim` dimensions with well separated
/// mean directions (amplitude embedding only sees directions).
struct TwoClassGaussOptions {
    int n = 200;
    int dim = 8;
    double stddev = 0.15;
    std::uint64_t seed = 0;
};

[[nodiscard]] std::vector<RgbImage> color_blobs(const ColorBlobsOptions &o);

/// Rows of features followed by the label (0 or 1); classes alternate.
[[nodiscard]] std::vector<std::vector<double>>
two_class_gauss(const TwoClassGaussOptions &o);

/// Writes img_0000.ppm ... plus manifest.json into dir.
void write_color_blobs(const std::filesystem::path &dir,
                       const ColorBlobsOptions &o);
/// Writes data.csv plus manifest.json into dir.
void write_two_class_gauss(const std::filesystem::path &dir,
                           const TwoClassGaussOptions &o);

/// In-memory datasets, identical to what loading the written files gives.
[[nodiscard]] Dataset color_blobs_dataset(const ColorBlobsOptions &o);
[[nodiscard]] Dataset two_class_gauss_dataset(const TwoClassGaussOptions &o);

} // namespace qsimnet
