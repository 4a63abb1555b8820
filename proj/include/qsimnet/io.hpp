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
#include <optional>
#include <string>
#include <vector>

#include "qsimnet/data.hpp"

namespace qsimnet {

/// 8-bit RGB raster, channel-interleaved.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // width * height * 3
};

/// Binary PPM (P6) with maxval 255. Comments after the magic are skipped.
[[nodiscard]] RgbImage read_ppm(const std::filesystem::path &path);
void write_ppm(const std::filesystem::path &path, const RgbImage &image);

/// Headerless numeric CSV, one row per line.
[[nodiscard]] std::vector<std::vector<double>>
read_csv(const std::filesystem::path &path);

enum class DataFormat { Ppm, Csv };

/**
 * Dataset manifest (JSON):
 *
 *   {
 *     "format": "ppm" | "csv",
 *     "labeled": bool,
 *     "feature_count": int,
 *     "width": int, "height": int,     // ppm only
 *     "files": [paths relative to the manifest],
 *     "labels": [int, ...]             // ppm + labeled only
 *   }
 *
 * For csv the final column of every row is the integer label when labeled.
 */
struct Manifest {
    DataFormat format = DataFormat::Ppm;
    bool labeled = false;
    std::size_t feature_count = 0;
    std::optional<ImageShape> image;
    std::vector<std::string> files;
    std::vector<int> labels;
};

[[nodiscard]] Manifest read_manifest(const std::filesystem::path &path);
void write_manifest(const std::filesystem::path &path, const Manifest &m);

/// Reads a manifest and every file it lists.
[[nodiscard]] Dataset load_dataset(const std::filesystem::path &manifest_path);

/// Writes text atomically enough for our purposes (truncate + write); throws
/// IoError with the path on failure.
void write_text_file(const std::filesystem::path &path,
                     const std::string &text);

[[nodiscard]] std::string read_text_file(const std::filesystem::path &path);

/// Shortest decimal string that round-trips the double.
[[nodiscard]] std::string format_double(double x);

} // namespace qsimnet
