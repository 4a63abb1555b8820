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

#include "qsimnet/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "qsimnet/error.hpp"
#include "qsimnet/rng.hpp"

namespace qsimnet {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::array<double, 3>, 6> kPalette{{
    {230, 40, 30},   // red
    {40, 200, 50},   // green
    {40, 60, 220},   // blue
    {230, 210, 40},  // yellow
    {40, 200, 210},  // cyan
    {200, 50, 200},  // magenta
}};

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create directory " + dir.string());
    }
}

std::string image_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "img_%04d.ppm", i);
    return buf;
}

} // namespace

std::vector<RgbImage> color_blobs(const ColorBlobsOptions &o) {
    if (o.n < 1) {
        throw ValidationError("image count must be positive");
    }
    if (o.width < 2 || o.height < 2) {
        throw ValidationError("images must be at least 2x2");
    }
    Rng rng(o.seed);
    std::vector<RgbImage> out;
    out.reserve(static_cast<std::size_t>(o.n));
    for (int i = 0; i < o.n; ++i) {
        const auto &base = kPalette[rng.below(kPalette.size())];
        const double brightness = rng.uniform(0.35, 1.0);
        std::array<double, 3> fg{};
        std::array<double, 3> bg{};
        for (int c = 0; c < 3; ++c) {
            fg[c] = brightness * base[c] + rng.uniform(-20.0, 20.0);
            bg[c] = rng.uniform(0.0, 255.0);
        }
        // Rectangle covering between half and all of each axis.
        const int rw = o.width / 2 + static_cast<int>(rng.below(
                                         static_cast<std::uint64_t>(o.width - o.width / 2 + 1)));
        const int rh = o.height / 2 + static_cast<int>(rng.below(
                                          static_cast<std::uint64_t>(o.height - o.height / 2 + 1)));
        const int x0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(o.width - rw + 1)));
        const int y0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(o.height - rh + 1)));

        RgbImage img{o.width, o.height, {}};
        img.pixels.reserve(static_cast<std::size_t>(o.width) * o.height * 3);
        for (int y = 0; y < o.height; ++y) {
            for (int x = 0; x < o.width; ++x) {
                const bool inside =
                    x >= x0 && x < x0 + rw && y >= y0 && y < y0 + rh;
                const auto &col = inside ? fg : bg;
                for (int c = 0; c < 3; ++c) {
                    img.pixels.push_back(to_byte(col[c] + rng.uniform(-8.0, 8.0)));
                }
            }
        }
        out.push_back(std::move(img));
    }
    return out;
}

std::vector<std::vector<double>> two_class_gauss(const TwoClassGaussOptions &o) {
    if (o.n < 1) {
        throw ValidationError("sample count must be positive");
    }
    if (o.dim < 2) {
        throw ValidationError("dimension must be at least 2");
    }
    if (!(o.stddev >= 0.0)) {
        throw ValidationError("standard deviation must be non-negative");
    }
    // Class 0 leans on the first half of the coordinates, class 1 on the
    // second half.
    const auto half = static_cast<std::size_t>(o.dim / 2);
    Rng rng(o.seed);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(o.n));
    for (int i = 0; i < o.n; ++i) {
        const int label = i % 2;
        std::vector<double> row(static_cast<std::size_t>(o.dim) + 1);
        for (std::size_t d = 0; d < static_cast<std::size_t>(o.dim); ++d) {
            const bool heavy = (d < half) == (label == 0);
            row[d] = (heavy ? 1.0 : 0.25) + rng.normal(0.0, o.stddev);
        }
        row.back() = label;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_color_blobs(const fs::path &dir, const ColorBlobsOptions &o) {
    const auto images = color_blobs(o);
    ensure_dir(dir);
    Manifest m;
    m.format = DataFormat::Ppm;
    m.labeled = false;
    m.feature_count = static_cast<std::size_t>(o.width) * o.height * 3;
    m.image = ImageShape{o.width, o.height};
    for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string name = image_name(static_cast<int>(i));
        write_ppm(dir / name, images[i]);
        m.files.push_back(name);
    }
    write_manifest(dir / "manifest.json", m);
}

void write_two_class_gauss(const fs::path &dir, const TwoClassGaussOptions &o) {
    const auto rows = two_class_gauss(o);
    ensure_dir(dir);
    std::string text;
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                text += ',';
            }
            text += i + 1 == row.size() ? std::to_string(static_cast<int>(row[i]))
                                        : format_double(row[i]);
        }
        text += '\n';
    }
    write_text_file(dir / "data.csv", text);
    Manifest m;
    m.format = DataFormat::Csv;
    m.labeled = true;
    m.feature_count = static_cast<std::size_t>(o.dim);
    m.files = {"data.csv"};
    write_manifest(dir / "manifest.json", m);
}

Dataset color_blobs_dataset(const ColorBlobsOptions &o) {
    std::vector<Sample> samples;
    for (const RgbImage &img : color_blobs(o)) {
        Sample s;
        s.features.assign(img.pixels.begin(), img.pixels.end());
        samples.push_back(std::move(s));
    }
    return Dataset(std::move(samples), ImageShape{o.width, o.height});
}

Dataset two_class_gauss_dataset(const TwoClassGaussOptions &o) {
    std::vector<Sample> samples;
    for (auto &row : two_class_gauss(o)) {
        Sample s;
        s.label = static_cast<int>(row.back());
        row.pop_back();
        s.features = std::move(row);
        samples.push_back(std::move(s));
    }
    return Dataset(std::move(samples));
}

} // namespace qsimnet
