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

#include "qsimnet/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qsimnet/error.hpp"

namespace qsimnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Next whitespace-delimited header token, skipping '#' comments.
std::string ppm_token(std::istream &in, const fs::path &path) {
    std::string tok;
    while (true) {
        const int c = in.get();
        if (c == EOF) {
            throw ValidationError("truncated PPM header in " + path.string());
        }
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
            if (!tok.empty()) {
                return tok;
            }
            continue;
        }
        if (std::isspace(c) != 0) {
            if (!tok.empty()) {
                return tok;
            }
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
}

int parse_positive(const std::string &tok, const fs::path &path,
                   const char *what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0) {
        throw ValidationError(std::string("bad PPM ") + what + " '" + tok +
                              "' in " + path.string());
    }
    return v;
}

} // namespace

RgbImage read_ppm(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    if (ppm_token(in, path) != "P6") {
        throw ValidationError("not a binary PPM (P6): " + path.string());
    }
    RgbImage img;
    img.width = parse_positive(ppm_token(in, path), path, "width");
    img.height = parse_positive(ppm_token(in, path), path, "height");
    if (parse_positive(ppm_token(in, path), path, "maxval") != 255) {
        throw ValidationError("PPM maxval must be 255: " + path.string());
    }
    // ppm_token consumed the single whitespace byte after maxval.
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    in.read(reinterpret_cast<char *>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        throw ValidationError("truncated PPM pixel data in " + path.string());
    }
    return img;
}

void write_ppm(const fs::path &path, const RgbImage &image) {
    if (image.pixels.size() !=
        static_cast<std::size_t>(image.width) * image.height * 3) {
        throw ShapeError("pixel buffer does not match image shape");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char *>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::vector<std::vector<double>> read_csv(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const char *b = cell.data();
            const char *e = b + cell.size();
            while (b < e && *b == ' ') {
                ++b;
            }
            const auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e) {
                throw ValidationError("non-numeric cell '" + cell + "' at " +
                                      path.string() + ":" +
                                      std::to_string(lineno));
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Manifest read_manifest(const fs::path &path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception &e) {
        throw ValidationError("malformed manifest " + path.string() + ": " +
                              e.what());
    }
    Manifest m;
    try {
        const std::string fmt = j.at("format").get<std::string>();
        if (fmt == "ppm") {
            m.format = DataFormat::Ppm;
        } else if (fmt == "csv") {
            m.format = DataFormat::Csv;
        } else {
            throw ValidationError("unknown manifest format '" + fmt + "'");
        }
        m.labeled = j.at("labeled").get<bool>();
        m.feature_count = j.at("feature_count").get<std::size_t>();
        if (m.format == DataFormat::Ppm) {
            m.image = ImageShape{j.at("width").get<int>(),
                                 j.at("height").get<int>()};
        }
        m.files = j.at("files").get<std::vector<std::string>>();
        if (j.contains("labels")) {
            m.labels = j.at("labels").get<std::vector<int>>();
        }
    } catch (const json::exception &e) {
        throw ValidationError("manifest " + path.string() + ": " + e.what());
    }
    if (m.files.empty()) {
        throw ValidationError("manifest " + path.string() + " lists no files");
    }
    if (m.format == DataFormat::Ppm && m.labeled &&
        m.labels.size() != m.files.size()) {
        throw ValidationError("manifest " + path.string() +
                              ": labels must match files one to one");
    }
    return m;
}

void write_manifest(const fs::path &path, const Manifest &m) {
    json j;
    j["format"] = m.format == DataFormat::Ppm ? "ppm" : "csv";
    j["labeled"] = m.labeled;
    j["feature_count"] = m.feature_count;
    if (m.image) {
        j["width"] = m.image->width;
        j["height"] = m.image->height;
    }
    j["files"] = m.files;
    if (!m.labels.empty()) {
        j["labels"] = m.labels;
    }
    write_text_file(path, j.dump(2) + "\n");
}

Dataset load_dataset(const fs::path &manifest_path) {
    const Manifest m = read_manifest(manifest_path);
    const fs::path dir = manifest_path.parent_path();
    std::vector<Sample> samples;
    if (m.format == DataFormat::Ppm) {
        for (std::size_t i = 0; i < m.files.size(); ++i) {
            const RgbImage img = read_ppm(dir / m.files[i]);
            if (img.width != m.image->width || img.height != m.image->height) {
                throw ValidationError((dir / m.files[i]).string() +
                                      " does not match the manifest shape");
            }
            Sample s;
            s.features.assign(img.pixels.begin(), img.pixels.end());
            if (m.labeled) {
                s.label = m.labels[i];
            }
            samples.push_back(std::move(s));
        }
    } else {
        for (const std::string &file : m.files) {
            for (auto &row : read_csv(dir / file)) {
                Sample s;
                if (m.labeled) {
                    if (row.size() < 2) {
                        throw ValidationError("labeled row needs features and "
                                              "a label in " +
                                              (dir / file).string());
                    }
                    const double label = row.back();
                    if (label != std::floor(label)) {
                        throw ValidationError("non-integer label in " +
                                              (dir / file).string());
                    }
                    s.label = static_cast<int>(label);
                    row.pop_back();
                }
                s.features = std::move(row);
                samples.push_back(std::move(s));
            }
        }
    }
    for (const Sample &s : samples) {
        if (s.features.size() != m.feature_count) {
            throw ValidationError("manifest declares " +
                                  std::to_string(m.feature_count) +
                                  " features, data has " +
                                  std::to_string(s.features.size()));
        }
    }
    return Dataset(std::move(samples), m.image);
}

void write_text_file(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::string read_text_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, ptr};
}

} // namespace qsimnet
