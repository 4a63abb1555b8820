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

#include "qsimnet/data.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "qsimnet/error.hpp"
#include "qsimnet/rng.hpp"

namespace qsimnet {

Dataset::Dataset(std::vector<Sample> samples, std::optional<ImageShape> image)
    : samples_(std::move(samples)), image_(image) {
    if (samples_.empty()) {
        return;
    }
    const std::size_t f = samples_.front().features.size();
    if (f == 0) {
        throw ValidationError("samples must have at least one feature");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (samples_[i].features.size() != f) {
            throw ValidationError("sample " + std::to_string(i) + " has " +
                                  std::to_string(samples_[i].features.size()) +
                                  " features, expected " + std::to_string(f));
        }
        samples_[i].id = static_cast<int>(i);
    }
    if (image_ && static_cast<std::size_t>(image_->width) * image_->height *
                          3 !=
                      f) {
        throw ValidationError("image shape does not match feature count");
    }
}

const Sample &Dataset::operator[](int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= samples_.size()) {
        throw IndexError("sample id " + std::to_string(id) + " out of range");
    }
    return samples_[static_cast<std::size_t>(id)];
}

bool Dataset::labeled() const noexcept {
    return !samples_.empty() &&
           std::all_of(samples_.begin(), samples_.end(),
                       [](const Sample &s) { return s.label.has_value(); });
}

std::vector<int> Dataset::classes() const {
    std::set<int> labels;
    for (const Sample &s : samples_) {
        if (s.label) {
            labels.insert(*s.label);
        }
    }
    return {labels.begin(), labels.end()};
}

std::vector<int> Dataset::all_ids() const {
    std::vector<int> ids(samples_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<int>(i);
    }
    return ids;
}

std::vector<double> interweave(std::span<const double> a,
                               std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("interweave needs equal lengths, got " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
    }
    std::vector<double> out(2 * a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[2 * i] = a[i];
        out[2 * i + 1] = b[i];
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>>
deinterweave(std::span<const double> v) {
    if (v.size() % 2 != 0) {
        throw ShapeError("deinterweave needs an even length");
    }
    std::vector<double> a(v.size() / 2);
    std::vector<double> b(v.size() / 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = v[2 * i];
        b[i] = v[2 * i + 1];
    }
    return {std::move(a), std::move(b)};
}

std::vector<double> pad_to(std::span<const double> v, std::size_t length) {
    if (v.size() > length) {
        throw ShapeError("vector of length " + std::to_string(v.size()) +
                         " does not fit in " + std::to_string(length));
    }
    std::vector<double> out(length, 0.0);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

std::vector<double> pad_pow2(std::span<const double> v) {
    if (v.empty()) {
        throw ShapeError("cannot pad an empty vector");
    }
    return pad_to(v, std::bit_ceil(v.size()));
}

int qubits_for(std::size_t length) {
    if (length == 0) {
        throw ShapeError("zero-length input");
    }
    return std::max(1, std::countr_zero(std::bit_ceil(length)));
}

std::vector<double> color_histogram(std::span<const double> rgb) {
    if (rgb.empty() || rgb.size() % 3 != 0) {
        throw ShapeError("RGB feature length must be a positive multiple of 3");
    }
    std::vector<double> bins(kHistogramBins, 0.0);
    for (std::size_t i = 0; i < rgb.size(); ++i) {
        const double v = rgb[i];
        if (!(v >= 0.0 && v <= 255.0)) {
            throw ValidationError("pixel value " + std::to_string(v) +
                                  " outside [0, 255]");
        }
        const auto channel = static_cast<int>(i % 3);
        const int bin = std::min(kBinsPerChannel - 1, static_cast<int>(v / 32.0));
        bins[static_cast<std::size_t>(channel * kBinsPerChannel + bin)] += 1.0;
    }
    return bins;
}

double histogram_distance(std::span<const double> h1,
                          std::span<const double> h2) {
    if (h1.size() != h2.size()) {
        throw ShapeError("histogram lengths differ");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < h1.size(); ++i) {
        d += std::abs(h1[i] - h2[i]);
    }
    return d;
}

namespace {

/// Three distinct positions into a pool of size n.
std::array<std::size_t, 3> draw_three(Rng &rng, std::size_t n) {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) {
        ++b;
    }
    std::size_t c = rng.below(n - 2);
    // Skip over a and b in ascending order.
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    if (c >= lo) {
        ++c;
    }
    if (c >= hi) {
        ++c;
    }
    return {a, b, c};
}

} // namespace

std::vector<Triplet> make_triplets_unlabeled(const Dataset &dataset,
                                             std::span<const int> pool,
                                             std::size_t count,
                                             std::uint64_t seed) {
    if (pool.size() < 3) {
        throw ValidationError("need at least 3 samples to form triplets");
    }
    std::map<int, std::vector<double>> hist;
    for (int id : pool) {
        if (!hist.contains(id)) {
            hist.emplace(id, color_histogram(dataset[id].features));
        }
    }
    Rng rng(seed);
    std::vector<Triplet> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        const auto [ia, ib, ic] = draw_three(rng, pool.size());
        const int anchor = pool[ia];
        const int b = pool[ib];
        const int c = pool[ic];
        const double db = histogram_distance(hist[anchor], hist[b]);
        const double dc = histogram_distance(hist[anchor], hist[c]);
        const bool b_positive = db < dc || (db == dc && b < c);
        out.push_back(b_positive ? Triplet{anchor, b, c}
                                 : Triplet{anchor, c, b});
    }
    return out;
}

std::vector<Triplet> make_triplets_unlabeled(const Dataset &dataset,
                                             std::size_t count,
                                             std::uint64_t seed) {
    const auto ids = dataset.all_ids();
    return make_triplets_unlabeled(dataset, ids, count, seed);
}

std::vector<Triplet> make_triplets_labeled(const Dataset &dataset,
                                           std::span<const int> pool,
                                           std::size_t count,
                                           std::uint64_t seed) {
    std::map<int, std::vector<int>> by_class;
    for (int id : pool) {
        const Sample &s = dataset[id];
        if (!s.label) {
            throw ValidationError("sample " + std::to_string(id) +
                                  " has no label");
        }
        by_class[*s.label].push_back(id);
    }
    if (by_class.size() < 2) {
        throw ValidationError("labeled triplets need at least two classes");
    }
    // Anchors come from classes that can also supply a distinct positive.
    std::vector<int> anchors;
    for (const auto &[label, ids] : by_class) {
        if (ids.size() >= 2) {
            anchors.insert(anchors.end(), ids.begin(), ids.end());
        }
    }
    if (anchors.empty()) {
        throw ValidationError("no class has two samples to pair as "
                              "anchor/positive");
    }
    Rng rng(seed);
    std::vector<Triplet> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        const int anchor = anchors[rng.below(anchors.size())];
        const int label = *dataset[anchor].label;
        const auto &same = by_class[label];
        int positive = anchor;
        while (positive == anchor) {
            positive = same[rng.below(same.size())];
        }
        const std::size_t others = pool.size() - same.size();
        std::size_t pick = rng.below(others);
        int negative = -1;
        for (const auto &[other, ids] : by_class) {
            if (other == label) {
                continue;
            }
            if (pick < ids.size()) {
                negative = ids[pick];
                break;
            }
            pick -= ids.size();
        }
        out.push_back({anchor, positive, negative});
    }
    return out;
}

std::vector<Triplet> make_triplets_labeled(const Dataset &dataset,
                                           std::size_t count,
                                           std::uint64_t seed) {
    const auto ids = dataset.all_ids();
    return make_triplets_labeled(dataset, ids, count, seed);
}

DatasetSplit split_dataset(const Dataset &dataset, std::uint64_t seed,
                           double train_fraction) {
    if (dataset.size() < 2) {
        throw ValidationError("need at least 2 samples to split");
    }
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ValidationError("train fraction must lie in (0, 1)");
    }
    std::vector<int> ids = dataset.all_ids();
    Rng rng(seed);
    rng.shuffle(std::span<int>(ids));
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(ids.size())));
    DatasetSplit split;
    split.train.assign(ids.begin(), ids.begin() + static_cast<long>(n_train));
    split.test.assign(ids.begin() + static_cast<long>(n_train), ids.end());
    return split;
}

std::vector<double> prepare_pair_input(const Sample &a, const Sample &b,
                                       const CircuitSpec &spec) {
    const std::size_t dim = std::size_t{1} << spec.n_qubits;
    if (2 * a.features.size() > dim) {
        throw ShapeError("pair of " + std::to_string(a.features.size()) +
                         "-feature samples needs " +
                         std::to_string(qubits_for(2 * a.features.size())) +
                         " qubits, circuit has " +
                         std::to_string(spec.n_qubits));
    }
    return pad_to(interweave(a.features, b.features), dim);
}

std::vector<double> prepare_single_input(const Sample &s,
                                         const CircuitSpec &spec) {
    const std::size_t dim = std::size_t{1} << spec.n_qubits;
    if (s.features.size() > dim) {
        throw ShapeError("sample of " + std::to_string(s.features.size()) +
                         " features needs " +
                         std::to_string(qubits_for(s.features.size())) +
                         " qubits, circuit has " +
                         std::to_string(spec.n_qubits));
    }
    return pad_to(s.features, dim);
}

} // namespace qsimnet
