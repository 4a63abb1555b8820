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
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qsimnet/ansatz.hpp"

namespace qsimnet {

/// One dataset item. Images are channel-interleaved RGB (pixel-major) with
/// values in [0, 255]; tabular rows are arbitrary reals.
struct Sample {
    int id = 0;
    std::vector<double> features;
    std::optional<int> label;
};

struct ImageShape {
    int width = 0;
    int height = 0;
};

/// Samples indexed by id (samples[i].id == i).
class Dataset {
  public:
    Dataset() = default;
    /// Reassigns ids to positions; validates a shared, non-empty feature
    /// length.
    explicit Dataset(std::vector<Sample> samples,
                     std::optional<ImageShape> image = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const Sample &operator[](int id) const;
    [[nodiscard]] std::span<const Sample> samples() const noexcept {
        return samples_;
    }
    [[nodiscard]] std::size_t feature_count() const noexcept {
        return samples_.empty() ? 0 : samples_.front().features.size();
    }
    [[nodiscard]] bool labeled() const noexcept;
    [[nodiscard]] const std::optional<ImageShape> &image() const noexcept {
        return image_;
    }
    /// Distinct labels, ascending.
    [[nodiscard]] std::vector<int> classes() const;
    [[nodiscard]] std::vector<int> all_ids() const;

  private:
    std::vector<Sample> samples_;
    std::optional<ImageShape> image_;
};

struct Triplet {
    int anchor = 0;
    int positive = 0;
    int negative = 0;

    friend bool operator==(const Triplet &, const Triplet &) = default;
};

struct DatasetSplit {
    std::vector<int> train;
    std::vector<int> test;
};

/// out[2i] = a[i], out[2i+1] = b[i].
[[nodiscard]] std::vector<double> interweave(std::span<const double> a,
                                             std::span<const double> b);
/// Inverse of interweave. Needs an even length.
[[nodiscard]] std::pair<std::vector<double>, std::vector<double>>
deinterweave(std::span<const double> v);

/// Right zero-padding to the smallest power of two >= |v|.
[[nodiscard]] std::vector<double> pad_pow2(std::span<const double> v);

/// Right zero-padding to exactly `length`; ShapeError if |v| > length.
[[nodiscard]] std::vector<double> pad_to(std::span<const double> v,
                                         std::size_t length);

inline constexpr int kBinsPerChannel = 8;
inline constexpr int kHistogramBins = 3 * kBinsPerChannel;

/// 8 equal-width bins per channel over [0, 256), concatenated R, G, B.
/// Value v lands in bin floor(v / 32).
[[nodiscard]] std::vector<double> color_histogram(std::span<const double> rgb);

/// L1 distance between two histograms.
[[nodiscard]] double histogram_distance(std::span<const double> h1,
                                        std::span<const double> h2);

/// Random (anchor, a, b) draws from `pool`; of a and b, the one closer to the
/// anchor in histogram L1 becomes the positive (lower id on ties).
[[nodiscard]] std::vector<Triplet>
make_triplets_unlabeled(const Dataset &dataset, std::span<const int> pool,
                        std::size_t count, std::uint64_t seed);
[[nodiscard]] std::vector<Triplet>
make_triplets_unlabeled(const Dataset &dataset, std::size_t count,
                        std::uint64_t seed);

/// Anchor and positive share a class, the negative comes from another class.
[[nodiscard]] std::vector<Triplet>
make_triplets_labeled(const Dataset &dataset, std::span<const int> pool,
                      std::size_t count, std::uint64_t seed);
[[nodiscard]] std::vector<Triplet>
make_triplets_labeled(const Dataset &dataset, std::size_t count,
                      std::uint64_t seed);

/// Seeded permutation; the first round(train_fraction * N) ids train.
[[nodiscard]] DatasetSplit split_dataset(const Dataset &dataset,
                                         std::uint64_t seed,
                                         double train_fraction = 0.8);

/// Interweaves a (even slots) with b (odd slots) and pads to 2^n_qubits.
[[nodiscard]] std::vector<double> prepare_pair_input(const Sample &a,
                                                     const Sample &b,
                                                     const CircuitSpec &spec);

/// Single input padded to 2^n_qubits.
[[nodiscard]] std::vector<double> prepare_single_input(const Sample &s,
                                                       const CircuitSpec &spec);

/// Smallest qubit count holding `length` amplitudes.
[[nodiscard]] int qubits_for(std::size_t length);

} // namespace qsimnet
