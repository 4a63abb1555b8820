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
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsimnet/data.hpp"
#include "qsimnet/training.hpp"

namespace qsimnet {

/// Pearson correlation of fractional (average-tie) ranks.
/// DegenerateInputError when either side is constant.
[[nodiscard]] double spearman(std::span<const double> xs,
                              std::span<const double> ys);

/// 1-based ranks; tied values share the mean of their positions.
[[nodiscard]] std::vector<double> fractional_ranks(std::span<const double> xs);

/// Linear-interpolated percentile, q in [0, 100].
[[nodiscard]] double percentile(std::vector<double> xs, double q);

/**
 * Model's distance between an anchor and a candidate. Pair models run the
 * two together (anchor in the first slot) and compare the anchor's and
 * partner's coordinate pairs; single-input models run each separately.
 */
[[nodiscard]] double model_distance(const TrainedModel &model,
                                    const Sample &anchor,
                                    const Sample &candidate,
                                    Objective metric = Objective::L1);

struct RankingResult {
    int anchor_id = 0;
    double spearman_rho = 0.0;
    std::vector<int> candidate_ids;
    std::vector<double> ground_truth_distance;
    std::vector<double> model_distance;
};

/// Spearman between histogram ground-truth distances and model distances.
[[nodiscard]] RankingResult
rank_against_ground_truth(const TrainedModel &model, const Sample &anchor,
                          std::span<const Sample> candidates,
                          Objective metric = Objective::L1);

struct GmmComponent {
    double weight = 0.0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
};

struct GmmModel {
    std::vector<GmmComponent> components;
    /// Mean per-point log-likelihood after each EM iteration.
    std::vector<double> log_likelihood_trace;
    bool converged = false;

    [[nodiscard]] int predict(std::span<const double> point) const;
    [[nodiscard]] std::vector<int>
    predict(const std::vector<std::vector<double>> &points) const;
    [[nodiscard]] double
    mean_log_likelihood(const std::vector<std::vector<double>> &points) const;
};

struct GmmOptions {
    int max_iterations = 100;
    double tolerance = 1e-6;
    double regularization = 1e-6;
};

/// Full-covariance EM with k-means++ initialization.
[[nodiscard]] GmmModel gmm_fit(const std::vector<std::vector<double>> &points,
                               int k, std::uint64_t seed,
                               const GmmOptions &options = {});

inline constexpr int kMaxPermutationClasses = 8;

/// Best accuracy over all cluster-to-label assignments (exhaustive, so at
/// most kMaxPermutationClasses distinct ids on either side).
[[nodiscard]] double cluster_accuracy(std::span<const int> assignments,
                                      std::span<const int> labels);

/// Coordinates used for clustering: the four measured values of the
/// (anchor, positive) run for pair models, both runs' readings otherwise.
[[nodiscard]] std::vector<double> embed_pair(const TrainedModel &model,
                                             const Sample &anchor,
                                             const Sample &positive);

struct ProjectionVariance {
    std::vector<double> sorted_values;
    double mean = 0.0;
};

/// Per pair (a, b): L1 distance between a's anchor coordinates in the run
/// with a first and in the run with a second. Pair models only.
[[nodiscard]] ProjectionVariance
projection_variance_cdf(const TrainedModel &model, const Dataset &dataset,
                        std::span<const std::pair<int, int>> pairs);

} // namespace qsimnet
