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

#include "qsimnet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "qsimnet/error.hpp"
#include "qsimnet/loss.hpp"
#include "qsimnet/rng.hpp"

namespace qsimnet {

std::vector<double> fractional_ranks(std::span<const double> xs) {
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(xs.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i + 1;
        while (j < idx.size() && xs[idx[j]] == xs[idx[i]]) {
            ++j;
        }
        // positions i..j-1 (0-based) share rank mean((i+1)..j)
        const double r = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) {
            ranks[idx[t]] = r;
        }
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw ShapeError("spearman needs equal-length sequences");
    }
    if (xs.size() < 2) {
        throw ValidationError("spearman needs at least two observations");
    }
    const auto rx = fractional_ranks(xs);
    const auto ry = fractional_ranks(ys);
    const double n = static_cast<double>(rx.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateInputError(
            "spearman correlation is undefined for a constant sequence");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double percentile(std::vector<double> xs, double q) {
    if (xs.empty()) {
        throw ValidationError("percentile of an empty sequence");
    }
    if (!(q >= 0.0 && q <= 100.0)) {
        throw ValidationError("percentile rank must lie in [0, 100]");
    }
    std::sort(xs.begin(), xs.end());
    const double pos = q / 100.0 * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] + frac * (xs[hi] - xs[lo]);
}

double model_distance(const TrainedModel &model, const Sample &anchor,
                      const Sample &candidate, Objective metric) {
    const auto dist = [metric](std::span<const double> a,
                               std::span<const double> b) {
        return metric == Objective::L1 ? l1_distance(a, b)
                                       : squared_l2_distance(a, b);
    };
    if (model.spec.is_pair()) {
        const Projection p = forward_sliq(model.params, model.spec, anchor,
                                          candidate, AnchorSlot::First);
        return dist(p.anchor(), p.partner());
    }
    const Projection pa = forward_baseline(model.params, model.spec, anchor);
    const Projection pc = forward_baseline(model.params, model.spec, candidate);
    return dist(pa.anchor(), pc.anchor());
}

RankingResult rank_against_ground_truth(const TrainedModel &model,
                                        const Sample &anchor,
                                        std::span<const Sample> candidates,
                                        Objective metric) {
    if (candidates.size() < 2) {
        throw ValidationError("ranking needs at least two candidates");
    }
    const auto h_anchor = color_histogram(anchor.features);
    RankingResult r;
    r.anchor_id = anchor.id;
    for (const Sample &c : candidates) {
        r.candidate_ids.push_back(c.id);
        r.ground_truth_distance.push_back(
            histogram_distance(h_anchor, color_histogram(c.features)));
        r.model_distance.push_back(model_distance(model, anchor, c, metric));
    }
    r.spearman_rho = spearman(r.ground_truth_distance, r.model_distance);
    return r;
}

// ---------------------------------------------------------------- GMM

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ComponentCache {
    Eigen::LLT<MatrixXd> llt;
    double log_norm = 0.0; // -0.5 * (d log 2pi + log det)
};

ComponentCache cache_component(const GmmComponent &c) {
    ComponentCache cc;
    cc.llt.compute(c.covariance);
    if (cc.llt.info() != Eigen::Success) {
        throw DegenerateInputError("GMM covariance is not positive definite");
    }
    const MatrixXd &l = cc.llt.matrixL();
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        log_det += 2.0 * std::log(l(i, i));
    }
    const auto d = static_cast<double>(c.mean.size());
    cc.log_norm = -0.5 * (d * std::log(2.0 * std::numbers::pi) + log_det);
    return cc;
}

double log_density(const GmmComponent &c, const ComponentCache &cc,
                   const VectorXd &x) {
    const VectorXd z = cc.llt.matrixL().solve(x - c.mean);
    return cc.log_norm - 0.5 * z.squaredNorm();
}

/// log sum exp of (log w_k + log N_k(x)); fills per-component terms.
double log_mix(const std::vector<GmmComponent> &comps,
               const std::vector<ComponentCache> &caches, const VectorXd &x,
               std::vector<double> &terms) {
    terms.resize(comps.size());
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < comps.size(); ++k) {
        terms[k] = std::log(comps[k].weight) + log_density(comps[k], caches[k], x);
        mx = std::max(mx, terms[k]);
    }
    double s = 0.0;
    for (double t : terms) {
        s += std::exp(t - mx);
    }
    return mx + std::log(s);
}

std::vector<VectorXd> to_vectors(const std::vector<std::vector<double>> &pts) {
    std::vector<VectorXd> out;
    out.reserve(pts.size());
    const std::size_t d = pts.empty() ? 0 : pts.front().size();
    for (const auto &p : pts) {
        if (p.size() != d || d == 0) {
            throw ShapeError("GMM points must share a non-zero dimension");
        }
        out.emplace_back(Eigen::Map<const VectorXd>(p.data(),
                                                    static_cast<Eigen::Index>(d)));
    }
    return out;
}

std::vector<ComponentCache> cache_all(const std::vector<GmmComponent> &comps) {
    std::vector<ComponentCache> caches;
    caches.reserve(comps.size());
    for (const auto &c : comps) {
        caches.push_back(cache_component(c));
    }
    return caches;
}

/// k-means++ seeding: first center uniform, the rest by squared distance.
std::vector<VectorXd> kmeanspp(const std::vector<VectorXd> &xs, int k,
                               Rng &rng) {
    std::vector<VectorXd> centers;
    centers.push_back(xs[rng.below(xs.size())]);
    std::vector<double> d2(xs.size(), std::numeric_limits<double>::infinity());
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            d2[i] = std::min(d2[i], (xs[i] - centers.back()).squaredNorm());
            total += d2[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            double u = rng.uniform() * total;
            for (pick = 0; pick + 1 < xs.size(); ++pick) {
                u -= d2[pick];
                if (u < 0.0) {
                    break;
                }
            }
        } else {
            pick = rng.below(xs.size());
        }
        centers.push_back(xs[pick]);
    }
    return centers;
}

} // namespace

int GmmModel::predict(std::span<const double> point) const {
    const auto caches = cache_all(components);
    const VectorXd x = Eigen::Map<const VectorXd>(
        point.data(), static_cast<Eigen::Index>(point.size()));
    std::vector<double> terms;
    log_mix(components, caches, x, terms);
    return static_cast<int>(std::max_element(terms.begin(), terms.end()) -
                            terms.begin());
}

std::vector<int>
GmmModel::predict(const std::vector<std::vector<double>> &points) const {
    const auto caches = cache_all(components);
    std::vector<int> out;
    out.reserve(points.size());
    std::vector<double> terms;
    for (const VectorXd &x : to_vectors(points)) {
        log_mix(components, caches, x, terms);
        out.push_back(static_cast<int>(
            std::max_element(terms.begin(), terms.end()) - terms.begin()));
    }
    return out;
}

double GmmModel::mean_log_likelihood(
    const std::vector<std::vector<double>> &points) const {
    const auto caches = cache_all(components);
    std::vector<double> terms;
    double s = 0.0;
    for (const VectorXd &x : to_vectors(points)) {
        s += log_mix(components, caches, x, terms);
    }
    return s / static_cast<double>(points.size());
}

GmmModel gmm_fit(const std::vector<std::vector<double>> &points, int k,
                 std::uint64_t seed, const GmmOptions &options) {
    if (k < 1) {
        throw ValidationError("GMM needs at least one component");
    }
    if (points.size() < static_cast<std::size_t>(k)) {
        throw ValidationError("GMM with " + std::to_string(k) +
                              " components needs at least as many points, got " +
                              std::to_string(points.size()));
    }
    const std::vector<VectorXd> xs = to_vectors(points);
    const auto n = static_cast<double>(xs.size());
    const Eigen::Index d = xs.front().size();
    const MatrixXd reg = options.regularization * MatrixXd::Identity(d, d);

    VectorXd global_mean = VectorXd::Zero(d);
    for (const auto &x : xs) {
        global_mean += x;
    }
    global_mean /= n;
    MatrixXd global_cov = MatrixXd::Zero(d, d);
    for (const auto &x : xs) {
        global_cov += (x - global_mean) * (x - global_mean).transpose();
    }
    global_cov /= n;

    Rng rng(seed);
    GmmModel model;
    for (VectorXd &c : kmeanspp(xs, k, rng)) {
        model.components.push_back(
            {1.0 / k, std::move(c), global_cov + reg});
    }

    std::vector<std::vector<double>> resp(xs.size(),
                                          std::vector<double>(std::size_t(k)));
    std::vector<double> terms;
    double prev = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        // E step
        const auto caches = cache_all(model.components);
        double ll = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double lse = log_mix(model.components, caches, xs[i], terms);
            ll += lse;
            for (int c = 0; c < k; ++c) {
                resp[i][std::size_t(c)] = std::exp(terms[std::size_t(c)] - lse);
            }
        }
        ll /= n;
        // M step
        for (int c = 0; c < k; ++c) {
            const auto cu = static_cast<std::size_t>(c);
            double nk = 0.0;
            VectorXd mean = VectorXd::Zero(d);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                nk += resp[i][cu];
                mean += resp[i][cu] * xs[i];
            }
            GmmComponent &comp = model.components[cu];
            if (nk <= 0.0) {
                // Empty component: keep its mean, reset its spread.
                comp.weight = std::numeric_limits<double>::min();
                comp.covariance = global_cov + reg;
                continue;
            }
            mean /= nk;
            MatrixXd cov = MatrixXd::Zero(d, d);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const VectorXd diff = xs[i] - mean;
                cov += resp[i][cu] * diff * diff.transpose();
            }
            comp.weight = nk / n;
            comp.mean = std::move(mean);
            comp.covariance = cov / nk + reg;
        }
        // ll is the likelihood of the parameters entering this iteration.
        model.log_likelihood_trace.push_back(ll);
        if (std::abs(ll - prev) < options.tolerance) {
            model.converged = true;
            break;
        }
        prev = ll;
    }
    double wsum = 0.0;
    for (const auto &c : model.components) {
        wsum += c.weight;
    }
    for (auto &c : model.components) {
        c.weight /= wsum;
    }
    return model;
}

double cluster_accuracy(std::span<const int> assignments,
                        std::span<const int> labels) {
    if (assignments.size() != labels.size()) {
        throw ShapeError("assignments and labels differ in length");
    }
    if (assignments.empty()) {
        throw ValidationError("cluster accuracy of an empty assignment");
    }
    std::map<int, std::size_t> cluster_index;
    std::map<int, std::size_t> label_index;
    for (int a : assignments) {
        cluster_index.emplace(a, cluster_index.size());
    }
    for (int l : labels) {
        label_index.emplace(l, label_index.size());
    }
    const std::size_t k = std::max(cluster_index.size(), label_index.size());
    if (k > static_cast<std::size_t>(kMaxPermutationClasses)) {
        throw ResourceError("permutation search over " + std::to_string(k) +
                            " classes exceeds the limit of " +
                            std::to_string(kMaxPermutationClasses));
    }
    // counts[c][l] = points in cluster c with label l
    std::vector<std::vector<std::size_t>> counts(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        ++counts[cluster_index[assignments[i]]][label_index[labels[i]]];
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t best = 0;
    do {
        std::size_t hit = 0;
        for (std::size_t c = 0; c < k; ++c) {
            hit += counts[c][perm[c]];
        }
        best = std::max(best, hit);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(assignments.size());
}

std::vector<double> embed_pair(const TrainedModel &model, const Sample &anchor,
                               const Sample &positive) {
    if (model.spec.is_pair()) {
        const Projection p = forward_sliq(model.params, model.spec, anchor,
                                          positive, AnchorSlot::First);
        return {p.coords().begin(), p.coords().end()};
    }
    const Projection a = forward_baseline(model.params, model.spec, anchor);
    const Projection p = forward_baseline(model.params, model.spec, positive);
    return {a[0], a[1], p[0], p[1]};
}

ProjectionVariance
projection_variance_cdf(const TrainedModel &model, const Dataset &dataset,
                        std::span<const std::pair<int, int>> pairs) {
    if (pairs.empty()) {
        throw ValidationError("projection variance needs at least one pair");
    }
    if (!model.spec.is_pair()) {
        throw ValidationError("projection variance is defined for pair "
                              "models only");
    }
    ProjectionVariance out;
    out.sorted_values.reserve(pairs.size());
    for (const auto &[ia, ib] : pairs) {
        const Sample &a = dataset[ia];
        const Sample &b = dataset[ib];
        const Projection first =
            forward_sliq(model.params, model.spec, a, b, AnchorSlot::First);
        const Projection second =
            forward_sliq(model.params, model.spec, a, b, AnchorSlot::Second);
        out.sorted_values.push_back(l_pvm(first.anchor(), second.anchor()));
    }
    std::sort(out.sorted_values.begin(), out.sorted_values.end());
    out.mean = std::accumulate(out.sorted_values.begin(),
                               out.sorted_values.end(), 0.0) /
               static_cast<double>(out.sorted_values.size());
    return out;
}

} // namespace qsimnet
