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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracle.hpp"
#include "qsimnet/data.hpp"
#include "qsimnet/error.hpp"
#include "qsimnet/evaluation.hpp"
#include "qsimnet/loss.hpp"
#include "qsimnet/rng.hpp"
#include "qsimnet/training.hpp"

using namespace qsimnet;

namespace {

TrainedModel random_model(Mode mode, int n_qubits, int layers,
                          std::size_t features, std::uint64_t seed) {
    TrainedModel m;
    m.config.mode = mode;
    m.config.n_layers = layers;
    m.spec = make_spec(mode, n_qubits, layers);
    m.params = initial_parameters(m.spec, seed);
    m.feature_count = features;
    return m;
}

Dataset random_images(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Sample> s;
    for (int i = 0; i < n; ++i) {
        std::vector<double> f(12);
        for (auto &v : f) {
            v = static_cast<double>(rng.below(256));
        }
        s.push_back({0, f, std::nullopt});
    }
    return Dataset(s);
}

} // namespace

TEST_SUITE("evaluation") {

TEST_CASE("spearman examples") {
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(spearman(x, x) == doctest::Approx(1.0));
    CHECK(spearman(x, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS((void)spearman(x, std::vector<double>{2, 2, 2, 2}),
                    DegenerateInputError);
    CHECK_THROWS_AS((void)spearman(std::vector<double>{1}, std::vector<double>{1}),
                    ValidationError);
    CHECK_THROWS_AS((void)spearman(x, std::vector<double>{1, 2}), ShapeError);
}

TEST_CASE("fractional ranks average ties") {
    CHECK(fractional_ranks(std::vector<double>{10, 20, 20, 5}) ==
          std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("property: spearman matches the rank-difference formula") {
    Rng rng(40);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.normal();
            y[i] = rng.normal();
        }
        CHECK(std::abs(spearman(x, y) - oracle::spearman_no_ties(x, y)) < 1e-12);
    }
}

TEST_CASE("property: spearman is invariant under monotone transforms") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng.below(30);
        std::vector<double> x(n), y(n), tx(n), ty(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform(-2, 2);
            y[i] = std::round(rng.uniform(0, 5)); // ties
            tx[i] = std::exp(3 * x[i]) - 7;
            ty[i] = std::pow(y[i] + 1, 3);
        }
        if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
            continue;
        }
        const double r = spearman(x, y);
        CHECK(std::abs(r - spearman(tx, ty)) < 1e-12);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
    }
}

TEST_CASE("percentile") {
    const std::vector<double> v{4, 1, 3, 2};
    CHECK(percentile(v, 0) == 1);
    CHECK(percentile(v, 100) == 4);
    CHECK(percentile(v, 50) == 2.5);
    CHECK(percentile(v, 25) == 1.75);
    CHECK_THROWS_AS((void)percentile({}, 50), ValidationError);
}

TEST_CASE("model distance") {
    const Dataset d = random_images(5, 1);
    const auto m = random_model(Mode::Sliq, 5, 2, 12, 3);
    const double self = model_distance(m, d[0], d[0]);
    CHECK(self >= 0.0);
    for (int i = 1; i < 5; ++i) {
        const double x = model_distance(m, d[0], d[i]);
        CHECK(x >= 0.0);
        CHECK(x <= 4.0);
        CHECK(x == model_distance(m, d[0], d[i]));
    }
    const auto b = random_model(Mode::Baseline, 4, 2, 12, 3);
    CHECK(model_distance(b, d[1], d[1]) == 0.0);
    CHECK(model_distance(b, d[1], d[2]) >= 0.0);
}

TEST_CASE("ranking") {
    const Dataset d = random_images(30, 2);
    const auto m = random_model(Mode::Sliq, 5, 2, 12, 4);
    const std::vector<Sample> cands(d.samples().begin() + 1, d.samples().end());
    const auto r = rank_against_ground_truth(m, d[0], cands);
    CHECK(r.candidate_ids.size() == 29);
    CHECK(r.spearman_rho >= -1.0);
    CHECK(r.spearman_rho <= 1.0);
    const auto h0 = color_histogram(d[0].features);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        CHECK(r.ground_truth_distance[i] ==
              histogram_distance(h0, color_histogram(cands[i].features)));
        CHECK(r.model_distance[i] == model_distance(m, d[0], cands[i]));
    }
    CHECK(spearman(r.ground_truth_distance, r.model_distance) == r.spearman_rho);
    const auto again = rank_against_ground_truth(m, d[0], cands);
    CHECK(again.spearman_rho == r.spearman_rho);

    // two candidates with distinct histogram distances
    std::size_t other = 1;
    while (r.ground_truth_distance[other] == r.ground_truth_distance[0]) {
        ++other;
    }
    const std::vector<Sample> two{cands[0], cands[other]};
    const auto r2 = rank_against_ground_truth(m, d[0], two);
    CHECK(std::abs(std::abs(r2.spearman_rho) - 1.0) < 1e-12);
    const std::vector<Sample> one{d[3]};
    CHECK_THROWS_AS((void)rank_against_ground_truth(m, d[0], one),
                    ValidationError);
}

TEST_CASE("untrained models rank near chance") {
    const Dataset d = random_images(80, 5);
    std::vector<double> rhos;
    for (int a = 0; a < 50; ++a) {
        const auto m = random_model(Mode::Sliq, 5, 2, 12, 100 + a);
        std::vector<Sample> cands;
        for (int c = 50; c < 80; ++c) {
            cands.push_back(d[c]);
        }
        rhos.push_back(rank_against_ground_truth(m, d[a], cands).spearman_rho);
    }
    CHECK(std::abs(percentile(rhos, 50)) < 0.15);
}

TEST_CASE("gmm: separated blobs") {
    Rng rng(50);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 200; ++i) {
        const double cx = i % 2 == 0 ? -1.0 : 1.0;
        pts.push_back({cx + 0.05 * rng.normal(), 0.5 + 0.05 * rng.normal(),
                       cx * 0.3 + 0.05 * rng.normal(), 0.05 * rng.normal()});
    }
    const auto g = gmm_fit(pts, 2, 7);
    REQUIRE(g.components.size() == 2);
    std::vector<double> xs{g.components[0].mean[0], g.components[1].mean[0]};
    std::sort(xs.begin(), xs.end());
    CHECK(std::abs(xs[0] + 1.0) < 0.05);
    CHECK(std::abs(xs[1] - 1.0) < 0.05);
    CHECK(g.components[0].weight + g.components[1].weight ==
          doctest::Approx(1.0).epsilon(1e-9));
    std::vector<int> labels;
    for (int i = 0; i < 200; ++i) {
        labels.push_back(i % 2);
    }
    CHECK(cluster_accuracy(g.predict(pts), labels) == 1.0);
    for (const auto &c : g.components) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.covariance);
        CHECK(es.eigenvalues().minCoeff() >= 1e-6 * (1 - 1e-9));
    }
}

TEST_CASE("gmm: one component is the sample mean") {
    Rng rng(51);
    std::vector<std::vector<double>> pts;
    std::vector<double> mean(3, 0.0);
    for (int i = 0; i < 50; ++i) {
        pts.push_back({rng.normal(), rng.normal(2, 1), rng.uniform(0, 1)});
        for (int j = 0; j < 3; ++j) {
            mean[std::size_t(j)] += pts.back()[std::size_t(j)] / 50.0;
        }
    }
    const auto g = gmm_fit(pts, 1, 1);
    CHECK(g.components[0].weight == doctest::Approx(1.0));
    for (int j = 0; j < 3; ++j) {
        CHECK(g.components[0].mean[j] == doctest::Approx(mean[std::size_t(j)]).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)gmm_fit(pts, 51, 1), ValidationError);
    CHECK_THROWS_AS((void)gmm_fit(pts, 0, 1), ValidationError);
}

TEST_CASE("property: EM log-likelihood is non-decreasing") {
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> pts;
        const int k = 2 + static_cast<int>(rng.below(3));
        for (int i = 0; i < 150; ++i) {
            const double c = static_cast<double>(rng.below(static_cast<std::uint64_t>(k)));
            pts.push_back({c + 0.4 * rng.normal(), -c + 0.4 * rng.normal(),
                           0.3 * rng.normal(), 0.3 * rng.normal()});
        }
        const auto g = gmm_fit(pts, k, rng.next());
        for (std::size_t i = 1; i < g.log_likelihood_trace.size(); ++i) {
            CHECK(g.log_likelihood_trace[i] >= g.log_likelihood_trace[i - 1] - 1e-9);
        }
        CHECK(g.log_likelihood_trace.size() <= 100);
    }
}

TEST_CASE("gmm is deterministic under a seed") {
    Rng rng(53);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 60; ++i) {
        pts.push_back({rng.normal(), rng.normal()});
    }
    const auto a = gmm_fit(pts, 3, 9);
    const auto b = gmm_fit(pts, 3, 9);
    CHECK(a.log_likelihood_trace == b.log_likelihood_trace);
    CHECK(a.predict(pts) == b.predict(pts));
}

TEST_CASE("cluster accuracy") {
    const std::vector<int> labels{0, 0, 1, 1, 2, 2};
    CHECK(cluster_accuracy(labels, labels) == 1.0);
    CHECK(cluster_accuracy(std::vector<int>{2, 2, 0, 0, 1, 1}, labels) == 1.0);
    CHECK(cluster_accuracy(std::vector<int>{5, 5, 9, 9, 7, 7}, labels) == 1.0);
    CHECK(cluster_accuracy(std::vector<int>{0, 1, 0, 1, 0, 1},
                           std::vector<int>{0, 0, 0, 1, 1, 1}) >= 0.5);
    CHECK(cluster_accuracy(std::vector<int>{0, 0, 0, 0}, std::vector<int>{0, 0, 0, 0}) == 1.0);
    std::vector<int> nine{0, 1, 2, 3, 4, 5, 6, 7, 8};
    CHECK_THROWS_AS((void)cluster_accuracy(nine, nine), ResourceError);
    CHECK_THROWS_AS((void)cluster_accuracy(std::vector<int>{0}, labels), ShapeError);
}

TEST_CASE("property: cluster accuracy is invariant under relabeling") {
    Rng rng(54);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> a(40), l(40);
        for (int i = 0; i < 40; ++i) {
            a[std::size_t(i)] = static_cast<int>(rng.below(4));
            l[std::size_t(i)] = static_cast<int>(rng.below(4));
        }
        std::vector<int> perm{0, 1, 2, 3};
        rng.shuffle(std::span<int>(perm));
        std::vector<int> relabeled;
        for (int x : a) {
            relabeled.push_back(perm[std::size_t(x)]);
        }
        CHECK(cluster_accuracy(a, l) == cluster_accuracy(relabeled, l));
        CHECK(cluster_accuracy(a, l) >= 0.25);
    }
}

TEST_CASE("projection variance") {
    const Dataset d = random_images(10, 6);
    const auto m = random_model(Mode::Sliq, 5, 2, 12, 8);
    std::vector<std::pair<int, int>> pairs{{0, 1}, {2, 3}, {4, 4}, {5, 9}};
    const auto pv = projection_variance_cdf(m, d, pairs);
    REQUIRE(pv.sorted_values.size() == 4);
    CHECK(std::is_sorted(pv.sorted_values.begin(), pv.sorted_values.end()));
    CHECK(pv.sorted_values.front() >= 0.0);
    // (a, a): slot First reads qubits 0-1, slot Second reads 2-3
    const auto self = forward_sliq(m.params, m.spec, d[4], d[4], AnchorSlot::First);
    const double expect = l_pvm(self.anchor(), self.partner());
    CHECK(std::any_of(pv.sorted_values.begin(), pv.sorted_values.end(),
                      [&](double v) { return std::abs(v - expect) < 1e-12; }));
    const auto b = random_model(Mode::Baseline, 4, 2, 12, 8);
    CHECK_THROWS_AS((void)projection_variance_cdf(b, d, pairs), ValidationError);
    CHECK_THROWS_AS((void)projection_variance_cdf(m, d, {}), ValidationError);
}

TEST_CASE("pair embedding") {
    const Dataset d = random_images(3, 7);
    const auto m = random_model(Mode::Sliq, 5, 2, 12, 9);
    const auto e = embed_pair(m, d[0], d[1]);
    REQUIRE(e.size() == 4);
    const auto p = forward_sliq(m.params, m.spec, d[0], d[1], AnchorSlot::First);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(e[i] == p[i]);
    }
}

} // TEST_SUITE
