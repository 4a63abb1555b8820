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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsimnet/ansatz.hpp"
#include "qsimnet/data.hpp"
#include "qsimnet/loss.hpp"

namespace qsimnet {

/// sliq: interwoven pair runs, (A,P) and (N,A). baseline: one run per input.
enum class Mode { Sliq, Baseline };

enum class GradientMode { ParameterShift, FiniteDifference };

/// Distance used by the triplet objective: L1 (absolute) or squared L2.
enum class Objective { L1, SquaredL2 };

/// Which interweave slot the anchor occupies: first = even positions.
enum class AnchorSlot { First, Second };

struct TrainConfig {
    double learning_rate = 0.01;
    int batch_size = 30;
    int epochs = 500;
    int n_layers = 4;
    LossWeights weights;
    GradientMode gradient_mode = GradientMode::ParameterShift;
    std::uint64_t seed = 0;
    Mode mode = Mode::Sliq;
    /// Unset: L1 for sliq, squared L2 for baseline.
    std::optional<Objective> objective;
    /// Hinge max(obj + margin, 0) on the objective term. Off by default.
    std::optional<double> margin;
    bool resample_triplets = false;
    /// Triplets generated per run; 0 means one per training sample.
    std::size_t triplet_count = 0;
    int workers = 1;

    [[nodiscard]] Objective resolved_objective() const;
    void validate() const;
};

struct TrainedModel {
    CircuitSpec spec;
    ParameterVector params;
    std::vector<double> loss_history;
    TrainConfig config;
    std::size_t feature_count = 0;
};

[[nodiscard]] std::string to_string(Mode m);
[[nodiscard]] std::string to_string(GradientMode m);
[[nodiscard]] std::string to_string(Objective o);
[[nodiscard]] Mode parse_mode(const std::string &s);
[[nodiscard]] GradientMode parse_gradient_mode(const std::string &s);
[[nodiscard]] Objective parse_objective(const std::string &s);

/// Qubits needed for a dataset's feature count: enough for an interwoven pair
/// (sliq) or a single sample (baseline, one fewer).
[[nodiscard]] int required_qubits(Mode mode, std::size_t feature_count);

/// The circuit topology for a mode: pair-measuring for sliq, two measured
/// qubits for baseline.
[[nodiscard]] CircuitSpec make_spec(Mode mode, int n_qubits, int n_layers);

/**
 * One interwoven run with the anchor in the requested slot. The first slot
 * takes the even amplitudes and is read from measured positions 0-1; the
 * second slot takes the odd amplitudes and is read from positions 2-3. The
 * result is reordered to (anchor_x, anchor_y, partner_x, partner_y).
 */
[[nodiscard]] Projection forward_sliq(const ParameterVector &params,
                                      const CircuitSpec &spec,
                                      const Sample &anchor,
                                      const Sample &partner, AnchorSlot slot);

/// One single-input run: embed, execute, read the two measured qubits.
[[nodiscard]] Projection forward_baseline(const ParameterVector &params,
                                          const CircuitSpec &spec,
                                          const Sample &sample);

/// Loss of the two-run protocol given both runs' projections. run_pos is
/// (A,P) with the anchor first, run_neg is (N,A) with the anchor second.
/// When grad is given it receives d(loss)/d(coord): 4 entries per run.
double sliq_loss_from_projections(const Projection &run_pos,
                                  const Projection &run_neg,
                                  const TrainConfig &config,
                                  std::span<double> grad = {});

/// Loss of the three-run protocol; grad gets 2 entries per run (A, P, N).
double baseline_loss_from_projections(const Projection &a, const Projection &p,
                                      const Projection &n,
                                      const TrainConfig &config,
                                      std::span<double> grad = {});

[[nodiscard]] double sliq_triplet_loss(const ParameterVector &params,
                                       const CircuitSpec &spec,
                                       const Dataset &dataset,
                                       const Triplet &triplet,
                                       const TrainConfig &config);

[[nodiscard]] double baseline_triplet_loss(const ParameterVector &params,
                                           const CircuitSpec &spec,
                                           const Dataset &dataset,
                                           const Triplet &triplet,
                                           const TrainConfig &config);

/// Dispatches on config.mode.
[[nodiscard]] double triplet_loss(const ParameterVector &params,
                                  const CircuitSpec &spec,
                                  const Dataset &dataset,
                                  const Triplet &triplet,
                                  const TrainConfig &config);

struct BatchEvaluation {
    double mean_loss = 0.0;
    std::vector<double> gradient;
};

/// Mean batch loss and its gradient, using config.gradient_mode:
/// parameter shift chained through the loss, or central differences of the
/// mean loss with step kFiniteDifferenceStep.
[[nodiscard]] BatchEvaluation evaluate_batch(const ParameterVector &params,
                                             const CircuitSpec &spec,
                                             const Dataset &dataset,
                                             std::span<const Triplet> batch,
                                             const TrainConfig &config);

[[nodiscard]] std::vector<double> gradient(const ParameterVector &params,
                                           const CircuitSpec &spec,
                                           const Dataset &dataset,
                                           std::span<const Triplet> batch,
                                           const TrainConfig &config);

inline constexpr double kFiniteDifferenceStep = 1e-4;

/// Triplets for a training pool: labeled construction when the dataset is
/// labeled, histogram construction otherwise.
[[nodiscard]] std::vector<Triplet> make_training_triplets(
    const Dataset &dataset, std::span<const int> pool, std::size_t count,
    std::uint64_t seed);

/// Uniform [0, 2pi) initial angles.
[[nodiscard]] ParameterVector initial_parameters(const CircuitSpec &spec,
                                                 std::uint64_t seed);

/// Minibatch gradient descent over triplets drawn from `pool`.
[[nodiscard]] TrainedModel train(const Dataset &dataset,
                                 std::span<const int> pool,
                                 const CircuitSpec &spec,
                                 const TrainConfig &config);

/// Seed for an independent random stream derived from a base seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base,
                                        std::uint64_t stream);

} // namespace qsimnet
