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

#include "qsimnet/training.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsimnet/error.hpp"
#include "qsimnet/parallel.hpp"
#include "qsimnet/rng.hpp"

namespace qsimnet {

namespace {

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

/// Distance between two 2-vectors and its gradient with respect to `a`
/// (the gradient with respect to `b` is the negation).
double distance(Objective o, std::span<const double> a,
                std::span<const double> b, double da[2]) {
    double d = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double diff = a[i] - b[i];
        if (o == Objective::L1) {
            d += std::abs(diff);
            da[i] = sgn(diff);
        } else {
            d += diff * diff;
            da[i] = 2.0 * diff;
        }
    }
    return d;
}

/// Applies the optional hinge. Returns the objective term and whether its
/// gradient passes through.
std::pair<double, bool> hinge(double obj, const std::optional<double> &margin) {
    if (!margin) {
        return {obj, true};
    }
    const double shifted = obj + *margin;
    return shifted > 0.0 ? std::pair{shifted, true} : std::pair{0.0, false};
}

void check_spec_for_mode(const CircuitSpec &spec, Mode mode) {
    spec.validate();
    if (mode == Mode::Sliq && !spec.is_pair()) {
        throw ValidationError("sliq mode needs a four-coordinate circuit");
    }
    if (mode == Mode::Baseline && spec.is_pair()) {
        throw ValidationError("baseline mode needs a two-coordinate circuit");
    }
}

std::vector<double> pair_input(const CircuitSpec &spec, const Sample &anchor,
                               const Sample &partner, AnchorSlot slot) {
    return slot == AnchorSlot::First ? prepare_pair_input(anchor, partner, spec)
                                     : prepare_pair_input(partner, anchor, spec);
}

/// Measured position feeding each output coordinate. In the second slot the
/// anchor is read from the partner pair of measured qubits.
std::array<std::size_t, 4> slot_order(AnchorSlot slot) {
    if (slot == AnchorSlot::First) {
        return {0, 1, 2, 3};
    }
    return {2, 3, 0, 1};
}

Projection route(const Projection &raw, AnchorSlot slot) {
    const auto order = slot_order(slot);
    return Projection({raw[order[0]], raw[order[1]], raw[order[2]],
                       raw[order[3]]});
}

void route(ProjectionJacobian &jac, AnchorSlot slot) {
    if (slot == AnchorSlot::First) {
        return;
    }
    const auto order = slot_order(slot);
    std::vector<double> d(jac.d.size());
    for (std::size_t c = 0; c < 4; ++c) {
        const auto src = jac.row(order[c]);
        std::copy(src.begin(), src.end(),
                  d.begin() + static_cast<std::ptrdiff_t>(c * jac.n_params));
    }
    jac.d = std::move(d);
    jac.value = route(jac.value, slot);
}

/// Loss and parameter-shift gradient of one triplet, accumulated into grad.
double triplet_loss_and_gradient(const ParameterVector &params,
                                 const CircuitSpec &spec,
                                 const Dataset &dataset, const Triplet &t,
                                 const TrainConfig &config,
                                 std::span<double> grad) {
    const Sample &a = dataset[t.anchor];
    const Sample &p = dataset[t.positive];
    const Sample &n = dataset[t.negative];
    std::vector<ProjectionJacobian> runs;
    if (config.mode == Mode::Sliq) {
        runs.push_back(parameter_shift_jacobian(
            pair_input(spec, a, p, AnchorSlot::First), spec, params));
        runs.push_back(parameter_shift_jacobian(
            pair_input(spec, a, n, AnchorSlot::Second), spec, params));
        route(runs.back(), AnchorSlot::Second);
    } else {
        for (const Sample *s : {&a, &p, &n}) {
            runs.push_back(parameter_shift_jacobian(
                prepare_single_input(*s, spec), spec, params));
        }
    }
    const std::size_t per_run = spec.measured_qubits.size();
    std::vector<double> dcoord(per_run * runs.size(), 0.0);
    const double loss =
        config.mode == Mode::Sliq
            ? sliq_loss_from_projections(runs[0].value, runs[1].value, config,
                                         dcoord)
            : baseline_loss_from_projections(runs[0].value, runs[1].value,
                                             runs[2].value, config, dcoord);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        for (std::size_t c = 0; c < per_run; ++c) {
            const double w = dcoord[r * per_run + c];
            if (w == 0.0) {
                continue;
            }
            const auto row = runs[r].row(c);
            for (std::size_t j = 0; j < grad.size(); ++j) {
                grad[j] += w * row[j];
            }
        }
    }
    return loss;
}

double mean_loss(const ParameterVector &params, const CircuitSpec &spec,
                 const Dataset &dataset, std::span<const Triplet> batch,
                 const TrainConfig &config) {
    std::vector<double> losses(batch.size());
    parallel_for(batch.size(), config.workers, [&](std::size_t i) {
        losses[i] = triplet_loss(params, spec, dataset, batch[i], config);
    });
    return std::accumulate(losses.begin(), losses.end(), 0.0) /
           static_cast<double>(batch.size());
}

} // namespace

Objective TrainConfig::resolved_objective() const {
    if (objective) {
        return *objective;
    }
    return mode == Mode::Sliq ? Objective::L1 : Objective::SquaredL2;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ValidationError("learning rate must be positive");
    }
    if (batch_size < 1) {
        throw ValidationError("batch size must be positive");
    }
    if (epochs < 0) {
        throw ValidationError("epochs must be non-negative");
    }
    if (n_layers < 1) {
        throw ValidationError("layer count must be positive");
    }
    if (workers < 1) {
        throw ValidationError("worker count must be positive");
    }
    if (margin && !std::isfinite(*margin)) {
        throw ValidationError("margin must be finite");
    }
    weights.validate();
}

std::string to_string(Mode m) { return m == Mode::Sliq ? "sliq" : "baseline"; }

std::string to_string(GradientMode m) {
    return m == GradientMode::ParameterShift ? "parameter_shift"
                                             : "finite_difference";
}

std::string to_string(Objective o) {
    return o == Objective::L1 ? "l1" : "squared_l2";
}

Mode parse_mode(const std::string &s) {
    if (s == "sliq") {
        return Mode::Sliq;
    }
    if (s == "baseline") {
        return Mode::Baseline;
    }
    throw ValidationError("unknown mode '" + s + "' (sliq | baseline)");
}

GradientMode parse_gradient_mode(const std::string &s) {
    if (s == "parameter_shift") {
        return GradientMode::ParameterShift;
    }
    if (s == "finite_difference") {
        return GradientMode::FiniteDifference;
    }
    throw ValidationError("unknown gradient mode '" + s +
                          "' (parameter_shift | finite_difference)");
}

Objective parse_objective(const std::string &s) {
    if (s == "l1") {
        return Objective::L1;
    }
    if (s == "squared_l2") {
        return Objective::SquaredL2;
    }
    throw ValidationError("unknown objective '" + s + "' (l1 | squared_l2)");
}

int required_qubits(Mode mode, std::size_t feature_count) {
    return qubits_for(mode == Mode::Sliq ? 2 * feature_count : feature_count);
}

CircuitSpec make_spec(Mode mode, int n_qubits, int n_layers) {
    return mode == Mode::Sliq ? CircuitSpec::pair(n_qubits, n_layers)
                              : CircuitSpec::single(n_qubits, n_layers);
}

Projection forward_sliq(const ParameterVector &params, const CircuitSpec &spec,
                        const Sample &anchor, const Sample &partner,
                        AnchorSlot slot) {
    check_spec_for_mode(spec, Mode::Sliq);
    if (anchor.features.size() != partner.features.size()) {
        throw ShapeError("anchor and partner differ in feature length");
    }
    const StateVector state =
        run_circuit(pair_input(spec, anchor, partner, slot), spec, params);
    return route(measure_projection(state, spec), slot);
}

Projection forward_baseline(const ParameterVector &params,
                            const CircuitSpec &spec, const Sample &sample) {
    check_spec_for_mode(spec, Mode::Baseline);
    const StateVector state =
        run_circuit(prepare_single_input(sample, spec), spec, params);
    return measure_projection(state, spec);
}

double sliq_loss_from_projections(const Projection &run_pos,
                                  const Projection &run_neg,
                                  const TrainConfig &config,
                                  std::span<double> grad) {
    const Objective o = config.resolved_objective();
    const LossWeights &w = config.weights;
    const auto ap = run_pos.anchor();
    const auto p = run_pos.partner();
    const auto an = run_neg.anchor();
    const auto n = run_neg.partner();

    double d_ap_p[2];
    double d_an_n[2];
    const double obj =
        distance(o, ap, p, d_ap_p) - distance(o, an, n, d_an_n);
    const auto [obj_term, obj_live] = hinge(obj, config.margin);
    double d_pvm[2];
    const double pvm = distance(Objective::L1, ap, an, d_pvm);
    const double loss = l_total(w, obj_term, pvm);

    if (!grad.empty()) {
        if (grad.size() != 8) {
            throw ShapeError("sliq loss gradient needs 8 slots");
        }
        const double ka = obj_live ? w.alpha : 0.0;
        for (int i = 0; i < 2; ++i) {
            grad[i] = ka * d_ap_p[i] + w.beta * d_pvm[i];      // anchor, run 1
            grad[2 + i] = -ka * d_ap_p[i];                      // positive
            grad[4 + i] = -ka * d_an_n[i] - w.beta * d_pvm[i];  // anchor, run 2
            grad[6 + i] = ka * d_an_n[i];                       // negative
        }
    }
    return loss;
}

double baseline_loss_from_projections(const Projection &a, const Projection &p,
                                      const Projection &n,
                                      const TrainConfig &config,
                                      std::span<double> grad) {
    const Objective o = config.resolved_objective();
    const auto pa = a.anchor();
    const auto pp = p.anchor();
    const auto pn = n.anchor();
    double d_ap[2];
    double d_an[2];
    const double obj = distance(o, pa, pp, d_ap) - distance(o, pa, pn, d_an);
    const auto [obj_term, obj_live] = hinge(obj, config.margin);
    // Single-input runs have one anchor reading, so there is no consistency
    // term.
    const double loss = l_total(config.weights, obj_term, 0.0);

    if (!grad.empty()) {
        if (grad.size() != 6) {
            throw ShapeError("baseline loss gradient needs 6 slots");
        }
        const double ka = obj_live ? config.weights.alpha : 0.0;
        for (int i = 0; i < 2; ++i) {
            grad[i] = ka * (d_ap[i] - d_an[i]);
            grad[2 + i] = -ka * d_ap[i];
            grad[4 + i] = ka * d_an[i];
        }
    }
    return loss;
}

double sliq_triplet_loss(const ParameterVector &params, const CircuitSpec &spec,
                         const Dataset &dataset, const Triplet &triplet,
                         const TrainConfig &config) {
    const Sample &a = dataset[triplet.anchor];
    const Projection run_pos = forward_sliq(
        params, spec, a, dataset[triplet.positive], AnchorSlot::First);
    const Projection run_neg = forward_sliq(
        params, spec, a, dataset[triplet.negative], AnchorSlot::Second);
    return sliq_loss_from_projections(run_pos, run_neg, config);
}

double baseline_triplet_loss(const ParameterVector &params,
                             const CircuitSpec &spec, const Dataset &dataset,
                             const Triplet &triplet,
                             const TrainConfig &config) {
    return baseline_loss_from_projections(
        forward_baseline(params, spec, dataset[triplet.anchor]),
        forward_baseline(params, spec, dataset[triplet.positive]),
        forward_baseline(params, spec, dataset[triplet.negative]), config);
}

double triplet_loss(const ParameterVector &params, const CircuitSpec &spec,
                    const Dataset &dataset, const Triplet &triplet,
                    const TrainConfig &config) {
    return config.mode == Mode::Sliq
               ? sliq_triplet_loss(params, spec, dataset, triplet, config)
               : baseline_triplet_loss(params, spec, dataset, triplet, config);
}

BatchEvaluation evaluate_batch(const ParameterVector &params,
                               const CircuitSpec &spec, const Dataset &dataset,
                               std::span<const Triplet> batch,
                               const TrainConfig &config) {
    if (batch.empty()) {
        throw ValidationError("gradient needs a non-empty batch");
    }
    check_spec_for_mode(spec, config.mode);
    const std::size_t n_params = parameter_count(spec);
    if (params.size() != n_params) {
        throw ShapeError("parameter vector length does not match the circuit");
    }
    const auto scale = 1.0 / static_cast<double>(batch.size());
    BatchEvaluation out;
    out.gradient.assign(n_params, 0.0);

    if (config.gradient_mode == GradientMode::ParameterShift) {
        std::vector<std::vector<double>> grads(batch.size());
        std::vector<double> losses(batch.size());
        parallel_for(batch.size(), config.workers, [&](std::size_t i) {
            grads[i].assign(n_params, 0.0);
            losses[i] = triplet_loss_and_gradient(params, spec, dataset,
                                                  batch[i], config, grads[i]);
        });
        // Fixed summation order keeps results independent of worker count.
        for (std::size_t i = 0; i < batch.size(); ++i) {
            out.mean_loss += losses[i];
            for (std::size_t j = 0; j < n_params; ++j) {
                out.gradient[j] += grads[i][j];
            }
        }
        out.mean_loss *= scale;
        for (double &g : out.gradient) {
            g *= scale;
        }
        return out;
    }

    out.mean_loss = mean_loss(params, spec, dataset, batch, config);
    ParameterVector probe = params;
    const double h = kFiniteDifferenceStep;
    for (std::size_t j = 0; j < n_params; ++j) {
        const double orig = probe[j];
        probe[j] = orig + h;
        const double up = mean_loss(probe, spec, dataset, batch, config);
        probe[j] = orig - h;
        const double down = mean_loss(probe, spec, dataset, batch, config);
        probe[j] = orig;
        out.gradient[j] = (up - down) / (2.0 * h);
    }
    return out;
}

std::vector<double> gradient(const ParameterVector &params,
                             const CircuitSpec &spec, const Dataset &dataset,
                             std::span<const Triplet> batch,
                             const TrainConfig &config) {
    return evaluate_batch(params, spec, dataset, batch, config).gradient;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finalizer over (base, stream).
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<Triplet> make_training_triplets(const Dataset &dataset,
                                            std::span<const int> pool,
                                            std::size_t count,
                                            std::uint64_t seed) {
    return dataset.labeled()
               ? make_triplets_labeled(dataset, pool, count, seed)
               : make_triplets_unlabeled(dataset, pool, count, seed);
}

ParameterVector initial_parameters(const CircuitSpec &spec,
                                   std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values(parameter_count(spec));
    for (double &v : values) {
        v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return ParameterVector(std::move(values));
}

namespace stream {
constexpr std::uint64_t kInit = 1;
constexpr std::uint64_t kTriplets = 2;
constexpr std::uint64_t kOrder = 3;
} // namespace stream

TrainedModel train(const Dataset &dataset, std::span<const int> pool,
                   const CircuitSpec &spec, const TrainConfig &config) {
    config.validate();
    check_spec_for_mode(spec, config.mode);
    if (spec.n_layers != config.n_layers) {
        throw ValidationError("circuit layer count differs from the config");
    }
    const int needed = required_qubits(config.mode, dataset.feature_count());
    if (needed > spec.n_qubits) {
        throw ResourceError("dataset needs " + std::to_string(needed) +
                            " qubits, circuit has " +
                            std::to_string(spec.n_qubits));
    }

    TrainedModel model;
    model.spec = spec;
    model.config = config;
    model.feature_count = dataset.feature_count();
    model.params = initial_parameters(spec, derive_seed(config.seed, stream::kInit));
    if (config.epochs == 0) {
        return model;
    }

    const std::size_t count =
        config.triplet_count > 0 ? config.triplet_count : pool.size();
    const std::uint64_t triplet_seed =
        derive_seed(config.seed, stream::kTriplets);
    std::vector<Triplet> triplets =
        make_training_triplets(dataset, pool, count, triplet_seed);

    Rng order_rng(derive_seed(config.seed, stream::kOrder));
    std::vector<std::size_t> order(triplets.size());
    const auto batch_size = static_cast<std::size_t>(config.batch_size);
    std::vector<Triplet> batch;
    batch.reserve(batch_size);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.resample_triplets && epoch > 0) {
            triplets = make_training_triplets(
                dataset, pool, count,
                derive_seed(triplet_seed, static_cast<std::uint64_t>(epoch)));
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        order_rng.shuffle(std::span<std::size_t>(order));

        double loss_sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            const std::size_t end = std::min(order.size(), start + batch_size);
            batch.clear();
            for (std::size_t i = start; i < end; ++i) {
                batch.push_back(triplets[order[i]]);
            }
            const BatchEvaluation eval =
                evaluate_batch(model.params, spec, dataset, batch, config);
            loss_sum += eval.mean_loss * static_cast<double>(batch.size());
            for (std::size_t j = 0; j < eval.gradient.size(); ++j) {
                model.params[j] -= config.learning_rate * eval.gradient[j];
            }
        }
        model.loss_history.push_back(loss_sum /
                                     static_cast<double>(triplets.size()));
    }
    return model;
}

} // namespace qsimnet
