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

#include "qsimnet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsimnet/error.hpp"
#include "qsimnet/evaluation.hpp"
#include "qsimnet/io.hpp"
#include "qsimnet/model_io.hpp"
#include "qsimnet/rng.hpp"
#include "qsimnet/synthetic.hpp"

namespace qsimnet {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct GenArgs {
    std::string kind;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out;
    int width = 8;
    int height = 8;
    int dim = 8;
    double stddev = 0.15;
};

struct TrainArgs {
    std::string manifest;
    std::string out = "out";
    std::string mode = "sliq";
    int epochs = 500;
    double lr = 0.01;
    int batch_size = 30;
    int layers = 4;
    double alpha = 1.0;
    double beta = 1.0;
    std::string gradient = "parameter_shift";
    std::uint64_t seed = 0;
    int workers = 1;
    std::size_t triplets = 0;
    int qubits = 0;
    std::string objective;
    std::optional<double> margin;
    bool resample_triplets = false;
};

struct EvalArgs {
    std::string model;
    std::string manifest;
    std::string out = "out";
    std::uint64_t seed = 0;
    int anchors = 30;
    int candidates = 50;
    std::string metric = "l1";
    int n_fit = 1000;
    int pairs = 1000;
};

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
}

std::string json_to_flag_value(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    return v.dump();
}

bool flag_given(const std::vector<std::string> &args, const std::string &flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string &a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

/// Appends values from --config FILE for every flag not given explicitly.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        }
    }
    if (!config_path) {
        return args;
    }
    json j;
    try {
        j = json::parse(read_text_file(*config_path));
    } catch (const json::exception &e) {
        throw ValidationError("malformed config " + *config_path + ": " +
                              e.what());
    }
    if (!j.is_object()) {
        throw ValidationError("config " + *config_path +
                              " must be a JSON object");
    }
    std::vector<std::string> merged = args;
    for (const auto &[key, value] : j.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin() + 2, flag.end(), '_', '-');
        if (flag == "--config" || flag_given(args, flag) || value.is_null()) {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                merged.push_back(flag);
            }
            continue;
        }
        merged.push_back(flag);
        merged.push_back(json_to_flag_value(value));
    }
    return merged;
}

// ------------------------------------------------------------ gen-synth

void cmd_gen_synth(const GenArgs &a, std::ostream &out) {
    if (a.n < 1) {
        throw ValidationError("--n must be positive");
    }
    const fs::path dir(a.out);
    if (a.kind == "color_blobs") {
        write_color_blobs(dir, {a.n, a.width, a.height, a.seed});
    } else if (a.kind == "two_class_gauss") {
        write_two_class_gauss(dir, {a.n, a.dim, a.stddev, a.seed});
    } else {
        throw ValidationError("unknown --kind '" + a.kind +
                              "' (color_blobs | two_class_gauss)");
    }
    out << "wrote " << a.n << " samples and manifest.json to " << dir.string()
        << "\n";
}

// ---------------------------------------------------------------- train

TrainConfig train_config(const TrainArgs &a) {
    TrainConfig c;
    c.mode = parse_mode(a.mode);
    c.learning_rate = a.lr;
    c.batch_size = a.batch_size;
    c.epochs = a.epochs;
    c.n_layers = a.layers;
    c.weights = {a.alpha, a.beta};
    c.gradient_mode = parse_gradient_mode(a.gradient);
    c.seed = a.seed;
    if (!a.objective.empty()) {
        c.objective = parse_objective(a.objective);
    }
    c.margin = a.margin;
    c.resample_triplets = a.resample_triplets;
    c.triplet_count = a.triplets;
    c.workers = a.workers;
    c.validate();
    return c;
}

void cmd_train(const TrainArgs &a, std::ostream &out) {
    const TrainConfig config = train_config(a);
    const Dataset dataset = load_dataset(a.manifest);
    const int needed = required_qubits(config.mode, dataset.feature_count());
    const int qubits = a.qubits > 0 ? a.qubits : needed;
    if (qubits < needed) {
        throw ResourceError("dataset of " +
                            std::to_string(dataset.feature_count()) +
                            "-feature samples requires " +
                            std::to_string(needed) + " qubits in " + a.mode +
                            " mode, but only " + std::to_string(qubits) +
                            " are available");
    }
    const CircuitSpec spec = make_spec(config.mode, qubits, config.n_layers);
    const DatasetSplit split = split_dataset(dataset, config.seed);
    const TrainedModel model = train(dataset, split.train, spec, config);

    const fs::path dir(a.out);
    ensure_dir(dir);
    save_model(dir / "model.json", model);
    std::string csv = "epoch,mean_loss\n";
    for (std::size_t e = 0; e < model.loss_history.size(); ++e) {
        csv += std::to_string(e + 1) + "," +
               format_double(model.loss_history[e]) + "\n";
    }
    write_text_file(dir / "loss_history.csv", csv);

    ordered_json echo = ordered_json::parse(config_to_json(config));
    echo["manifest"] = a.manifest;
    echo["out"] = a.out;
    echo["qubits"] = qubits;
    write_text_file(dir / "train_config.json", echo.dump(2) + "\n");

    out << "trained " << to_string(config.mode) << " model: " << qubits
        << " qubits, " << config.n_layers << " layers, "
        << parameter_count(spec) << " parameters, " << model.loss_history.size()
        << " epochs";
    if (!model.loss_history.empty()) {
        out << ", final loss " << format_double(model.loss_history.back());
    }
    out << "\n";
}

// ----------------------------------------------------------------- eval

struct Loaded {
    TrainedModel model;
    Dataset dataset;
    DatasetSplit split;
};

Loaded load_for_eval(const EvalArgs &a) {
    Loaded l{load_model(a.model), load_dataset(a.manifest), {}};
    if (l.dataset.feature_count() != l.model.feature_count) {
        throw ValidationError("model expects " +
                              std::to_string(l.model.feature_count) +
                              " features, dataset has " +
                              std::to_string(l.dataset.feature_count()));
    }
    l.split = split_dataset(l.dataset, l.model.config.seed);
    return l;
}

void write_eval_echo(const fs::path &file, const EvalArgs &a,
                     const std::string &command) {
    ordered_json j;
    j["command"] = command;
    j["model"] = a.model;
    j["manifest"] = a.manifest;
    j["out"] = a.out;
    j["seed"] = a.seed;
    if (command == "eval-rank") {
        j["anchors"] = a.anchors;
        j["candidates"] = a.candidates;
        j["metric"] = a.metric;
    } else if (command == "eval-classify") {
        j["n_fit"] = a.n_fit;
    } else {
        j["pairs"] = a.pairs;
    }
    write_text_file(file, j.dump(2) + "\n");
}

void cmd_eval_rank(const EvalArgs &a, std::ostream &out) {
    if (a.candidates < 2) {
        throw ValidationError("--candidates must be at least 2");
    }
    if (a.anchors < 1) {
        throw ValidationError("--anchors must be positive");
    }
    const Objective metric = parse_objective(a.metric);
    const Loaded l = load_for_eval(a);
    if (static_cast<std::size_t>(a.anchors) > l.split.test.size()) {
        throw ValidationError("--anchors " + std::to_string(a.anchors) +
                              " exceeds the " +
                              std::to_string(l.split.test.size()) +
                              " held-out samples");
    }
    if (static_cast<std::size_t>(a.candidates) + 1 > l.dataset.size()) {
        throw ValidationError("--candidates exceeds the dataset size");
    }
    Rng rng(a.seed);
    std::vector<int> anchors = l.split.test;
    rng.shuffle(std::span<int>(anchors));
    anchors.resize(static_cast<std::size_t>(a.anchors));

    std::string ranking = "anchor_id,candidate_id,ground_truth_distance,"
                          "model_distance\n";
    std::string per_anchor = "anchor_id,spearman_rho\n";
    std::vector<double> rhos;
    for (int anchor : anchors) {
        std::vector<int> pool;
        for (int id : l.dataset.all_ids()) {
            if (id != anchor) {
                pool.push_back(id);
            }
        }
        rng.shuffle(std::span<int>(pool));
        std::vector<Sample> candidates;
        for (std::size_t i = 0; i < static_cast<std::size_t>(a.candidates); ++i) {
            candidates.push_back(l.dataset[pool[i]]);
        }
        const RankingResult r = rank_against_ground_truth(
            l.model, l.dataset[anchor], candidates, metric);
        for (std::size_t i = 0; i < r.candidate_ids.size(); ++i) {
            ranking += std::to_string(anchor) + "," +
                       std::to_string(r.candidate_ids[i]) + "," +
                       format_double(r.ground_truth_distance[i]) + "," +
                       format_double(r.model_distance[i]) + "\n";
        }
        per_anchor += std::to_string(anchor) + "," +
                      format_double(r.spearman_rho) + "\n";
        rhos.push_back(r.spearman_rho);
    }

    const fs::path dir(a.out);
    ensure_dir(dir);
    write_text_file(dir / "ranking.csv", ranking);
    write_text_file(dir / "rho_per_anchor.csv", per_anchor);
    ordered_json s;
    s["mode"] = to_string(l.model.config.mode);
    s["n_anchors"] = a.anchors;
    s["n_candidates"] = a.candidates;
    s["metric"] = a.metric;
    s["p25"] = percentile(rhos, 25);
    s["p50"] = percentile(rhos, 50);
    s["p75"] = percentile(rhos, 75);
    s["p100"] = percentile(rhos, 100);
    write_text_file(dir / "rank_summary.json", s.dump(2) + "\n");
    write_eval_echo(dir / "eval_rank_config.json", a, "eval-rank");
    out << "median spearman rho " << format_double(percentile(rhos, 50))
        << " over " << a.anchors << " anchors\n";
}

void cmd_eval_classify(const EvalArgs &a, std::ostream &out) {
    if (a.n_fit < 1) {
        throw ValidationError("--n-fit must be positive");
    }
    const Loaded l = load_for_eval(a);
    if (!l.dataset.labeled()) {
        throw ValidationError("classification needs a labeled manifest");
    }
    const std::vector<int> classes = l.dataset.classes();

    std::vector<int> anchors = l.split.test;
    Rng rng(a.seed);
    rng.shuffle(std::span<int>(anchors));
    if (anchors.size() > static_cast<std::size_t>(a.n_fit)) {
        anchors.resize(static_cast<std::size_t>(a.n_fit));
    }
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
    for (int anchor : anchors) {
        const int label = *l.dataset[anchor].label;
        // Positive partner from the held-out set when it has one.
        std::vector<int> same;
        for (int id : l.split.test) {
            if (id != anchor && *l.dataset[id].label == label) {
                same.push_back(id);
            }
        }
        if (same.empty()) {
            for (int id : l.dataset.all_ids()) {
                if (id != anchor && *l.dataset[id].label == label) {
                    same.push_back(id);
                }
            }
        }
        const int positive = same.empty() ? anchor : same[rng.below(same.size())];
        points.push_back(embed_pair(l.model, l.dataset[anchor], l.dataset[positive]));
        labels.push_back(label);
    }
    const auto k = static_cast<int>(classes.size());
    const GmmModel gmm = gmm_fit(points, k, a.seed);
    const std::vector<int> assigned = gmm.predict(points);
    const double accuracy = cluster_accuracy(assigned, labels);

    const fs::path dir(a.out);
    ensure_dir(dir);
    ordered_json s;
    s["mode"] = to_string(l.model.config.mode);
    s["k"] = k;
    s["n_points"] = points.size();
    s["accuracy"] = accuracy;
    s["gmm_converged"] = gmm.converged;
    s["gmm_iterations"] = gmm.log_likelihood_trace.size();
    write_text_file(dir / "classify_summary.json", s.dump(2) + "\n");
    write_eval_echo(dir / "eval_classify_config.json", a, "eval-classify");
    out << "cluster accuracy " << format_double(accuracy) << " on "
        << points.size() << " points, k = " << k << "\n";
}

void cmd_eval_pvm(const EvalArgs &a, std::ostream &out) {
    if (a.pairs < 1) {
        throw ValidationError("--pairs must be positive");
    }
    const Loaded l = load_for_eval(a);
    const std::vector<int> &pool =
        l.split.test.size() >= 2 ? l.split.test : l.split.train;
    Rng rng(a.seed);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < a.pairs; ++i) {
        const std::size_t x = rng.below(pool.size());
        std::size_t y = rng.below(pool.size() - 1);
        if (y >= x) {
            ++y;
        }
        pairs.emplace_back(pool[x], pool[y]);
    }
    const ProjectionVariance pv = projection_variance_cdf(l.model, l.dataset, pairs);

    const fs::path dir(a.out);
    ensure_dir(dir);
    std::string csv = "value,cdf\n";
    const auto n = static_cast<double>(pv.sorted_values.size());
    for (std::size_t i = 0; i < pv.sorted_values.size(); ++i) {
        csv += format_double(pv.sorted_values[i]) + "," +
               format_double(static_cast<double>(i + 1) / n) + "\n";
    }
    write_text_file(dir / "pvm_cdf.csv", csv);
    ordered_json s;
    s["n_pairs"] = a.pairs;
    s["mean"] = pv.mean;
    s["median"] = percentile(pv.sorted_values, 50);
    write_text_file(dir / "pvm_summary.json", s.dump(2) + "\n");
    write_eval_echo(dir / "eval_pvm_config.json", a, "eval-pvm");
    out << "mean projection variance " << format_double(pv.mean) << " over "
        << a.pairs << " pairs\n";
}

void add_eval_common(CLI::App *sub, EvalArgs &e) {
    sub->add_option("--model", e.model, "Trained model JSON")->required();
    sub->add_option("--manifest", e.manifest, "Dataset manifest JSON")
        ->required();
    sub->add_option("--out", e.out, "Output directory");
    sub->add_option("--seed", e.seed, "Sampling seed");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"Quantum similarity network simulator", "qsimnet"};
    app.require_subcommand(1);
    std::string config_file;

    GenArgs gen;
    auto *g = app.add_subcommand("gen-synth", "Write a synthetic dataset");
    g->add_option("--kind", gen.kind, "color_blobs | two_class_gauss")
        ->required();
    g->add_option("--n", gen.n, "Number of samples")->required();
    g->add_option("--seed", gen.seed, "Generator seed");
    g->add_option("--out", gen.out, "Output directory")->required();
    g->add_option("--width", gen.width, "Image width (color_blobs)");
    g->add_option("--height", gen.height, "Image height (color_blobs)");
    g->add_option("--dim", gen.dim, "Feature dimension (two_class_gauss)");
    g->add_option("--stddev", gen.stddev, "Class spread (two_class_gauss)");

    TrainArgs tr;
    auto *t = app.add_subcommand("train", "Train a model on a manifest");
    t->add_option("--manifest", tr.manifest, "Dataset manifest JSON")->required();
    t->add_option("--out", tr.out, "Output directory");
    t->add_option("--mode", tr.mode, "sliq | baseline");
    t->add_option("--epochs", tr.epochs, "Training epochs");
    t->add_option("--lr", tr.lr, "Learning rate");
    t->add_option("--batch-size", tr.batch_size, "Triplets per batch");
    t->add_option("--layers", tr.layers, "Circuit layers");
    t->add_option("--alpha", tr.alpha, "Objective weight");
    t->add_option("--beta", tr.beta, "Consistency weight");
    t->add_option("--gradient", tr.gradient,
                  "parameter_shift | finite_difference");
    t->add_option("--seed", tr.seed, "Seed for split, triplets, init, order");
    t->add_option("--workers", tr.workers, "Threads per batch");
    t->add_option("--triplets", tr.triplets,
                  "Triplets per run (0: one per training sample)");
    t->add_option("--qubits", tr.qubits, "Circuit qubits (0: minimum needed)");
    t->add_option("--objective", tr.objective,
                  "l1 | squared_l2 (default: l1 for sliq, squared_l2 for "
                  "baseline)");
    t->add_option("--margin", tr.margin, "Hinge margin on the objective");
    t->add_flag("--resample-triplets", tr.resample_triplets,
                "Draw new triplets every epoch");

    EvalArgs rank;
    auto *r = app.add_subcommand("eval-rank", "Spearman ranking evaluation");
    add_eval_common(r, rank);
    r->add_option("--anchors", rank.anchors, "Anchors (from held-out data)");
    r->add_option("--candidates", rank.candidates, "Candidates per anchor");
    r->add_option("--metric", rank.metric, "l1 | squared_l2");

    EvalArgs cls;
    auto *c = app.add_subcommand("eval-classify",
                                 "GMM clustering accuracy on labeled data");
    add_eval_common(c, cls);
    c->add_option("--n-fit", cls.n_fit, "Points the GMM is fit to");

    EvalArgs pvm;
    auto *p = app.add_subcommand("eval-pvm", "Projection variance CDF");
    add_eval_common(p, pvm);
    p->add_option("--pairs", pvm.pairs, "Number of (a, b) pairs");

    for (auto *sub : {g, t, r, c, p}) {
        sub->add_option("--config", config_file, "JSON file of flag values");
    }

    try {
        std::vector<std::string> argv = merge_config(args);
        std::reverse(argv.begin(), argv.end());
        try {
            app.parse(argv);
        } catch (const CLI::CallForHelp &e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError &e) {
            err << "error: " << e.what() << "\n";
            return e.get_exit_code() == 0 ? 0 : 1;
        }
        if (g->parsed()) {
            cmd_gen_synth(gen, out);
        } else if (t->parsed()) {
            cmd_train(tr, out);
        } else if (r->parsed()) {
            cmd_eval_rank(rank, out);
        } else if (c->parsed()) {
            cmd_eval_classify(cls, out);
        } else if (p->parsed()) {
            cmd_eval_pvm(pvm, out);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qsimnet
