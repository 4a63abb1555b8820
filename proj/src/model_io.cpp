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

#include "qsimnet/model_io.hpp"

#include <nlohmann/json.hpp>

#include "qsimnet/error.hpp"
#include "qsimnet/io.hpp"

namespace qsimnet {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json config_json(const TrainConfig &c) {
    ordered_json j;
    j["mode"] = to_string(c.mode);
    j["learning_rate"] = c.learning_rate;
    j["batch_size"] = c.batch_size;
    j["epochs"] = c.epochs;
    j["n_layers"] = c.n_layers;
    j["alpha"] = c.weights.alpha;
    j["beta"] = c.weights.beta;
    j["gradient_mode"] = to_string(c.gradient_mode);
    j["seed"] = c.seed;
    j["objective"] = to_string(c.resolved_objective());
    j["margin"] = c.margin ? ordered_json(*c.margin) : ordered_json(nullptr);
    j["resample_triplets"] = c.resample_triplets;
    j["triplet_count"] = c.triplet_count;
    return j;
}

TrainConfig config_from(const json &j) {
    TrainConfig c;
    c.mode = parse_mode(j.at("mode").get<std::string>());
    c.learning_rate = j.at("learning_rate").get<double>();
    c.batch_size = j.at("batch_size").get<int>();
    c.epochs = j.at("epochs").get<int>();
    c.n_layers = j.at("n_layers").get<int>();
    c.weights.alpha = j.at("alpha").get<double>();
    c.weights.beta = j.at("beta").get<double>();
    c.gradient_mode = parse_gradient_mode(j.at("gradient_mode").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.objective = parse_objective(j.at("objective").get<std::string>());
    if (!j.at("margin").is_null()) {
        c.margin = j.at("margin").get<double>();
    }
    c.resample_triplets = j.at("resample_triplets").get<bool>();
    c.triplet_count = j.at("triplet_count").get<std::size_t>();
    c.workers = j.value("workers", 1);
    return c;
}

} // namespace

std::string config_to_json(const TrainConfig &config) {
    ordered_json j = config_json(config);
    j["workers"] = config.workers;
    return j.dump(2) + "\n";
}

std::string model_to_json(const TrainedModel &model) {
    ordered_json j;
    j["format_version"] = 1;
    j["feature_count"] = model.feature_count;
    ordered_json spec;
    spec["n_qubits"] = model.spec.n_qubits;
    spec["n_layers"] = model.spec.n_layers;
    spec["measured_qubits"] = model.spec.measured_qubits;
    spec["anchor_slots"] = model.spec.anchor_slots;
    spec["entangler"] = "ring";
    j["spec"] = spec;
    j["params"] = std::vector<double>(model.params.values().begin(),
                                      model.params.values().end());
    j["config"] = config_json(model.config);
    j["loss_history"] = model.loss_history;
    return j.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string &text) {
    TrainedModel m;
    try {
        const json j = json::parse(text);
        if (j.at("format_version").get<int>() != 1) {
            throw ValidationError("unsupported model format version");
        }
        m.feature_count = j.at("feature_count").get<std::size_t>();
        const json &s = j.at("spec");
        m.spec.n_qubits = s.at("n_qubits").get<int>();
        m.spec.n_layers = s.at("n_layers").get<int>();
        m.spec.measured_qubits = s.at("measured_qubits").get<std::vector<int>>();
        m.spec.anchor_slots = s.at("anchor_slots").get<std::vector<int>>();
        if (s.at("entangler").get<std::string>() != "ring") {
            throw ValidationError("unknown entangler in model file");
        }
        m.params = ParameterVector(j.at("params").get<std::vector<double>>());
        m.config = config_from(j.at("config"));
        m.loss_history = j.at("loss_history").get<std::vector<double>>();
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed model file: ") + e.what());
    }
    m.spec.validate();
    if (m.params.size() != parameter_count(m.spec)) {
        throw ValidationError("model parameter count does not match its "
                              "circuit");
    }
    return m;
}

void save_model(const std::filesystem::path &path, const TrainedModel &model) {
    write_text_file(path, model_to_json(model));
}

TrainedModel load_model(const std::filesystem::path &path) {
    return model_from_json(read_text_file(path));
}

} // namespace qsimnet
