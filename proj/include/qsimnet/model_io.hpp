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

#include <filesystem>
#include <string>

#include "qsimnet/training.hpp"

namespace qsimnet {

/**
 * Model file layout (JSON):
 *
 *   {
 *     "format_version": 1,
 *     "feature_count": int,
 *     "spec": {"n_qubits", "n_layers", "measured_qubits", "anchor_slots",
 *              "entangler": "ring"},
 *     "params": [double, ...],             // shortest round-trip decimals
 *     "config": {...TrainConfig fields except workers...},
 *     "loss_history": [double, ...]
 *   }
 */
[[nodiscard]] std::string model_to_json(const TrainedModel &model);
[[nodiscard]] TrainedModel model_from_json(const std::string &text);

void save_model(const std::filesystem::path &path, const TrainedModel &model);
[[nodiscard]] TrainedModel load_model(const std::filesystem::path &path);

/// The config block alone, as written into model files and run directories.
[[nodiscard]] std::string config_to_json(const TrainConfig &config);

} // namespace qsimnet
