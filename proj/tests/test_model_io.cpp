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

#include <filesystem>

#include "qsimnet/error.hpp"
#include "qsimnet/io.hpp"
#include "qsimnet/model_io.hpp"
#include "qsimnet/synthetic.hpp"

using namespace qsimnet;
namespace fs = std::filesystem;

TEST_SUITE("model_io") {

TEST_CASE("model JSON round trip is exact") {
    TrainedModel m;
    m.config.mode = Mode::Sliq;
    m.config.n_layers = 2;
    m.config.seed = 12345678901234ULL;
    m.config.margin = 0.25;
    m.config.objective = Objective::SquaredL2;
    m.config.weights = {0.5, 2.0};
    m.spec = make_spec(Mode::Sliq, 5, 2);
    m.params = initial_parameters(m.spec, 3);
    m.loss_history = {0.1, 1.0 / 3.0, -0.25};
    m.feature_count = 12;
    const std::string text = model_to_json(m);
    const TrainedModel back = model_from_json(text);
    CHECK(back.spec == m.spec);
    CHECK(back.params == m.params);
    CHECK(back.loss_history == m.loss_history);
    CHECK(back.feature_count == 12);
    CHECK(back.config.seed == m.config.seed);
    CHECK(back.config.margin == 0.25);
    CHECK(back.config.objective == Objective::SquaredL2);
    CHECK(back.config.weights.beta == 2.0);
    CHECK(model_to_json(back) == text);
}

TEST_CASE("malformed model files") {
    CHECK_THROWS_AS((void)model_from_json("{"), ValidationError);
    CHECK_THROWS_AS((void)model_from_json("{\"format_version\": 9}"),
                    ValidationError);
    CHECK_THROWS_AS((void)load_model("/nonexistent/model.json"), IoError);
}

} // TEST_SUITE

TEST_SUITE("synthetic") {

TEST_CASE("color blobs") {
    const auto imgs = color_blobs({20, 8, 8, 4});
    REQUIRE(imgs.size() == 20);
    CHECK(imgs[0].pixels.size() == 192);
    const auto again = color_blobs({20, 8, 8, 4});
    CHECK(again[7].pixels == imgs[7].pixels);
    const Dataset d = color_blobs_dataset({20, 8, 8, 4});
    CHECK(d.feature_count() == 192);
    CHECK_FALSE(d.labeled());
    CHECK(d.image()->width == 8);
}

TEST_CASE("two class gauss") {
    const Dataset d = two_class_gauss_dataset({40, 8, 0.15, 2});
    CHECK(d.size() == 40);
    CHECK(d.feature_count() == 8);
    CHECK(d.classes() == std::vector<int>{0, 1});
}

TEST_CASE("written files reload identically") {
    const fs::path dir = fs::temp_directory_path() / "qsimnet_synth";
    fs::remove_all(dir);
    write_color_blobs(dir / "a", {12, 4, 4, 9});
    const Dataset d = load_dataset(dir / "a" / "manifest.json");
    const Dataset mem = color_blobs_dataset({12, 4, 4, 9});
    REQUIRE(d.size() == 12);
    for (int i = 0; i < 12; ++i) {
        CHECK(d[i].features == mem[i].features);
    }
    write_two_class_gauss(dir / "b", {10, 4, 0.1, 9});
    const Dataset g = load_dataset(dir / "b" / "manifest.json");
    const Dataset gm = two_class_gauss_dataset({10, 4, 0.1, 9});
    for (int i = 0; i < 10; ++i) {
        CHECK(g[i].features == gm[i].features);
        CHECK(g[i].label == gm[i].label);
    }
}

} // TEST_SUITE
