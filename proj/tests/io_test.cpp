// Copyright 2026 The qmask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmask/io.hpp"

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qmask;
using namespace qmask::testing;
using qmask::io::json;

TEST(Json, StateRoundTripIsExact) {
  const PureState psi = random_pure_state(DimProfile{2, 3}, 5);
  const json j = io::state_to_json(psi);
  EXPECT_EQ(j["dims"], json({2, 3}));
  const PureState back = io::state_from_json(json::parse(j.dump()));
  EXPECT_TRUE(back.amps() == psi.amps());
  EXPECT_EQ(back.dims(), psi.dims());
}

TEST(Json, StateLayout) {
  const json j = json::parse(R"({"dims":[2],"amps":[[0.6,0],[0,0.8]]})");
  const PureState psi = io::state_from_json(j);
  EXPECT_EQ(psi.amps()(1), cplx(0, 0.8));
}

TEST(Json, StateErrors) {
  EXPECT_THROW(io::state_from_json(json::parse(R"({"amps":[[1,0]]})")), std::invalid_argument);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dims":[2],"amps":[[1,0],[1,0]]})")),
               std::invalid_argument);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dims":[2],"amps":[[1,0],[0]]})")),
               std::invalid_argument);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dims":[0],"amps":[]})")),
               std::invalid_argument);
}

TEST(Json, StateListForms) {
  const json one = io::state_to_json(ket_plus());
  EXPECT_EQ(io::states_from_json(one).size(), 1u);
  EXPECT_EQ(io::states_from_json(json::array({one, one})).size(), 2u);
  EXPECT_EQ(io::states_from_json(json{{"states", json::array({one, one, one})}}).size(), 3u);
  EXPECT_THROW(io::states_from_json(json::array()), std::invalid_argument);
}

TEST(Json, MaskerRoundTripAndLayout) {
  const Masker v = diagonal_masker(2);
  const json j = io::masker_to_json(v);
  EXPECT_EQ(j["iso"].size(), 4u);     // dA * dB rows
  EXPECT_EQ(j["iso"][0].size(), 2u);  // dA columns
  EXPECT_EQ(j["iso"][3][1], json({1.0, 0.0}));
  EXPECT_TRUE(io::masker_from_json(j).iso() == v.iso());
  json bad = j;
  bad["iso"][0][0] = json({2.0, 0.0});
  EXPECT_THROW(io::masker_from_json(bad), std::invalid_argument);
  bad = j;
  bad["dB"] = 3;
  EXPECT_THROW(io::masker_from_json(bad), std::invalid_argument);
}

TEST(Json, DensityRoundTrip) {
  const DensityMatrix rho = partial_trace(random_pure_state(DimProfile{3, 2}, 1), {0});
  const DensityMatrix back = io::density_from_json(json::parse(io::density_to_json(rho).dump()));
  EXPECT_TRUE(back.mat() == rho.mat());
}

TEST(Json, ConfigRoundTripAndValidation) {
  OptimizerConfig cfg;
  cfg.dB = 3;
  cfg.restarts = 5;
  cfg.seed = 99;
  cfg.mode = MaskMode::set;
  const OptimizerConfig back = io::config_from_json(io::config_to_json(cfg));
  EXPECT_EQ(back.dB, 3u);
  EXPECT_EQ(back.restarts, 5u);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.mode, MaskMode::set);
  EXPECT_EQ(io::config_from_json(json::object()).restarts, OptimizerConfig{}.restarts);
  EXPECT_THROW(io::config_from_json(json{{"restarts", 0}}), std::invalid_argument);
  EXPECT_THROW(io::config_from_json(json{{"restart", 2}}), std::invalid_argument);
  EXPECT_THROW(io::config_from_json(json{{"mode", "both"}}), std::invalid_argument);
  EXPECT_THROW(io::config_from_json(json{{"grad_tol", -1.0}}), std::invalid_argument);
}

TEST(Json, ReportHasMandatoryFields) {
  const auto report =
      masking_defect(diagonal_masker(2), {ket_plus(), ket_minus()}, MaskMode::span);
  const json j = io::report_to_json(report);
  EXPECT_TRUE(j.at("verdict").get<bool>());
  EXPECT_LT(j.at("defect").get<double>(), 1e-12);
  EXPECT_EQ(j.at("mode"), "span");
  EXPECT_EQ(j.at("cross_norms").size(), 1u);
}

TEST(Csv, ProbeHeaderAndRows) {
  const auto report = probe_maskable_family(diagonal_masker(3), 2000, 4, 0.05);
  const std::string csv = io::probe_to_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,dev_a,dev_b,entropy,profile_0,profile_1,profile_2");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            report.masked.size() + 1);
}

TEST(Files, MissingAndMalformed) {
  EXPECT_THROW(io::read_json_file("/nonexistent/qmask.json"), std::runtime_error);
  const auto path = std::filesystem::temp_directory_path() / "qmask_io_test_bad.json";
  io::write_text_file(path, "{not json");
  EXPECT_THROW(io::read_json_file(path), std::runtime_error);
  io::write_text_file(path, io::dump(json{{"a", 1}}));
  EXPECT_EQ(io::read_json_file(path).at("a"), 1);
  std::filesystem::remove(path);
}
