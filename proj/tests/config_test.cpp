// Copyright 2026 The kdq-collision Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "kdq/experiment.hpp"

using namespace kdq;

namespace {

ExperimentSpec parse(const std::string& text, std::vector<std::string> overrides = {}) {
  return parse_config(text, overrides);
}

}  // namespace

TEST(parse_config, empty_input_gives_defaults) {
  unsetenv(kOutputDirEnv);
  const auto spec = parse("");
  EXPECT_EQ(spec.kind, ExperimentKind::kSingleRun);
  EXPECT_FALSE(spec.kind_explicit);
  EXPECT_EQ(spec.base.spins.omega_s, 1.0);
  EXPECT_EQ(spec.base.spins.omega_m, 1.0);
  EXPECT_EQ(spec.base.spins.omega_a, 1.0);
  EXPECT_EQ(spec.base.couplings.g_sm, 0.2);
  EXPECT_EQ(spec.base.couplings.g_ma, 0.2);
  EXPECT_EQ(spec.base.couplings.tau1, 0.2);
  EXPECT_EQ(spec.base.couplings.tau2, 0.2);
  EXPECT_EQ(spec.base.thermal.beta, 1.0);
  EXPECT_EQ(spec.base.n_max, 1000u);
  EXPECT_TRUE(spec.grid.empty());
  EXPECT_EQ(spec.output_dir, "kdq_out");
  EXPECT_TRUE(spec.write_csv);
  EXPECT_TRUE(spec.write_json);
}

TEST(parse_config, reads_values_and_comments) {
  const auto spec = parse(
      "# detuned run\n"
      "omega_s = 0.8   # system\n"
      "\n"
      "g_sm=0.3\n"
      "n_max = 25\n"
      "formats = csv\n");
  EXPECT_EQ(spec.base.spins.omega_s, 0.8);
  EXPECT_EQ(spec.base.couplings.g_sm, 0.3);
  EXPECT_EQ(spec.base.n_max, 25u);
  EXPECT_TRUE(spec.write_csv);
  EXPECT_FALSE(spec.write_json);
}

TEST(parse_config, overrides_win) {
  const auto spec = parse("n_max = 50\n", {"n_max=10"});
  EXPECT_EQ(spec.base.n_max, 10u);
  EXPECT_EQ(parse("", {"n_max=10"}).base.n_max, 10u);
}

TEST(parse_config, invalid_values) {
  try {
    parse("beta = -1\n");
    FAIL() << "expected InvalidValue";
  } catch (const InvalidValue& e) {
    EXPECT_EQ(e.key(), "beta");
  }
  EXPECT_THROW(parse("n_max = 0\n"), InvalidValue);
  EXPECT_THROW(parse("n_max = -3\n"), InvalidValue);
  EXPECT_THROW(parse("tau1 = fast\n"), InvalidValue);
  EXPECT_THROW(parse("omega_s = inf\n"), InvalidValue);
  EXPECT_THROW(parse("kind = everything\n"), InvalidValue);
  EXPECT_THROW(parse("colour = blue\n"), InvalidValue);
  EXPECT_THROW(parse("omega_s\n"), InvalidValue);
  EXPECT_THROW(parse("omega_s =\n"), InvalidValue);
  EXPECT_THROW(parse("formats = xml\n"), InvalidValue);
  EXPECT_THROW(parse("gamma = 2\n"), InvalidValue);
  EXPECT_THROW(parse("kind = anisotropy_sweep\ngrid_min = -2\ngrid_max = 1\n"), InvalidValue);
}

TEST(parse_config, missing_keys) {
  try {
    parse("kind = detuning_sweep\ngrid_min = -0.2\n");
    FAIL() << "expected MissingKey";
  } catch (const MissingKey& e) {
    EXPECT_EQ(e.key(), "grid_max");
  }
  EXPECT_THROW(parse(" = 3\n"), MissingKey);
}

TEST(parse_config, sweep_grids) {
  const auto detuning = parse("kind = detuning_sweep\n");
  EXPECT_TRUE(detuning.kind_explicit);
  ASSERT_EQ(detuning.grid.size(), kDefaultGridPoints);
  EXPECT_EQ(detuning.grid.front(), -0.5);
  EXPECT_EQ(detuning.grid.back(), 0.5);
  EXPECT_NEAR(detuning.grid[50], 0.0, 1e-16);

  const auto aniso = parse("kind = anisotropy_sweep\ngrid_points = 5\n");
  EXPECT_EQ(aniso.grid, (std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}));

  const auto custom = parse("kind = detuning_sweep\ngrid_min=-0.1\ngrid_max=0.1\ngrid_points=3\n");
  EXPECT_EQ(custom.grid, (std::vector<double>{-0.1, 0.0, 0.1}));
}

TEST(parse_config, output_dir_precedence) {
  setenv(kOutputDirEnv, "/tmp/from_env", 1);
  EXPECT_EQ(parse("").output_dir, "/tmp/from_env");
  EXPECT_EQ(parse("output_dir = /tmp/from_file\n").output_dir, "/tmp/from_file");
  EXPECT_EQ(parse("output_dir = /tmp/from_file\n", {"output_dir=/tmp/from_set"}).output_dir,
            "/tmp/from_set");
  unsetenv(kOutputDirEnv);
  EXPECT_EQ(parse("").output_dir, "kdq_out");
}

TEST(parse_config, anisotropic_interaction) {
  const auto spec = parse("sm_interaction = anisotropic\ngamma = 0.5\nanisotropy_strength = 0.2\n");
  EXPECT_EQ(spec.base.couplings.sm_interaction, SmInteraction::kAnisotropic);
  EXPECT_EQ(spec.base.couplings.gamma, 0.5);
  EXPECT_EQ(spec.base.couplings.anisotropy_strength, 0.2);
  EXPECT_THROW(parse("sm_interaction = dipolar\n"), InvalidValue);
}

TEST(load_config, reads_file) {
  const auto path = std::filesystem::temp_directory_path() / "kdq_config_test.cfg";
  {
    std::ofstream out(path);
    out << "omega_s = 0.9\nn_max = 7\n";
  }
  const std::vector<std::string> overrides{"n_max=3"};
  const auto spec = load_config(path.string(), overrides);
  EXPECT_EQ(spec.base.spins.omega_s, 0.9);
  EXPECT_EQ(spec.base.n_max, 3u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path.string()), ConfigError);
}

TEST(uniform_grid, endpoints_and_single_point) {
  EXPECT_EQ(uniform_grid(0.0, 1.0, 1), (std::vector<double>{0.0}));
  const auto g = uniform_grid(-1.0, 1.0, 201);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 1.0);
}
