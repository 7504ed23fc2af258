// Copyright 2026 The darkspan Authors
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

#include <sstream>

#include "darkspan/config.hpp"
#include "support/testing.hpp"

using namespace darkspan;
using namespace darkspan::config;

namespace {

RunConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in, "/data");
}

std::string failing_key(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig c = parse_text("");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.epoch, timeline::Epoch{});
  EXPECT_FALSE(c.epoch_set);
  EXPECT_EQ(c.n_components, 5u);
  EXPECT_EQ(c.min_cluster_size, 80u);
  EXPECT_EQ(c.min_samples, 90u);
  EXPECT_EQ(c.embedding_kind, "hashing");
  EXPECT_EQ(c.tau, 1e-6);
  EXPECT_EQ(c.sim_shapes.size(), 5u);
}

TEST(Config, ParsesValuesCommentsAndWhitespace) {
  const RunConfig c = parse_text(
      "# study setup\n"
      "manifest = corpus/manifest.jsonl\n"
      "  epoch=2021-Q2   # trailing comment\n"
      "seed = 7\n"
      "min_cluster_size = 15\n"
      "reduce_metric = euclidean\n"
      "error_phrases = 404, access denied\n"
      "sim_shapes = Stable, Episodic\n"
      "include_outliers_in_denominator = true\n"
      "tau = 0.01\n");
  EXPECT_EQ(c.manifest, "corpus/manifest.jsonl");
  EXPECT_EQ(c.resolve(c.manifest), std::filesystem::path("/data/corpus/manifest.jsonl"));
  EXPECT_EQ(c.resolve("/abs/file"), std::filesystem::path("/abs/file"));
  EXPECT_EQ(c.epoch, (timeline::Epoch{2021, 2}));
  EXPECT_TRUE(c.epoch_set);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.min_cluster_size, 15u);
  EXPECT_EQ(c.reduce_metric, reduce::Metric::Euclidean);
  EXPECT_EQ(c.error_phrases, (std::vector<std::string>{"404", "access denied"}));
  EXPECT_EQ(c.sim_shapes, (std::vector<simulate::Shape>{simulate::Shape::Stable, simulate::Shape::Episodic}));
  EXPECT_TRUE(c.include_outliers_in_denominator);
  EXPECT_EQ(c.tau, 0.01);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_EQ(failing_key("min_clustre_size = 3\n"), "min_clustre_size");
  EXPECT_EQ(failing_key("seed = 1\nseed = 2\n"), "seed");
  EXPECT_EQ(failing_key("seed = -1\n"), "seed");
  EXPECT_EQ(failing_key("min_dist = fast\n"), "min_dist");
  EXPECT_EQ(failing_key("epoch = 2020Q1\n"), "epoch");
  EXPECT_EQ(failing_key("embedding_kind = bert\n"), "embedding_kind");
  EXPECT_EQ(failing_key("label_mode = auto\n"), "label_mode");
  EXPECT_EQ(failing_key("tau = 0\n"), "tau");
  EXPECT_EQ(failing_key("noise_outlier_mass = 2\n"), "noise_outlier_mass");
  EXPECT_EQ(failing_key("min_language_confidence = 1.5\n"), "min_language_confidence");
  EXPECT_EQ(failing_key("sim_shapes = Spiky\n"), "sim_shapes");
  EXPECT_EQ(failing_key("include_outliers_in_denominator = maybe\n"), "include_outliers_in_denominator");
  EXPECT_EQ(failing_key("just some words\n"), "line 1");
  EXPECT_DARKSPAN_ERROR(parse_text("seed = x\n"), ErrorCode::Config);
}

TEST(Config, MessageCarriesKey) {
  try {
    parse_text("n_neighbors = lots\n");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("n_neighbors"), std::string::npos);
  }
}

TEST(Config, EchoRoundTrips) {
  const RunConfig a = parse_text("seed = 9\nmin_dist = 0.25\nerror_phrases = 404, oops\nsim_shapes = Declining\n"
                                 "epoch = 2020-Q3\nlabel_mode = override\n");
  const std::string text = echo(a);
  const RunConfig b = parse_text(text);
  EXPECT_EQ(echo(b), text);
  EXPECT_EQ(b.seed, 9u);
  EXPECT_EQ(b.min_dist, 0.25);
  EXPECT_EQ(b.label_mode, LabelMode::Override);
}

TEST(Config, StageEchoIsScoped) {
  const RunConfig c = parse_text("");
  const std::string cluster = echo(c, "cluster");
  EXPECT_NE(cluster.find("min_cluster_size = 80"), std::string::npos);
  EXPECT_EQ(cluster.find("tau ="), std::string::npos);
  EXPECT_NE(echo(c, "lifecycle").find("tau ="), std::string::npos);

  // A change to a lifecycle key leaves the cluster echo untouched.
  EXPECT_EQ(echo(parse_text("tau = 0.5\n"), "cluster"), cluster);
  EXPECT_NE(echo(parse_text("min_samples = 3\n"), "cluster"), cluster);
}

TEST(Config, LoadResolvesAgainstConfigDirectory) {
  testing_support::ScratchDir dir("config-load");
  dir.write("run.cfg", "manifest = m.jsonl\n");
  const RunConfig c = load(dir / "run.cfg");
  EXPECT_EQ(c.resolve(c.manifest), dir / "m.jsonl");
  EXPECT_DARKSPAN_ERROR(load(dir / "absent.cfg"), ErrorCode::Config);
}
