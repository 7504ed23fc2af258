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

#include <sys/wait.h>

#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "darkspan/pipeline.hpp"
#include "support/testing.hpp"

using namespace darkspan;
using testing_support::ScratchDir;
using testing_support::slurp;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSmallRun =
    "sim_topics = 3\n"
    "sim_shapes = Stable, Bursting, Episodic\n"
    "sim_docs_per_topic = 60\n"
    "sim_websites = 6\n"
    "sim_periods = 12\n"
    "embedding_dim = 128\n"
    "min_cluster_size = 10\n"
    "min_samples = 10\n";

struct Outcome {
  int code = 0;
  std::string err;
};

Outcome run_stage(const std::string& stage, const fs::path& config, const fs::path& out,
                  std::optional<fs::path> manifest = std::nullopt) {
  pipeline::Options opt;
  opt.subcommand = stage;
  opt.config_path = config;
  opt.out_dir = out;
  if (manifest) opt.manifest = manifest->string();
  std::ostringstream err;
  const int code = pipeline::run(opt, err);
  return {code, err.str()};
}

Outcome run_cli(const std::string& args, const fs::path& err_file) {
  const std::string cmd = std::string(DARKSPAN_CLI_PATH) + " " + args + " 2> '" + err_file.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err_file)};
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return out;
}

// One simulated corpus shared by the suite.
class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new ScratchDir("pipeline-suite");
    dir_->write("run.cfg", kSmallRun);
    const Outcome sim = run_stage("simulate", config(), sim_dir());
    ASSERT_EQ(sim.code, 0) << sim.err;
    const Outcome all = run_stage("all", config(), run_dir(), manifest());
    ASSERT_EQ(all.code, 0) << all.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }

  static fs::path config() { return *dir_ / "run.cfg"; }
  static fs::path sim_dir() { return *dir_ / "sim"; }
  static fs::path run_dir() { return *dir_ / "run"; }
  static fs::path manifest() { return sim_dir() / "manifest.jsonl"; }

  static ScratchDir* dir_;
};

ScratchDir* PipelineTest::dir_ = nullptr;

}  // namespace

TEST_F(PipelineTest, AllProducesTheReportSet) {
  for (const char* f : {"docs.jsonl", "rejections.jsonl", "tokens.jsonl", "websites.jsonl", "snapshots.tsv",
                        "vectors.tsv", "reduced.tsv", "assignments.tsv", "clusters.json", "topics.json",
                        "merged_assignments.tsv", "prevalence.csv", "periods.csv", "concentration.json",
                        "categories.csv", "lifecycle.csv", "lifecycle_summary.json", "config.used",
                        "plotdata/stacked_shares.tsv", "plotdata/lifespan_histogram.tsv"}) {
    EXPECT_TRUE(fs::is_regular_file(run_dir() / f)) << f;
  }
  const auto conc = nlohmann::json::parse(slurp(run_dir() / "concentration.json"));
  for (const char* k : {"top_5", "top_10", "top_20"}) EXPECT_TRUE(conc.contains(k)) << k;
  EXPECT_EQ(slurp(run_dir() / "prevalence.csv").rfind("topic_id,label,period,mass,share\n", 0), 0u);
  EXPECT_FALSE(fs::exists(run_dir() / "prevalence_by_site_type.csv"));
}

TEST_F(PipelineTest, RecoversPlantedTopics) {
  const auto clusters = nlohmann::json::parse(slurp(run_dir() / "clusters.json"));
  EXPECT_EQ(clusters.at("clusters").get<int>(), 3);
  const auto topics = nlohmann::json::parse(slurp(run_dir() / "topics.json")).at("topics");
  ASSERT_EQ(topics.size(), 3u);
  for (const auto& t : topics) {
    EXPECT_EQ(t.at("label_source"), "template");
    EXPECT_EQ(t.at("raw_topics").size(), 1u);
    EXPECT_FALSE(t.at("top_terms").empty());
  }
}

TEST_F(PipelineTest, GrandTotalMatchesSnapshotCount) {
  const auto conc = nlohmann::json::parse(slurp(run_dir() / "concentration.json"));
  std::size_t snapshots = 0;
  for (const auto& row : pipeline::read_tsv(run_dir() / "snapshots.tsv")) snapshots += !row.empty();
  EXPECT_NEAR(conc.at("grand_total_mass").get<double>(), static_cast<double>(snapshots), 1e-9);
}

TEST_F(PipelineTest, UnchangedInputsReuseCache) {
  ScratchDir work("pipeline-cache");
  fs::copy(run_dir(), work / "run", fs::copy_options::recursive);
  const Outcome again = run_stage("cluster", config(), work / "run");
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_NE(again.err.find("darkspan: cluster: inputs and config unchanged, reusing cached outputs"),
            std::string::npos)
      << again.err;
}

TEST_F(PipelineTest, ConfigChangeInvalidatesOnlyAffectedStages) {
  ScratchDir work("pipeline-rerun");
  fs::copy(run_dir(), work / "run", fs::copy_options::recursive);
  work.write("run.cfg", std::string(kSmallRun) + "tau = 0.05\n");
  const Outcome r = run_stage("all", work / "run.cfg", work / "run", manifest());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("cluster: inputs and config unchanged"), std::string::npos);
  EXPECT_NE(r.err.find("timeline: inputs and config unchanged"), std::string::npos);
  EXPECT_EQ(r.err.find("lifecycle: inputs and config unchanged"), std::string::npos);
}

TEST_F(PipelineTest, ThreadCountDoesNotChangeReports) {
  ScratchDir work("pipeline-threads");
  ::setenv("DARKSPAN_THREADS", "1", 1);
  const Outcome a = run_stage("all", config(), work / "one", manifest());
  ::setenv("DARKSPAN_THREADS", "4", 1);
  const Outcome b = run_stage("all", config(), work / "four", manifest());
  ::unsetenv("DARKSPAN_THREADS");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const auto ta = tree(work / "one"), tb = tree(work / "four");
  ASSERT_EQ(ta.size(), tb.size());
  const auto base = tree(run_dir());
  ASSERT_EQ(ta.size(), base.size());
  for (const auto& [name, content] : ta) {
    EXPECT_TRUE(tb.at(name) == content) << name;
    EXPECT_TRUE(base.at(name) == content) << name;
  }
}

TEST_F(PipelineTest, MergeMapAndQuotedLabels) {
  ScratchDir work("pipeline-merge");
  fs::copy(run_dir(), work / "run", fs::copy_options::recursive);
  work.write("merge.tsv", "0\tCards, \"Dumps\" and Fullz\n1\tCards, \"Dumps\" and Fullz\n");
  work.write("run.cfg", std::string(kSmallRun) + "merge_map = merge.tsv\n");
  const Outcome r = run_stage("all", work / "run.cfg", work / "run", manifest());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto topics = nlohmann::json::parse(slurp(work / "run/topics.json")).at("topics");
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_EQ(topics[0].at("label"), "Cards, \"Dumps\" and Fullz");
  EXPECT_EQ(topics[0].at("raw_topics").size(), 2u);
  const std::string csv = slurp(work / "run/prevalence.csv");
  EXPECT_NE(csv.find("\n0,\"Cards, \"\"Dumps\"\" and Fullz\",0,"), std::string::npos);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) ASSERT_EQ(io::parse_csv_line(line).size(), 5u) << line;
}

TEST_F(PipelineTest, SeedOverrideChangesSimulation) {
  ScratchDir work("pipeline-seed");
  pipeline::Options opt{"simulate", config(), work / "sim", std::nullopt, 7};
  std::ostringstream err;
  ASSERT_EQ(pipeline::run(opt, err), 0) << err.str();
  EXPECT_NE(slurp(work / "sim/manifest.jsonl"), slurp(manifest()));
}

TEST(PipelineCli, PreEpochTimestampsNameEpoch) {
  ScratchDir dir("cli-epoch");
  const std::string body(80, 'x');
  dir.write("html/a.html", "<html><body><p>the market " + body + "</p></body></html>");
  dir.write("manifest.jsonl",
            "{\"snapshot_id\":\"a\",\"website_path\":\"/a\",\"page_title\":\"A\","
            "\"timestamp\":\"2019-11-02T10:00:00Z\",\"html_path\":\"html/a.html\"}\n");
  dir.write("run.cfg", "manifest = manifest.jsonl\n");
  const Outcome r = run_cli("all --config '" + (dir / "run.cfg").string() + "' --out '" + (dir / "out").string() + "'",
                            dir / "err.txt");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("epoch"), std::string::npos) << r.err;
}

TEST(PipelineCli, ConfigErrorsExitTwoWithKey) {
  ScratchDir dir("cli-config");
  dir.write("run.cfg", "min_clustre_size = 3\n");
  const Outcome r = run_cli("cluster --config '" + (dir / "run.cfg").string() + "' --out '" +
                                (dir / "out").string() + "'",
                            dir / "err.txt");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("min_clustre_size"), std::string::npos) << r.err;
}

TEST(PipelineCli, StageFailureExitsOneWithStage) {
  ScratchDir dir("cli-stage");
  dir.write("run.cfg", "seed = 1\n");
  const Outcome r = run_cli("cluster --config '" + (dir / "run.cfg").string() + "' --out '" +
                                (dir / "out").string() + "'",
                            dir / "err.txt");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("stage cluster failed"), std::string::npos) << r.err;
}

TEST(PipelineCli, UsageErrors) {
  ScratchDir dir("cli-usage");
  EXPECT_EQ(run_cli("frobnicate --config x.cfg", dir / "err.txt").code, 2);
  EXPECT_EQ(run_cli("all", dir / "err.txt").code, 2);
  EXPECT_EQ(run_cli("--help > /dev/null", dir / "err.txt").code, 0);
}

TEST(Distribution, FormatParseRoundTrip) {
  const std::string s = pipeline::format_distribution({0.25, 0.0, 0.5}, 0.25);
  const pipeline::SparseDistribution d = pipeline::parse_distribution(s);
  EXPECT_EQ(d.at(0), 0.25);
  EXPECT_EQ(d.count(1), 0u);
  EXPECT_EQ(d.at(2), 0.5);
  EXPECT_EQ(d.at(-1), 0.25);
}
