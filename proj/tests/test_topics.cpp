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

#include <cmath>
#include <sstream>

#include "darkspan/topics.hpp"
#include "support/testing.hpp"

using namespace darkspan;
using namespace darkspan::topics;

namespace {

std::map<int, TopicRepresentation> reps_with_ids(std::initializer_list<int> ids) {
  std::map<int, TopicRepresentation> reps;
  for (int id : ids) reps[id] = {id, {}, "Topic " + std::to_string(id), LabelSource::Template};
  return reps;
}

std::vector<std::string> seq(std::initializer_list<int> xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(x ? "yes" : "no");
  return out;
}

}  // namespace

TEST(Ctfidf, HandComputedWeight) {
  const ClassTokens classes = {{1, {"btc", "btc", "escrow"}}, {2, {"forum", "forum", "escrow"}}};
  const TermWeights w = ctfidf_weights(classes);
  EXPECT_NEAR(w.at(1).at("btc"), 2.0 * std::log(2.5), 1e-9);
  EXPECT_NEAR(w.at(1).at("btc"), 1.83258, 1e-5);
  EXPECT_NEAR(w.at(1).at("escrow"), std::log(1.0 + 3.0 / 2.0), 1e-12);
  EXPECT_EQ(w.at(1).count("forum"), 0u);
  EXPECT_EQ(w.at(2).count("btc"), 0u);
}

TEST(Ctfidf, ExclusiveTermOutranksSharedTerm) {
  const ClassTokens classes = {{0, {"card", "card", "dump", "dump"}},
                               {1, {"dump", "dump", "dump", "dump", "forum"}}};
  const TermWeights w = ctfidf_weights(classes);
  EXPECT_GT(w.at(0).at("card"), w.at(0).at("dump"));
  const auto reps = ctfidf(classes);
  EXPECT_EQ(reps.at(0).top_terms.front().term, "card");
}

TEST(Ctfidf, TopTermOrderBreaksTiesByTerm) {
  const auto terms = top_terms({{"b", 1.0}, {"a", 1.0}, {"c", 2.0}}, 10);
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[0].term, "c");
  EXPECT_EQ(terms[1].term, "a");
  EXPECT_EQ(terms[2].term, "b");
  EXPECT_EQ(top_terms({{"a", 1.0}, {"b", 2.0}}, 1).size(), 1u);
}

TEST(Ctfidf, Errors) {
  EXPECT_DARKSPAN_ERROR(ctfidf_weights({}), ErrorCode::EmptyInput);
  EXPECT_DARKSPAN_ERROR(ctfidf_weights({{0, {"a"}}, {1, {}}}), ErrorCode::EmptyClass);
}

TEST(Labels, Template) {
  EXPECT_EQ(template_label({{"product", 3}, {"vendor", 2}, {"shipping", 1}, {"extra", 0.5}}),
            "Product Vendor Shipping");
  EXPECT_EQ(template_label({{"escrow", 1}}), "Escrow");
}

TEST(Labels, OverrideReplacesTemplate) {
  auto reps = reps_with_ids({0, 1});
  apply_labels(reps, {{0, "Forum Reputation"}}, LabelSource::Override);
  EXPECT_EQ(reps.at(0).label, "Forum Reputation");
  EXPECT_EQ(reps.at(0).label_source, LabelSource::Override);
  EXPECT_EQ(reps.at(1).label, "Topic 1");
  EXPECT_EQ(to_string(reps.at(1).label_source), "template");
}

TEST(Labels, ExternalResponsesKeepFourWords) {
  auto reps = reps_with_ids({3});
  apply_labels(reps, {{3, "Stolen Card Dump Marketplace Listings Today"}}, LabelSource::External);
  EXPECT_EQ(reps.at(3).label, "Stolen Card Dump Marketplace");
  EXPECT_EQ(to_string(reps.at(3).label_source), "external");
  EXPECT_EQ(truncate_words("  a   b  "), "a b");
}

TEST(Labels, Errors) {
  auto reps = reps_with_ids({0});
  EXPECT_DARKSPAN_ERROR(apply_labels(reps, {{7, "X"}}, LabelSource::Override), ErrorCode::UnknownTopic);
  EXPECT_DARKSPAN_ERROR(apply_labels(reps, {{0, "   "}}, LabelSource::Override), ErrorCode::EmptyLabel);
}

TEST(Labels, LabelFileParsing) {
  std::istringstream in("0\tForum Reputation\n\n12\tCard Shops\r\n");
  const auto rows = read_id_label_lines(in, "labels");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::pair<int, std::string>{12, "Card Shops"}));
  std::istringstream bad("x1\tLabel\n");
  EXPECT_DARKSPAN_ERROR(read_id_label_lines(bad, "labels"), ErrorCode::Parse);
  std::istringstream no_tab("1 Label\n");
  EXPECT_DARKSPAN_ERROR(read_id_label_lines(no_tab, "labels"), ErrorCode::Parse);
}

TEST(Labels, PromptListsTopTerms) {
  TopicRepresentation rep{0, {{"btc", 2}, {"escrow", 1}}, "", LabelSource::Template};
  const std::string p = build_prompt(rep);
  EXPECT_NE(p.find("Maximum 4 words"), std::string::npos);
  EXPECT_NE(p.find("Topic words: btc, escrow\nLabel:"), std::string::npos);
}

TEST(Merge, TorrentsAndFiles) {
  const auto reps = reps_with_ids({0, 1, 2, 31, 32});
  const MergeRegistry reg = build_registry(
      reps, {{1, "Torrents and Files"}, {31, "Torrents and Files"}, {32, "Torrents and Files"}});
  ASSERT_EQ(reg.size(), 3u);
  const MergedTopic& torrents = reg.topics[reg.raw_to_merged.at(1)];
  EXPECT_EQ(torrents.label, "Torrents and Files");
  EXPECT_EQ(torrents.raw_ids, (std::vector<int>{1, 31, 32}));
  EXPECT_EQ(reg.topics[reg.raw_to_merged.at(2)].label, "Topic 2");
}

TEST(Merge, ProbabilitiesSum) {
  std::map<int, TopicRepresentation> reps;
  for (int id = 0; id < 33; ++id) reps[id] = {id, {}, "T" + std::to_string(id), LabelSource::Template};
  const MergeRegistry reg = build_registry(reps, {{1, "Torrents and Files"}, {31, "Torrents and Files"}});
  std::vector<double> raw(33, 0.0);
  raw[1] = 0.3;
  raw[31] = 0.2;
  raw[5] = 0.1;
  const auto merged = merge_distribution(raw, reg);
  EXPECT_DOUBLE_EQ(merged[static_cast<std::size_t>(reg.raw_to_merged.at(1))], 0.5);
  EXPECT_DOUBLE_EQ(merged[static_cast<std::size_t>(reg.raw_to_merged.at(5))], 0.1);
  EXPECT_EQ(merged.size(), 32u);
}

TEST(Merge, Errors) {
  const auto reps = reps_with_ids({0, 1});
  EXPECT_DARKSPAN_ERROR(build_registry(reps, {{999, "X"}}), ErrorCode::UnknownRawTopic);
  EXPECT_DARKSPAN_ERROR(build_registry(reps, {{0, "X"}, {0, "Y"}}), ErrorCode::InvalidArgument);
  EXPECT_DARKSPAN_ERROR(build_registry(reps, {{0, " "}}), ErrorCode::EmptyLabel);
  const MergeRegistry reg = build_registry(reps, {});
  EXPECT_DARKSPAN_ERROR(merge_distribution({0.1, 0.2, 0.3}, reg), ErrorCode::UnknownRawTopic);
}

TEST(Kappa, ConfusionFixture) {
  // Confusion [[2,1],[1,6]]; sklearn.metrics.cohen_kappa_score gives 0.5238095238095238.
  const auto a = seq({0, 0, 0, 1, 1, 1, 1, 1, 1, 1});
  const auto b = seq({0, 0, 1, 0, 1, 1, 1, 1, 1, 1});
  const AgreementReport r = cohen_kappa(a, b);
  EXPECT_NEAR(r.observed_agreement, 0.8, 1e-12);
  EXPECT_NEAR(r.expected_agreement, 0.58, 1e-12);
  EXPECT_NEAR(r.kappa, 0.52380952380952384, 1e-12);
}

TEST(Kappa, IdenticalAndChanceLevel) {
  const auto a = seq({0, 1, 1, 0, 1});
  EXPECT_DOUBLE_EQ(cohen_kappa(a, a).kappa, 1.0);
  // po = pe = 0.5.
  const AgreementReport r = cohen_kappa(seq({0, 0, 1, 1}), seq({0, 1, 0, 1}));
  EXPECT_DOUBLE_EQ(r.observed_agreement, r.expected_agreement);
  EXPECT_DOUBLE_EQ(r.kappa, 0.0);
  // A single shared category: pe = 1.
  EXPECT_DOUBLE_EQ(cohen_kappa(seq({1, 1}), seq({1, 1})).kappa, 1.0);
}

TEST(Kappa, Errors) {
  EXPECT_DARKSPAN_ERROR(cohen_kappa(seq({0, 1}), seq({0})), ErrorCode::LengthMismatch);
  EXPECT_DARKSPAN_ERROR(cohen_kappa({}, {}), ErrorCode::EmptyInput);
}
