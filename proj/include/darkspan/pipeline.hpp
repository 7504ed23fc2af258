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

// Stage orchestration. Every stage reads its upstream artifacts from the
// output directory and writes its own; a stage is skipped when a digest of
// its inputs and its config section matches the one recorded last time.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "darkspan/cluster.hpp"
#include "darkspan/config.hpp"
#include "darkspan/corpus.hpp"
#include "darkspan/embed.hpp"
#include "darkspan/error.hpp"
#include "darkspan/hash.hpp"
#include "darkspan/ingest.hpp"
#include "darkspan/io.hpp"
#include "darkspan/lifecycle.hpp"
#include "darkspan/parallel.hpp"
#include "darkspan/reduce.hpp"
#include "darkspan/simulate.hpp"
#include "darkspan/textnorm.hpp"
#include "darkspan/timeline.hpp"
#include "darkspan/topics.hpp"

namespace darkspan::pipeline {

namespace fs = std::filesystem;
using io::Json;

inline constexpr std::string_view kStages[] = {"ingest",  "normalize", "corpus",   "embed",    "reduce",
                                               "cluster", "topics",    "timeline", "lifecycle"};

/// Per-snapshot row of snapshots.tsv.
struct SnapshotRow {
  std::string snapshot_id;
  std::size_t website_id = 0;
  std::string timestamp;
  std::int64_t period = 0;
  std::string site_type;
};

/// Sparse distribution as stored in assignment files; key -1 is outlier mass.
using SparseDistribution = std::map<int, double>;

inline std::string format_distribution(const std::vector<double>& probs, double outlier) {
  std::string out;
  for (std::size_t c = 0; c < probs.size(); ++c) {
    if (probs[c] <= 0.0) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(c) + ':' + io::format_double(probs[c]);
  }
  if (outlier > 0.0) {
    if (!out.empty()) out += ' ';
    out += "-1:" + io::format_double(outlier);
  }
  return out;
}

inline SparseDistribution parse_distribution(std::string_view s) {
  SparseDistribution d;
  std::istringstream in{std::string(s)};
  for (std::string pair; in >> pair;) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::Parse, "bad membership pair '" + pair + "'");
    try {
      d[std::stoi(pair.substr(0, colon))] += std::stod(pair.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad membership pair '" + pair + "'");
    }
  }
  return d;
}

/// Reads a tab-separated file, skipping `#` header lines.
inline std::vector<std::vector<std::string>> read_tsv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(io::read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(io::split(line, '\t'));
  }
  return rows;
}

class Pipeline {
 public:
  Pipeline(config::RunConfig cfg, fs::path out_dir, std::ostream& log)
      : cfg_(std::move(cfg)), out_(std::move(out_dir)), log_(log) {}

  void run(std::string_view stage) {
    if (stage == "all") {
      for (std::string_view s : kStages) run(s);
      return;
    }
    current_ = std::string(stage);
    if (stage == "simulate") return simulate();
    fs::create_directories(out_);
    io::atomic_write(out_ / "config.used", config::echo(cfg_));
    if (stage == "ingest") return ingest();
    if (stage == "normalize") return normalize();
    if (stage == "corpus") return corpus();
    if (stage == "embed") return embed();
    if (stage == "reduce") return reduce();
    if (stage == "cluster") return cluster();
    if (stage == "topics") return topics();
    if (stage == "timeline") return timeline();
    if (stage == "lifecycle") return lifecycle();
    throw Error(ErrorCode::InvalidArgument, "unknown subcommand " + std::string(stage));
  }

  const std::string& current_stage() const noexcept { return current_; }

 private:
  fs::path at(std::string_view name) const { return out_ / name; }

  fs::path require(std::string_view name, std::string_view producer) const {
    const fs::path p = at(name);
    if (!fs::is_regular_file(p)) {
      throw Error(ErrorCode::Io, "missing " + std::string(name) + "; run '" + std::string(producer) + "' first");
    }
    return p;
  }

  /// Digest of the stage name, its config section, and the given inputs.
  std::string stage_key(std::string_view stage, const std::vector<fs::path>& inputs) const {
    Fnv1a64 h;
    h.update(stage).update("\n").update(config::echo(cfg_, stage));
    for (const fs::path& p : inputs) {
      h.update(p.filename().string()).update("=").update(io::file_digest(p)).update("\n");
    }
    return hex64(h.digest());
  }

  bool cached(std::string_view stage, const std::string& key, const std::vector<std::string_view>& outputs) const {
    const fs::path meta = out_ / ".cache" / (std::string(stage) + ".key");
    if (!fs::is_regular_file(meta) || io::read_text(meta) != key + "\n") return false;
    for (auto o : outputs) {
      if (!fs::exists(at(o))) return false;
    }
    log_ << "darkspan: " << stage << ": inputs and config unchanged, reusing cached outputs\n";
    return true;
  }

  void record(std::string_view stage, const std::string& key) const {
    io::atomic_write(out_ / ".cache" / (std::string(stage) + ".key"), key + "\n");
  }

  void add_optional(std::vector<fs::path>& inputs, const std::string& path) const {
    if (!path.empty()) inputs.push_back(cfg_.resolve(path));
  }

  textnorm::Normalizer make_normalizer() const {
    textnorm::StopwordList stop;
    textnorm::Lemmatizer lem;
    if (!cfg_.stopwords.empty()) stop = textnorm::StopwordList::from_file(cfg_.resolve(cfg_.stopwords).string());
    if (!cfg_.lemma_table.empty()) lem = textnorm::Lemmatizer::from_file(cfg_.resolve(cfg_.lemma_table).string());
    return {std::move(stop), std::move(lem)};
  }

  // ---------------------------------------------------------------------
  void ingest() {
    if (cfg_.manifest.empty()) throw ConfigError("manifest", "no manifest given (config key or --manifest)");
    const fs::path manifest = cfg_.resolve(cfg_.manifest);
    if (!fs::is_regular_file(manifest)) throw Error(ErrorCode::Io, "cannot read manifest " + manifest.string());
    const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");

    std::vector<ingest::SnapshotMeta> metas;
    std::set<std::string> ids;
    io::read_jsonl(manifest, [&](const nlohmann::json& j) {
      auto str = [&](const char* k) {
        const auto it = j.find(k);
        return it != j.end() && it->is_string() ? it->get<std::string>() : std::string();
      };
      ingest::SnapshotMeta m{str("snapshot_id"), str("website_path"), str("page_title"),
                             str("timestamp"),   str("html_path"),     str("site_type")};
      if (m.snapshot_id.empty()) throw Error(ErrorCode::Parse, "manifest entry without snapshot_id");
      if (!ids.insert(m.snapshot_id).second) throw Error(ErrorCode::DuplicateId, "duplicate snapshot_id " + m.snapshot_id);
      metas.push_back(std::move(m));
    });

    // A timestamp before the epoch is a configuration problem, not bad data.
    for (const auto& m : metas) {
      if (const auto ts = parse_iso8601(m.timestamp)) {
        try {
          (void)timeline::bucket(*ts, cfg_.epoch);
        } catch (const Error&) {
          throw ConfigError("epoch", "snapshot " + m.snapshot_id + " at " + m.timestamp + " precedes epoch " +
                                         cfg_.epoch.str() + (cfg_.epoch_set ? "" : " (default)"));
        }
      }
    }

    std::vector<fs::path> inputs{manifest};
    add_optional(inputs, cfg_.stopwords);
    add_optional(inputs, cfg_.lemma_table);
    for (const auto& m : metas) {
      if (!m.html_ref.empty()) inputs.push_back(fs::path(m.html_ref).is_relative() ? base / m.html_ref : fs::path(m.html_ref));
    }
    const std::string key = stage_key("ingest", inputs);
    if (cached("ingest", key, {"docs.jsonl", "rejections.jsonl"})) return;

    const textnorm::Normalizer normalizer = make_normalizer();
    const ingest::ValidationRules rules{cfg_.min_chars, cfg_.error_phrases};
    std::vector<std::optional<ingest::Validation>> results(metas.size());
    parallel_for(metas.size(), [&](std::size_t i) {
      results[i] = ingest::ingest_snapshot(metas[i], base, rules, normalizer);
    });

    std::string docs, rejections;
    std::map<std::string, std::size_t> by_reason;
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < metas.size(); ++i) {
      if (const auto* doc = std::get_if<ingest::ExtractedDoc>(&*results[i])) {
        Json j;
        j["snapshot_id"] = metas[i].snapshot_id;
        j["website_path"] = metas[i].website_path;
        j["page_title"] = metas[i].page_title;
        j["timestamp"] = metas[i].timestamp;
        j["site_type"] = metas[i].site_type;
        j["char_count"] = doc->char_count;
        j["text"] = doc->text;
        docs += io::dump(j) + "\n";
        ++accepted;
      } else {
        const auto& r = std::get<ingest::Rejection>(*results[i]);
        Json j;
        j["snapshot_id"] = r.snapshot_id;
        j["reason"] = ingest::to_string(r.reason);
        rejections += io::dump(j) + "\n";
        ++by_reason[std::string(ingest::to_string(r.reason))];
      }
    }
    Json stats;
    stats["snapshots"] = metas.size();
    stats["accepted"] = accepted;
    stats["rejected"] = metas.size() - accepted;
    stats["rejected_by_reason"] = by_reason;
    io::atomic_write(at("docs.jsonl"), docs);
    io::atomic_write(at("rejections.jsonl"), rejections);
    io::atomic_write(at("ingest_stats.json"), io::dump(stats, 2) + "\n");
    record("ingest", key);
    log_ << "darkspan: ingest: " << accepted << " accepted, " << metas.size() - accepted << " rejected\n";
  }

  // ---------------------------------------------------------------------
  void normalize() {
    const fs::path docs_path = require("docs.jsonl", "ingest");
    std::vector<fs::path> inputs{docs_path};
    add_optional(inputs, cfg_.stopwords);
    add_optional(inputs, cfg_.lemma_table);
    const std::string key = stage_key("normalize", inputs);
    if (cached("normalize", key, {"tokens.jsonl", "language_filtered.jsonl"})) return;

    std::vector<std::pair<std::string, std::string>> docs;  // id, text
    io::read_jsonl(docs_path, [&](const nlohmann::json& j) {
      docs.emplace_back(j.at("snapshot_id").get<std::string>(), j.at("text").get<std::string>());
    });
    const textnorm::Normalizer normalizer = make_normalizer();
    const textnorm::LanguageDetector detector;
    std::vector<textnorm::TokenList> tokens(docs.size());
    std::vector<textnorm::LanguageVerdict> verdicts(docs.size());
    parallel_for(docs.size(), [&](std::size_t i) {
      verdicts[i] = detector.detect(docs[i].second);
      tokens[i] = normalizer.normalize(docs[i].second);
    });
    std::string kept, dropped;
    std::size_t n_kept = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (verdicts[i].is("en") && verdicts[i].confidence >= cfg_.min_language_confidence) {
        Json j;
        j["snapshot_id"] = docs[i].first;
        j["tokens"] = tokens[i];
        kept += io::dump(j) + "\n";
        ++n_kept;
      } else {
        Json j;
        j["snapshot_id"] = docs[i].first;
        j["language"] = verdicts[i].lang;
        j["confidence"] = verdicts[i].confidence;
        dropped += io::dump(j) + "\n";
      }
    }
    io::atomic_write(at("tokens.jsonl"), kept);
    io::atomic_write(at("language_filtered.jsonl"), dropped);
    record("normalize", key);
    log_ << "darkspan: normalize: " << n_kept << " English, " << docs.size() - n_kept << " filtered\n";
  }

  std::unordered_map<std::string, textnorm::TokenList> load_tokens() const {
    std::unordered_map<std::string, textnorm::TokenList> out;
    io::read_jsonl(require("tokens.jsonl", "normalize"), [&](const nlohmann::json& j) {
      out[j.at("snapshot_id").get<std::string>()] = j.at("tokens").get<textnorm::TokenList>();
    });
    return out;
  }

  // ---------------------------------------------------------------------
  void corpus() {
    const fs::path docs_path = require("docs.jsonl", "ingest");
    const fs::path tokens_path = require("tokens.jsonl", "normalize");
    const std::string key = stage_key("corpus", {docs_path, tokens_path});
    if (cached("corpus", key, {"websites.jsonl", "snapshots.tsv"})) return;

    const auto tokens = load_tokens();
    std::vector<ingest::SnapshotMeta> accepted;
    std::unordered_map<std::string, std::string> site_types;
    io::read_jsonl(docs_path, [&](const nlohmann::json& j) {
      std::string id = j.at("snapshot_id").get<std::string>();
      if (!tokens.count(id)) return;
      site_types[id] = j.value("site_type", "");
      accepted.push_back({id, j.at("website_path").get<std::string>(), j.at("page_title").get<std::string>(),
                          j.at("timestamp").get<std::string>(), "", j.value("site_type", "")});
    });
    const timeline::Epoch epoch = cfg_.epoch;
    auto bucket = [epoch](UtcTime t) { return timeline::bucket(t, epoch); };
    corpus::CorpusStats stats;
    const auto histories = corpus::build_corpus(accepted, tokens, bucket, cfg_.min_snapshots, &stats);

    std::string websites, snapshots = "#snapshot_id\twebsite_id\ttimestamp\tperiod\tsite_type\n";
    for (const auto& h : histories) {
      Json j;
      j["website_id"] = h.website_id;
      j["path"] = h.key.path;
      j["title"] = h.key.title;
      std::vector<std::string> ids;
      for (const auto& s : h.snapshots) {
        ids.push_back(s.snapshot_id);
        snapshots += s.snapshot_id + "\t" + std::to_string(h.website_id) + "\t" + format_iso8601(s.timestamp) +
                     "\t" + std::to_string(bucket(s.timestamp)) + "\t" + site_types[s.snapshot_id] + "\n";
      }
      j["snapshot_ids"] = ids;
      websites += io::dump(j) + "\n";
    }
    Json js;
    js["accepted"] = stats.accepted;
    js["dropped_group_snapshots"] = stats.dropped_group_snapshots;
    js["dropped_groups"] = stats.dropped_groups;
    js["dedup_removed"] = stats.dedup_removed;
    js["retained"] = stats.retained;
    js["websites"] = histories.size();
    io::atomic_write(at("websites.jsonl"), websites);
    io::atomic_write(at("snapshots.tsv"), snapshots);
    io::atomic_write(at("corpus_stats.json"), io::dump(js, 2) + "\n");
    record("corpus", key);
    log_ << "darkspan: corpus: " << histories.size() << " websites, " << stats.retained << " snapshots\n";
  }

  std::vector<SnapshotRow> load_snapshots() const {
    std::vector<SnapshotRow> rows;
    for (auto& r : read_tsv(require("snapshots.tsv", "corpus"))) {
      if (r.size() < 4) throw Error(ErrorCode::Parse, "snapshots.tsv: short row");
      rows.push_back({r[0], std::stoul(r[1]), r[2], std::stoll(r[3]), r.size() > 4 ? r[4] : ""});
    }
    return rows;
  }

  // ---------------------------------------------------------------------
  void embed() {
    const fs::path snaps = require("snapshots.tsv", "corpus");
    const fs::path toks = require("tokens.jsonl", "normalize");
    std::vector<fs::path> inputs{snaps, toks};
    const bool external = cfg_.embedding_kind == "external";
    if (external) {
      if (cfg_.vectors_path.empty()) throw ConfigError("vectors_path", "required when embedding_kind = external");
      inputs.push_back(cfg_.resolve(cfg_.vectors_path));
    }
    const std::string key = stage_key("embed", inputs);
    if (cached("embed", key, {"vectors.tsv"})) return;

    const auto rows = load_snapshots();
    std::vector<std::vector<double>> vectors(rows.size());
    std::size_t dim = cfg_.embedding_dim;
    if (external) {
      const embed::VectorTable table = embed::load_vectors(cfg_.resolve(cfg_.vectors_path).string());
      dim = table.dim();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto v = table.find(rows[i].snapshot_id);
        if (!v) throw Error(ErrorCode::InvalidArgument, "no vector for snapshot " + rows[i].snapshot_id);
        vectors[i].assign(v->begin(), v->end());
      }
    } else {
      const auto tokens = load_tokens();
      parallel_for(rows.size(), [&](std::size_t i) {
        vectors[i] = embed::embed_hashing(tokens.at(rows[i].snapshot_id), dim, cfg_.seed);
      });
    }
    embed::VectorTable table(dim);
    for (std::size_t i = 0; i < rows.size(); ++i) table.add(rows[i].snapshot_id, vectors[i]);
    std::ostringstream out;
    embed::write_vectors(out, table);
    io::atomic_write(at("vectors.tsv"), out.str());
    record("embed", key);
    log_ << "darkspan: embed: " << rows.size() << " vectors of dimension " << dim << "\n";
  }

  // ---------------------------------------------------------------------
  void reduce() {
    const fs::path in = require("vectors.tsv", "embed");
    const std::string key = stage_key("reduce", {in});
    if (cached("reduce", key, {"reduced.tsv"})) return;

    const embed::VectorTable vectors = embed::load_vectors(in.string());
    reduce::ReduceConfig rc;
    rc.n_components = cfg_.n_components;
    rc.metric = cfg_.reduce_metric;
    rc.n_neighbors = cfg_.n_neighbors;
    rc.n_epochs = cfg_.n_epochs;
    rc.min_dist = cfg_.min_dist;
    rc.seed = cfg_.seed;
    const Matrix reduced = reduce::reduce(vectors.values(), rc);
    embed::VectorTable table(reduced.cols());
    for (std::size_t i = 0; i < reduced.rows(); ++i) table.add(vectors.ids()[i], reduced.row(i));
    std::ostringstream out;
    embed::write_vectors(out, table);
    io::atomic_write(at("reduced.tsv"), out.str());
    record("reduce", key);
    log_ << "darkspan: reduce: " << reduced.rows() << " x " << reduced.cols() << "\n";
  }

  // ---------------------------------------------------------------------
  void cluster() {
    const fs::path in = require("reduced.tsv", "reduce");
    const std::string key = stage_key("cluster", {in});
    if (cached("cluster", key, {"assignments.tsv", "condensed_tree.json", "clusters.json"})) return;

    const embed::VectorTable table = embed::load_vectors(in.string());
    const Matrix& points = table.values();
    const cluster::ClusterConfig cc{cfg_.min_cluster_size, cfg_.min_samples, cfg_.noise_outlier_mass};
    const cluster::ClusterResult result = cluster::hdbscan(points, cc);
    const auto members = cluster::membership_vectors(result, points, cfg_.noise_outlier_mass);

    std::string assignments = "#snapshot_id\tlabel\tmembership\n";
    std::size_t noise = 0;
    std::vector<std::size_t> sizes(result.n_clusters(), 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
      const int label = result.labels[i];
      if (label < 0) {
        ++noise;
      } else {
        ++sizes[static_cast<std::size_t>(label)];
      }
      assignments += table.ids()[i] + "\t" + std::to_string(label) + "\t" +
                     format_distribution(members[i].probabilities, members[i].outlier_mass) + "\n";
    }
    Json tree = Json::array();
    for (const auto& e : result.condensed_tree) {
      tree.push_back({{"parent", e.parent}, {"child", e.child}, {"lambda", e.lambda}, {"size", e.size}});
    }
    Json summary;
    summary["points"] = points.rows();
    summary["clusters"] = result.n_clusters();
    summary["noise"] = noise;
    summary["min_cluster_size"] = cfg_.min_cluster_size;
    summary["min_samples"] = cfg_.min_samples;
    Json list = Json::array();
    for (std::size_t c = 0; c < result.n_clusters(); ++c) {
      std::vector<std::string> ex;
      for (std::size_t p : result.exemplars[c]) ex.push_back(table.ids()[p]);
      list.push_back({{"id", c},
                      {"size", sizes[c]},
                      {"condensed_node", result.selected[c]},
                      {"stability", result.stabilities[c]},
                      {"exemplars", ex}});
    }
    summary["cluster_list"] = list;
    io::atomic_write(at("assignments.tsv"), assignments);
    io::atomic_write(at("condensed_tree.json"), io::dump(tree) + "\n");
    io::atomic_write(at("clusters.json"), io::dump(summary, 2) + "\n");
    record("cluster", key);
    log_ << "darkspan: cluster: " << result.n_clusters() << " clusters, " << noise << " noise points\n";
  }

  struct Assignment {
    std::string snapshot_id;
    int label = -1;
    SparseDistribution dist;
  };

  std::vector<Assignment> load_assignments(std::string_view name, std::string_view producer, bool labelled) const {
    std::vector<Assignment> out;
    for (auto& r : read_tsv(require(name, producer))) {
      Assignment a;
      a.snapshot_id = r.at(0);
      if (labelled) {
        a.label = std::stoi(r.at(1));
        a.dist = parse_distribution(r.size() > 2 ? r[2] : "");
      } else {
        a.dist = parse_distribution(r.size() > 1 ? r[1] : "");
      }
      out.push_back(std::move(a));
    }
    return out;
  }

  // ---------------------------------------------------------------------
  void topics() {
    const fs::path assign = require("assignments.tsv", "cluster");
    const fs::path toks = require("tokens.jsonl", "normalize");
    const fs::path clusters = require("clusters.json", "cluster");
    std::vector<fs::path> inputs{assign, toks, clusters};
    for (const auto* p : {&cfg_.label_override, &cfg_.label_responses, &cfg_.merge_map, &cfg_.category_map}) {
      add_optional(inputs, *p);
    }
    if (cfg_.label_mode == config::LabelMode::Override && cfg_.label_override.empty()) {
      throw ConfigError("label_override", "required when label_mode = override");
    }
    const std::string key = stage_key("topics", inputs);
    if (cached("topics", key, {"topics.json", "merged_assignments.tsv"})) return;

    const auto assignments = load_assignments("assignments.tsv", "cluster", true);
    const auto tokens = load_tokens();
    const std::size_t n_raw = nlohmann::json::parse(io::read_text(clusters)).at("clusters").get<std::size_t>();

    topics::ClassTokens classes;
    for (std::size_t c = 0; c < n_raw; ++c) classes[static_cast<int>(c)];
    for (const auto& a : assignments) {
      if (a.label < 0) continue;
      const auto& t = tokens.at(a.snapshot_id);
      auto& bag = classes[a.label];
      bag.insert(bag.end(), t.begin(), t.end());
    }
    std::map<int, topics::TopicRepresentation> reps;
    if (!classes.empty()) reps = topics::ctfidf(classes, cfg_.top_k);

    std::string prompts;
    if (cfg_.label_mode == config::LabelMode::External) {
      for (const auto& [id, rep] : reps) {
        Json j;
        j["topic_id"] = id;
        j["prompt"] = topics::build_prompt(rep);
        prompts += io::dump(j) + "\n";
      }
      io::atomic_write(at("prompts.jsonl"), prompts);
      if (!cfg_.label_responses.empty()) {
        topics::apply_labels(reps, topics::load_id_label_file(cfg_.resolve(cfg_.label_responses).string(), "label responses"),
                             topics::LabelSource::External);
      }
    }
    if (!cfg_.label_override.empty()) {
      topics::apply_labels(reps, topics::load_id_label_file(cfg_.resolve(cfg_.label_override).string(), "label override"),
                           topics::LabelSource::Override);
    }
    std::vector<std::pair<int, std::string>> merge_map;
    if (!cfg_.merge_map.empty()) {
      merge_map = topics::load_id_label_file(cfg_.resolve(cfg_.merge_map).string(), "merge map");
    }
    const topics::MergeRegistry registry = topics::build_registry(reps, merge_map);
    timeline::CategoryMap categories;
    if (!cfg_.category_map.empty()) categories = timeline::load_category_map(cfg_.resolve(cfg_.category_map).string());

    // Keywords of merged topics come from their pooled classes.
    topics::ClassTokens merged_classes;
    for (const auto& [raw, bag] : classes) {
      auto& dst = merged_classes[registry.raw_to_merged.at(raw)];
      dst.insert(dst.end(), bag.begin(), bag.end());
    }
    std::map<int, topics::TopicRepresentation> merged_reps;
    if (!merged_classes.empty()) merged_reps = topics::ctfidf(merged_classes, cfg_.top_k);

    std::set<int> mapped;
    for (const auto& [raw, label] : merge_map) mapped.insert(raw);
    Json list = Json::array();
    for (const auto& t : registry.topics) {
      Json j;
      j["id"] = t.merged_id;
      j["label"] = t.label;
      const bool via_map = mapped.count(t.raw_ids.front()) > 0;
      j["label_source"] = via_map ? "override" : topics::to_string(reps.at(t.raw_ids.front()).label_source);
      const auto cat = categories.find(t.label);
      j["category"] = cat == categories.end() ? std::string(timeline::kUncategorized) : cat->second;
      Json terms = Json::array();
      for (const auto& tw : merged_reps.at(t.merged_id).top_terms) terms.push_back({{"term", tw.term}, {"weight", tw.weight}});
      j["top_terms"] = terms;
      Json raw = Json::array();
      for (int r : t.raw_ids) raw.push_back({{"id", r}, {"label", reps.at(r).label}});
      j["raw_topics"] = raw;
      list.push_back(std::move(j));
    }
    Json doc;
    doc["topics"] = list;

    std::string merged = "#snapshot_id\tmembership\n";
    for (const auto& a : assignments) {
      std::vector<double> raw(n_raw, 0.0);
      double outlier = 0.0;
      for (const auto& [id, p] : a.dist) {
        if (id < 0) {
          outlier += p;
        } else {
          if (static_cast<std::size_t>(id) >= n_raw) {
            throw Error(ErrorCode::UnknownRawTopic, "assignment names topic " + std::to_string(id));
          }
          raw[static_cast<std::size_t>(id)] = p;
        }
      }
      merged += a.snapshot_id + "\t" + format_distribution(topics::merge_distribution(raw, registry), outlier) + "\n";
    }
    io::atomic_write(at("topics.json"), io::dump(doc, 2) + "\n");
    io::atomic_write(at("merged_assignments.tsv"), merged);
    record("topics", key);
    log_ << "darkspan: topics: " << reps.size() << " raw topics, " << registry.size() << " after merging\n";
  }

  struct TopicInfo {
    std::string label;
    std::string category;
  };

  std::vector<TopicInfo> load_topics() const {
    std::vector<TopicInfo> out;
    const auto doc = nlohmann::json::parse(io::read_text(require("topics.json", "topics")));
    for (const auto& t : doc.at("topics")) {
      out.push_back({t.at("label").get<std::string>(), t.at("category").get<std::string>()});
    }
    return out;
  }

  // ---------------------------------------------------------------------
  void timeline() {
    const fs::path merged = require("merged_assignments.tsv", "topics");
    const fs::path snaps = require("snapshots.tsv", "corpus");
    const fs::path topics_path = require("topics.json", "topics");
    std::vector<fs::path> inputs{merged, snaps, topics_path};
    add_optional(inputs, cfg_.category_map);
    const std::string key = stage_key("timeline", inputs);
    if (cached("timeline", key, {"prevalence.csv", "concentration.json", "categories.csv", "periods.csv"})) return;

    const auto topic_info = load_topics();
    const auto rows = load_snapshots();
    const auto assignments = load_assignments("merged_assignments.tsv", "topics", false);
    std::unordered_map<std::string, const SnapshotRow*> by_id;
    for (const auto& r : rows) by_id[r.snapshot_id] = &r;

    std::int64_t max_period = -1;
    for (const auto& r : rows) max_period = std::max(max_period, r.period);
    std::size_t n_periods = cfg_.periods;
    if (n_periods == 0) {
      n_periods = static_cast<std::size_t>(max_period + 1);
    } else if (max_period >= static_cast<std::int64_t>(n_periods)) {
      throw ConfigError("periods", "snapshots reach period " + std::to_string(max_period) + " but periods = " +
                                       std::to_string(n_periods));
    }
    const std::size_t k = topic_info.size();
    std::vector<timeline::Distribution> dists;
    std::vector<std::int64_t> periods;
    std::vector<std::string> site_type;
    for (const auto& a : assignments) {
      const auto it = by_id.find(a.snapshot_id);
      if (it == by_id.end()) throw Error(ErrorCode::InvalidArgument, "snapshot " + a.snapshot_id + " not in corpus");
      timeline::Distribution d;
      d.probabilities.assign(k, 0.0);
      for (const auto& [id, p] : a.dist) {
        if (id < 0) {
          d.outlier_mass += p;
        } else {
          d.probabilities.at(static_cast<std::size_t>(id)) = p;
        }
      }
      dists.push_back(std::move(d));
      periods.push_back(it->second->period);
      site_type.push_back(it->second->site_type);
    }
    const auto table = timeline::aggregate_prevalence(dists, periods, k, n_periods, cfg_.include_outliers_in_denominator);

    std::string prev = "topic_id,label,period,mass,share\n";
    std::string stacked = "#topic_id\tperiod\tquarter\tshare\n";
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t p = 0; p < n_periods; ++p) {
        prev += std::to_string(t) + "," + io::csv_field(topic_info[t].label) + "," + std::to_string(p) + "," +
                io::format_double(table.mass(t, p)) + "," + io::format_double(table.share(t, p)) + "\n";
        stacked += std::to_string(t) + "\t" + std::to_string(p) + "\t" + cfg_.epoch.period_label(static_cast<std::int64_t>(p)) +
                   "\t" + io::format_double(table.share(t, p)) + "\n";
      }
    }
    std::string per = "period,quarter,snapshots,outlier_mass,empty\n";
    for (std::size_t p = 0; p < n_periods; ++p) {
      per += std::to_string(p) + "," + cfg_.epoch.period_label(static_cast<std::int64_t>(p)) + "," +
             std::to_string(table.snapshots[p]) + "," + io::format_double(table.outlier_mass[p]) + "," +
             (table.empty_period(p) ? "true" : "false") + "\n";
    }

    const auto conc = timeline::concentration(table.global_share);
    Json cj;
    cj["top_5"] = conc.top_5;
    cj["top_10"] = conc.top_10;
    cj["top_20"] = conc.top_20;
    cj["min_topics_50"] = conc.min_topics_50 ? Json(*conc.min_topics_50) : Json(nullptr);
    cj["min_topics_75"] = conc.min_topics_75 ? Json(*conc.min_topics_75) : Json(nullptr);
    cj["topics"] = k;
    cj["grand_total_mass"] = table.grand_total;
    double topic_mass = 0.0;
    for (double g : table.global_share) topic_mass += g;
    cj["outlier_share"] = table.grand_total > 0.0 ? 1.0 - topic_mass : 0.0;
    Json ranking = Json::array();
    for (std::size_t t : conc.order) {
      ranking.push_back({{"topic_id", t}, {"label", topic_info[t].label}, {"global_share", table.global_share[t]}});
    }
    cj["ranking"] = ranking;

    // Category shares over topic mass only, so the five rows sum to one.
    std::vector<double> renorm(table.global_share);
    if (topic_mass > 0.0) {
      for (double& v : renorm) v /= topic_mass;
    }
    timeline::CategoryMap cmap;
    std::vector<std::string> labels;
    for (std::size_t t = 0; t < k; ++t) {
      labels.push_back(topic_info[t].label);
      if (topic_info[t].category != timeline::kUncategorized) cmap[topic_info[t].label] = topic_info[t].category;
    }
    std::string cats = "category,share\n";
    for (const auto& c : timeline::category_rollup(renorm, labels, cmap)) {
      cats += c.category + "," + io::format_double(c.share) + "\n";
    }

    io::atomic_write(at("prevalence.csv"), prev);
    io::atomic_write(at("periods.csv"), per);
    io::atomic_write(at("concentration.json"), io::dump(cj, 2) + "\n");
    io::atomic_write(at("categories.csv"), cats);
    io::atomic_write(at("plotdata/stacked_shares.tsv"), stacked);

    // Platform split, only when the manifest carried site types.
    std::set<std::string> types(site_type.begin(), site_type.end());
    types.erase("");
    const fs::path split = at("prevalence_by_site_type.csv");
    if (!types.empty()) {
      std::string out = "site_type,topic_id,period,mass,share\n";
      for (const auto& st : types) {
        std::vector<timeline::Distribution> sub;
        std::vector<std::int64_t> sub_periods;
        for (std::size_t i = 0; i < dists.size(); ++i) {
          if (site_type[i] == st) sub.push_back(dists[i]), sub_periods.push_back(periods[i]);
        }
        const auto t2 = timeline::aggregate_prevalence(sub, sub_periods, k, n_periods, cfg_.include_outliers_in_denominator);
        for (std::size_t t = 0; t < k; ++t) {
          for (std::size_t p = 0; p < n_periods; ++p) {
            out += io::csv_field(st) + "," + std::to_string(t) + "," + std::to_string(p) + "," +
                   io::format_double(t2.mass(t, p)) + "," + io::format_double(t2.share(t, p)) + "\n";
          }
        }
      }
      io::atomic_write(split, out);
    } else {
      std::error_code ec;
      fs::remove(split, ec);
    }
    record("timeline", key);
    log_ << "darkspan: timeline: " << k << " topics over " << n_periods << " periods\n";
  }

  // ---------------------------------------------------------------------
  void lifecycle() {
    const fs::path prev = require("prevalence.csv", "timeline");
    const fs::path per = require("periods.csv", "timeline");
    const fs::path topics_path = require("topics.json", "topics");
    const std::string key = stage_key("lifecycle", {prev, per, topics_path});
    if (cached("lifecycle", key, {"lifecycle.csv", "lifecycle_summary.json"})) return;

    const auto topic_info = load_topics();
    std::size_t n_periods = 0;
    {
      std::istringstream in(io::read_text(per));
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) n_periods += line.empty() ? 0 : 1;
    }
    std::vector<std::vector<double>> series(topic_info.size(), std::vector<double>(n_periods, 0.0));
    {
      std::istringstream in(io::read_text(prev));
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = io::parse_csv_line(line);
        if (f.size() != 5) throw Error(ErrorCode::Parse, "prevalence.csv: malformed row");
        series.at(std::stoul(f[0])).at(std::stoul(f[2])) = std::stod(f[4]);
      }
    }
    const lifecycle::EpisodicRule rule{cfg_.episodic_max_lifespan, cfg_.episodic_max_recurrence};
    std::vector<lifecycle::LifecycleMetrics> metrics;
    std::vector<std::size_t> active_topics, inactive;
    std::string csv =
        "topic_id,label,first_active,peak,last_active,lifespan_periods,lifespan_months,recurrence,"
        "growth_slope,decay_slope,peak_to_last_months,class\n";
    std::string gd = "#topic_id\tgrowth_slope\tdecay_slope\tclass\n";
    std::string rl = "#topic_id\tlifespan_periods\trecurrence\tclass\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
      lifecycle::LifecycleMetrics m;
      try {
        m = lifecycle::lifecycle_metrics(series[t], cfg_.tau, rule);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoActivity) throw;
        inactive.push_back(t);
        continue;
      }
      metrics.push_back(m);
      active_topics.push_back(t);
      const std::string cls(lifecycle::to_string(m.cls));
      csv += std::to_string(t) + "," + io::csv_field(topic_info[t].label) + "," + std::to_string(m.first_active) + "," +
             std::to_string(m.peak) + "," + std::to_string(m.last_active) + "," + std::to_string(m.lifespan_periods) +
             "," + std::to_string(m.lifespan_months) + "," + std::to_string(m.recurrence) + "," +
             io::format_double(m.growth_slope) + "," + io::format_double(m.decay_slope) + "," +
             std::to_string(m.peak_to_last_months) + "," + cls + "\n";
      gd += std::to_string(t) + "\t" + io::format_double(m.growth_slope) + "\t" + io::format_double(m.decay_slope) + "\t" + cls + "\n";
      rl += std::to_string(t) + "\t" + std::to_string(m.lifespan_periods) + "\t" + std::to_string(m.recurrence) + "\t" + cls + "\n";
    }
    std::string hist = "#lifespan_periods\ttopics\n";
    for (std::size_t L = 1; L <= n_periods; ++L) {
      std::size_t count = 0;
      for (const auto& m : metrics) count += m.lifespan_periods == L ? 1 : 0;
      hist += std::to_string(L) + "\t" + std::to_string(count) + "\n";
    }

    Json sj;
    sj["periods"] = n_periods;
    sj["tau"] = cfg_.tau;
    sj["active_topics"] = metrics.size();
    sj["inactive_topics"] = inactive;
    if (!metrics.empty() && n_periods > 0) {
      const auto s = lifecycle::cohort_summary(metrics, n_periods - 1);
      sj["median_lifespan_periods"] = s.median_lifespan_periods;
      sj["median_lifespan_months"] = s.median_lifespan_months;
      sj["mean_lifespan_periods"] = s.mean_lifespan_periods;
      sj["mean_lifespan_months"] = s.mean_lifespan_months;
      sj["disappearing_topics"] = s.disappearing;
      sj["mean_peak_to_last_months"] =
          s.mean_peak_to_last_months ? Json(*s.mean_peak_to_last_months) : Json(nullptr);
      sj["max_growth_slope"] = s.max_growth_slope;
      sj["min_decay_slope"] = s.min_decay_slope;
      sj["continuous"] = s.continuous;
      sj["recurring"] = s.recurring;
      sj["episodic"] = s.episodic;
    }
    io::atomic_write(at("lifecycle.csv"), csv);
    io::atomic_write(at("lifecycle_summary.json"), io::dump(sj, 2) + "\n");
    io::atomic_write(at("plotdata/lifespan_histogram.tsv"), hist);
    io::atomic_write(at("plotdata/growth_decay.tsv"), gd);
    io::atomic_write(at("plotdata/recurrence_lifespan.tsv"), rl);
    record("lifecycle", key);
    log_ << "darkspan: lifecycle: " << metrics.size() << " active topics\n";
  }

  // ---------------------------------------------------------------------
  void simulate() {
    simulate::PlanSpec spec;
    spec.n_topics = cfg_.sim_topics;
    spec.shapes = cfg_.sim_shapes;
    spec.docs_per_topic = cfg_.sim_docs_per_topic;
    spec.n_websites = cfg_.sim_websites;
    spec.periods = cfg_.sim_periods;
    spec.vocabulary_size = cfg_.sim_vocabulary;
    spec.seed = cfg_.seed;
    spec.epoch = cfg_.epoch;
    const simulate::SimPlan plan = simulate::make_plan(spec, make_normalizer());
    fs::create_directories(out_);
    const auto truth = simulate::generate_corpus(plan, out_);
    io::atomic_write(out_ / "config.used", config::echo(cfg_));
    log_ << "darkspan: simulate: " << truth.total() << " snapshots, " << plan.topics.size() << " topics, "
         << plan.n_websites << " websites\n";
  }

  config::RunConfig cfg_;
  fs::path out_;
  std::ostream& log_;
  std::string current_;
};

struct Options {
  std::string subcommand;
  fs::path config_path;
  fs::path out_dir = "darkspan-out";
  std::optional<std::string> manifest;
  std::optional<std::uint64_t> seed;
};

inline bool is_subcommand(std::string_view s) {
  if (s == "all" || s == "simulate") return true;
  return std::find(std::begin(kStages), std::end(kStages), s) != std::end(kStages);
}

/// Runs one subcommand. Returns 0 on success, 2 on configuration errors
/// (message names the key), 1 on stage failures (message names the stage).
inline int run(const Options& opt, std::ostream& err) {
  config::RunConfig cfg;
  try {
    if (!is_subcommand(opt.subcommand)) throw ConfigError("subcommand", "unknown subcommand '" + opt.subcommand + "'");
    cfg = config::load(opt.config_path);
    if (opt.manifest) {
      cfg.manifest = fs::absolute(*opt.manifest).string();
    }
    if (opt.seed) cfg.seed = *opt.seed;
  } catch (const ConfigError& e) {
    err << "darkspan: config error: " << e.what() << "\n";
    return 2;
  }
  Pipeline p(std::move(cfg), opt.out_dir, err);
  try {
    p.run(opt.subcommand);
  } catch (const ConfigError& e) {
    err << "darkspan: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "darkspan: stage " << p.current_stage() << " failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace darkspan::pipeline
