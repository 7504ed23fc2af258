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

// Run configuration: a flat `key = value` file with `#` comments.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/reduce.hpp"
#include "darkspan/simulate.hpp"
#include "darkspan/timeline.hpp"

namespace darkspan::config {

enum class LabelMode { Template, Override, External };

struct RunConfig {
  std::string manifest;
  timeline::Epoch epoch;
  bool epoch_set = false;
  std::size_t periods = 0;  // 0: last observed period + 1
  std::uint64_t seed = 42;

  // ingest / normalize / corpus
  std::size_t min_chars = 50;
  std::vector<std::string> error_phrases{"404", "login", "captcha"};
  std::string stopwords;
  std::string lemma_table;
  double min_language_confidence = 0.5;
  std::size_t min_snapshots = 5;

  // embed / reduce / cluster
  std::string embedding_kind = "hashing";
  std::size_t embedding_dim = 256;
  std::string vectors_path;
  std::size_t n_components = 5;
  reduce::Metric reduce_metric = reduce::Metric::Cosine;
  std::size_t n_neighbors = 15;
  std::size_t n_epochs = 200;
  double min_dist = 0.1;
  std::size_t min_cluster_size = 80;
  std::size_t min_samples = 90;
  double noise_outlier_mass = 0.5;

  // topics / timeline / lifecycle
  std::size_t top_k = 10;
  LabelMode label_mode = LabelMode::Template;
  std::string label_override;
  std::string label_responses;
  std::string merge_map;
  std::string category_map;
  bool include_outliers_in_denominator = false;
  double tau = 1e-6;
  std::size_t episodic_max_lifespan = 10;
  std::size_t episodic_max_recurrence = 10;

  // simulate
  std::size_t sim_topics = 8;
  std::vector<simulate::Shape> sim_shapes{simulate::Shape::Stable, simulate::Shape::Bursting,
                                          simulate::Shape::Emerging, simulate::Shape::Declining,
                                          simulate::Shape::Episodic};
  std::size_t sim_docs_per_topic = 200;
  std::size_t sim_websites = 20;
  std::size_t sim_periods = 25;
  std::size_t sim_vocabulary = 40;

  std::filesystem::path base_dir;  // relative paths resolve against this

  std::filesystem::path resolve(const std::string& p) const {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_relative() ? base_dir / path : path;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(kSpace) - b + 1));
}

inline std::size_t to_size(const std::string& key, const std::string& v, std::size_t min = 0) {
  std::size_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError(key, "expected a non-negative integer, got '" + v + "'");
  if (out < min) throw ConfigError(key, "must be >= " + std::to_string(min));
  return out;
}

inline std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError(key, "expected an unsigned integer, got '" + v + "'");
  return out;
}

inline double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(out)) throw ConfigError(key, "expected a number, got '" + v + "'");
  return out;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

inline std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// A config key: its parser, its canonical printed value, and the stages
/// whose cached outputs it invalidates.
struct Field {
  std::string_view name;
  std::string_view stages;  // space-separated
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

inline const std::vector<Field>& fields() {
  using namespace detail;
  static const std::vector<Field> kFields = {
      {"manifest", "ingest", [](RunConfig& c, const std::string& v) { c.manifest = v; },
       [](const RunConfig& c) { return c.manifest; }},
      {"epoch", "ingest corpus timeline simulate",
       [](RunConfig& c, const std::string& v) {
         const auto e = timeline::Epoch::parse(v);
         if (!e) throw ConfigError("epoch", "expected YYYY-Qn, got '" + v + "'");
         c.epoch = *e;
         c.epoch_set = true;
       },
       [](const RunConfig& c) { return c.epoch.str(); }},
      {"periods", "timeline", [](RunConfig& c, const std::string& v) { c.periods = to_size("periods", v); },
       [](const RunConfig& c) { return std::to_string(c.periods); }},
      {"seed", "embed reduce simulate", [](RunConfig& c, const std::string& v) { c.seed = to_u64("seed", v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"min_chars", "ingest", [](RunConfig& c, const std::string& v) { c.min_chars = to_size("min_chars", v); },
       [](const RunConfig& c) { return std::to_string(c.min_chars); }},
      {"error_phrases", "ingest", [](RunConfig& c, const std::string& v) { c.error_phrases = to_list(v); },
       [](const RunConfig& c) { return join(c.error_phrases); }},
      {"stopwords", "ingest normalize", [](RunConfig& c, const std::string& v) { c.stopwords = v; },
       [](const RunConfig& c) { return c.stopwords; }},
      {"lemma_table", "ingest normalize", [](RunConfig& c, const std::string& v) { c.lemma_table = v; },
       [](const RunConfig& c) { return c.lemma_table; }},
      {"min_language_confidence", "normalize",
       [](RunConfig& c, const std::string& v) {
         c.min_language_confidence = to_double("min_language_confidence", v);
         if (c.min_language_confidence < 0.0 || c.min_language_confidence > 1.0) {
           throw ConfigError("min_language_confidence", "must be in [0, 1]");
         }
       },
       [](const RunConfig& c) { return fmt(c.min_language_confidence); }},
      {"min_snapshots", "corpus",
       [](RunConfig& c, const std::string& v) { c.min_snapshots = to_size("min_snapshots", v, 1); },
       [](const RunConfig& c) { return std::to_string(c.min_snapshots); }},
      {"embedding_kind", "embed",
       [](RunConfig& c, const std::string& v) {
         if (v != "hashing" && v != "external") throw ConfigError("embedding_kind", "expected hashing or external");
         c.embedding_kind = v;
       },
       [](const RunConfig& c) { return c.embedding_kind; }},
      {"embedding_dim", "embed",
       [](RunConfig& c, const std::string& v) { c.embedding_dim = to_size("embedding_dim", v, 8); },
       [](const RunConfig& c) { return std::to_string(c.embedding_dim); }},
      {"vectors_path", "embed", [](RunConfig& c, const std::string& v) { c.vectors_path = v; },
       [](const RunConfig& c) { return c.vectors_path; }},
      {"n_components", "reduce",
       [](RunConfig& c, const std::string& v) { c.n_components = to_size("n_components", v, 2); },
       [](const RunConfig& c) { return std::to_string(c.n_components); }},
      {"reduce_metric", "reduce",
       [](RunConfig& c, const std::string& v) {
         if (v == "cosine") {
           c.reduce_metric = reduce::Metric::Cosine;
         } else if (v == "euclidean") {
           c.reduce_metric = reduce::Metric::Euclidean;
         } else {
           throw ConfigError("reduce_metric", "expected cosine or euclidean");
         }
       },
       [](const RunConfig& c) { return std::string(reduce::to_string(c.reduce_metric)); }},
      {"n_neighbors", "reduce",
       [](RunConfig& c, const std::string& v) { c.n_neighbors = to_size("n_neighbors", v, 2); },
       [](const RunConfig& c) { return std::to_string(c.n_neighbors); }},
      {"n_epochs", "reduce", [](RunConfig& c, const std::string& v) { c.n_epochs = to_size("n_epochs", v); },
       [](const RunConfig& c) { return std::to_string(c.n_epochs); }},
      {"min_dist", "reduce",
       [](RunConfig& c, const std::string& v) {
         c.min_dist = to_double("min_dist", v);
         if (c.min_dist < 0.0) throw ConfigError("min_dist", "must be >= 0");
       },
       [](const RunConfig& c) { return fmt(c.min_dist); }},
      {"min_cluster_size", "cluster",
       [](RunConfig& c, const std::string& v) { c.min_cluster_size = to_size("min_cluster_size", v, 2); },
       [](const RunConfig& c) { return std::to_string(c.min_cluster_size); }},
      {"min_samples", "cluster",
       [](RunConfig& c, const std::string& v) { c.min_samples = to_size("min_samples", v, 1); },
       [](const RunConfig& c) { return std::to_string(c.min_samples); }},
      {"noise_outlier_mass", "cluster",
       [](RunConfig& c, const std::string& v) {
         c.noise_outlier_mass = to_double("noise_outlier_mass", v);
         if (c.noise_outlier_mass < 0.0 || c.noise_outlier_mass > 1.0) {
           throw ConfigError("noise_outlier_mass", "must be in [0, 1]");
         }
       },
       [](const RunConfig& c) { return fmt(c.noise_outlier_mass); }},
      {"top_k", "topics", [](RunConfig& c, const std::string& v) { c.top_k = to_size("top_k", v, 1); },
       [](const RunConfig& c) { return std::to_string(c.top_k); }},
      {"label_mode", "topics",
       [](RunConfig& c, const std::string& v) {
         if (v == "template") {
           c.label_mode = LabelMode::Template;
         } else if (v == "override") {
           c.label_mode = LabelMode::Override;
         } else if (v == "external") {
           c.label_mode = LabelMode::External;
         } else {
           throw ConfigError("label_mode", "expected template, override or external");
         }
       },
       [](const RunConfig& c) {
         return std::string(c.label_mode == LabelMode::Template   ? "template"
                            : c.label_mode == LabelMode::Override ? "override"
                                                                  : "external");
       }},
      {"label_override", "topics", [](RunConfig& c, const std::string& v) { c.label_override = v; },
       [](const RunConfig& c) { return c.label_override; }},
      {"label_responses", "topics", [](RunConfig& c, const std::string& v) { c.label_responses = v; },
       [](const RunConfig& c) { return c.label_responses; }},
      {"merge_map", "topics", [](RunConfig& c, const std::string& v) { c.merge_map = v; },
       [](const RunConfig& c) { return c.merge_map; }},
      {"category_map", "topics timeline", [](RunConfig& c, const std::string& v) { c.category_map = v; },
       [](const RunConfig& c) { return c.category_map; }},
      {"include_outliers_in_denominator", "timeline",
       [](RunConfig& c, const std::string& v) {
         c.include_outliers_in_denominator = to_bool("include_outliers_in_denominator", v);
       },
       [](const RunConfig& c) { return std::string(c.include_outliers_in_denominator ? "true" : "false"); }},
      {"tau", "lifecycle",
       [](RunConfig& c, const std::string& v) {
         c.tau = to_double("tau", v);
         if (c.tau <= 0.0) throw ConfigError("tau", "must be > 0");
       },
       [](const RunConfig& c) { return fmt(c.tau); }},
      {"episodic_max_lifespan", "lifecycle",
       [](RunConfig& c, const std::string& v) { c.episodic_max_lifespan = to_size("episodic_max_lifespan", v); },
       [](const RunConfig& c) { return std::to_string(c.episodic_max_lifespan); }},
      {"episodic_max_recurrence", "lifecycle",
       [](RunConfig& c, const std::string& v) {
         c.episodic_max_recurrence = to_size("episodic_max_recurrence", v);
       },
       [](const RunConfig& c) { return std::to_string(c.episodic_max_recurrence); }},
      {"sim_topics", "simulate", [](RunConfig& c, const std::string& v) { c.sim_topics = to_size("sim_topics", v, 1); },
       [](const RunConfig& c) { return std::to_string(c.sim_topics); }},
      {"sim_shapes", "simulate",
       [](RunConfig& c, const std::string& v) {
         c.sim_shapes.clear();
         for (const auto& item : to_list(v)) {
           const auto s = simulate::parse_shape(item);
           if (!s) throw ConfigError("sim_shapes", "unknown shape '" + item + "'");
           c.sim_shapes.push_back(*s);
         }
         if (c.sim_shapes.empty()) throw ConfigError("sim_shapes", "at least one shape required");
       },
       [](const RunConfig& c) {
         std::vector<std::string> names;
         for (auto s : c.sim_shapes) names.emplace_back(simulate::to_string(s));
         return join(names);
       }},
      {"sim_docs_per_topic", "simulate",
       [](RunConfig& c, const std::string& v) { c.sim_docs_per_topic = to_size("sim_docs_per_topic", v, 1); },
       [](const RunConfig& c) { return std::to_string(c.sim_docs_per_topic); }},
      {"sim_websites", "simulate",
       [](RunConfig& c, const std::string& v) { c.sim_websites = to_size("sim_websites", v, 1); },
       [](const RunConfig& c) { return std::to_string(c.sim_websites); }},
      {"sim_periods", "simulate",
       [](RunConfig& c, const std::string& v) { c.sim_periods = to_size("sim_periods", v, 4); },
       [](const RunConfig& c) { return std::to_string(c.sim_periods); }},
      {"sim_vocabulary", "simulate",
       [](RunConfig& c, const std::string& v) { c.sim_vocabulary = to_size("sim_vocabulary", v, 30); },
       [](const RunConfig& c) { return std::to_string(c.sim_vocabulary); }},
  };
  return kFields;
}

inline const Field* find_field(std::string_view name) {
  for (const Field& f : fields()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

/// Parses the config text. Unknown keys, repeated keys and malformed values
/// raise ConfigError naming the key.
inline RunConfig parse(std::istream& in, std::filesystem::path base_dir = {}) {
  RunConfig cfg;
  cfg.base_dir = std::move(base_dir);
  std::set<std::string> seen;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const Field* f = find_field(key);
    if (!f) throw ConfigError(key, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(key, "key given twice");
    f->set(cfg, value);
  }
  return cfg;
}

inline RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  return parse(in, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

/// Canonical `key = value` lines, restricted to keys that affect `stage`
/// when one is given.
inline std::string echo(const RunConfig& cfg, std::string_view stage = {}) {
  std::string out;
  for (const Field& f : fields()) {
    if (!stage.empty()) {
      const std::string padded = " " + std::string(f.stages) + " ";
      if (padded.find(" " + std::string(stage) + " ") == std::string::npos) continue;
    }
    out += std::string(f.name) + " = " + f.get(cfg) + "\n";
  }
  return out;
}

}  // namespace darkspan::config
