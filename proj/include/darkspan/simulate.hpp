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

// Synthetic longitudinal corpora with planted topics and lifecycle shapes.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "darkspan/error.hpp"
#include "darkspan/rng.hpp"
#include "darkspan/simulate_words.hpp"
#include "darkspan/textnorm.hpp"
#include "darkspan/timeline.hpp"
#include "darkspan/timeutil.hpp"

namespace darkspan::simulate {

enum class Shape { Bursting, Stable, Emerging, Declining, Episodic };

constexpr std::string_view to_string(Shape s) noexcept {
  switch (s) {
    case Shape::Bursting: return "Bursting";
    case Shape::Stable: return "Stable";
    case Shape::Emerging: return "Emerging";
    case Shape::Declining: return "Declining";
    case Shape::Episodic: return "Episodic";
  }
  return "Stable";
}

inline std::optional<Shape> parse_shape(std::string_view s) {
  for (Shape v : {Shape::Bursting, Shape::Stable, Shape::Emerging, Shape::Declining, Shape::Episodic}) {
    std::string_view name = to_string(v);
    if (s.size() == name.size() &&
        std::equal(s.begin(), s.end(), name.begin(), [](char a, char b) {
          return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
        })) {
      return v;
    }
  }
  return std::nullopt;
}

inline constexpr std::size_t kEpisodicBursts = 3;
inline constexpr std::size_t kEpisodicWindow = 9;

/// Planted document counts per period. Episodic draws its periods from
/// `seed`, inside a window of at most nine consecutive periods.
inline std::vector<std::size_t> shape_envelope(Shape shape, std::size_t periods, std::size_t base,
                                               std::uint64_t seed = 0) {
  if (periods < 4) throw Error(ErrorCode::InvalidArgument, "shape envelopes need at least 4 periods");
  std::vector<std::size_t> out(periods, 0);
  const double b = static_cast<double>(base);
  const double last = static_cast<double>(periods - 1);
  auto count = [](double v) { return static_cast<std::size_t>(std::lround(std::max(0.0, v))); };
  switch (shape) {
    case Shape::Stable:
      std::fill(out.begin(), out.end(), base);
      break;
    case Shape::Bursting: {
      const std::size_t peak = periods / 3, end = 2 * periods / 3;
      for (std::size_t p = 0; p < periods; ++p) {
        if (p <= peak) {
          out[p] = count(4.0 * b * static_cast<double>(p) / static_cast<double>(peak));
        } else if (p < end) {
          out[p] = count(4.0 * b * static_cast<double>(end - p) / static_cast<double>(end - peak));
        }
      }
      break;
    }
    case Shape::Emerging:
      for (std::size_t p = 0; p < periods; ++p) out[p] = count(3.0 * b * static_cast<double>(p) / last);
      break;
    case Shape::Declining:
      for (std::size_t p = 0; p < periods; ++p) {
        out[p] = count(3.0 * b * static_cast<double>(periods - 1 - p) / last);
      }
      break;
    case Shape::Episodic: {
      Rng rng(seed);
      const std::size_t window = std::min(kEpisodicWindow, periods);
      const std::size_t start = static_cast<std::size_t>(rng.below(periods - window + 1));
      std::vector<std::size_t> offsets(window);
      for (std::size_t i = 0; i < window; ++i) offsets[i] = i;
      rng.shuffle(std::span<std::size_t>(offsets));
      for (std::size_t i = 0; i < kEpisodicBursts; ++i) out[start + offsets[i]] = base;
      break;
    }
  }
  return out;
}

struct SimTopic {
  std::string name;
  std::vector<std::string> vocabulary;
  Shape shape = Shape::Stable;
  std::size_t base_docs_per_period = 1;
  std::uint64_t envelope_seed = 0;
};

struct SimPlan {
  std::vector<SimTopic> topics;
  std::vector<std::string> background;
  std::size_t n_websites = 10;
  std::size_t periods = 25;
  std::uint64_t seed = 42;
  timeline::Epoch epoch;
  double background_rate = 0.1;
  std::size_t min_tokens = 40;
  std::size_t max_tokens = 80;

  std::vector<std::size_t> envelope(std::size_t t) const {
    const SimTopic& topic = topics[t];
    return shape_envelope(topic.shape, periods, topic.base_docs_per_period, topic.envelope_seed);
  }

  void validate() const {
    if (topics.empty()) throw Error(ErrorCode::InvalidArgument, "plan has no topics");
    if (n_websites == 0) throw Error(ErrorCode::InvalidArgument, "plan needs at least one website");
    for (const SimTopic& t : topics) {
      if (t.vocabulary.size() < 30) throw Error(ErrorCode::InvalidArgument, t.name + ": vocabulary below 30 tokens");
      if (t.base_docs_per_period < 1) throw Error(ErrorCode::InvalidArgument, t.name + ": base below 1");
    }
    for (std::size_t i = 0; i < topics.size(); ++i) {
      const std::set<std::string> a(topics[i].vocabulary.begin(), topics[i].vocabulary.end());
      for (std::size_t j = i + 1; j < topics.size(); ++j) {
        std::size_t shared = 0;
        for (const auto& w : topics[j].vocabulary) shared += a.count(w);
        const std::size_t smaller = std::min(a.size(), topics[j].vocabulary.size());
        if (shared * 10 > smaller) {
          throw Error(ErrorCode::InvalidArgument, topics[i].name + " and " + topics[j].name +
                                                       " share more than 10% of their vocabulary");
        }
      }
    }
  }
};

/// Pool words that normalize to exactly themselves.
inline std::vector<std::string> usable_words(const textnorm::Normalizer& normalizer) {
  std::vector<std::string> out;
  for (std::string_view w : data::kWordPool) {
    const auto tokens = normalizer.normalize(w);
    if (tokens.size() == 1 && tokens[0] == w) out.emplace_back(w);
  }
  return out;
}

/// Base count whose envelope total lands closest to `target` documents.
inline std::size_t base_for_target(Shape shape, std::size_t periods, std::size_t target,
                                   std::uint64_t seed) {
  std::size_t best = 1, best_gap = SIZE_MAX;
  for (std::size_t base = 1; base <= std::max<std::size_t>(target, 1); ++base) {
    std::size_t total = 0;
    for (std::size_t c : shape_envelope(shape, periods, base, seed)) total += c;
    const std::size_t gap = total > target ? total - target : target - total;
    if (gap < best_gap) best = base, best_gap = gap;
    if (total > target) break;
  }
  return best;
}

struct PlanSpec {
  std::size_t n_topics = 8;
  std::vector<Shape> shapes;  // cycled over topics
  std::size_t docs_per_topic = 200;
  std::size_t n_websites = 20;
  std::size_t periods = 25;
  std::size_t vocabulary_size = 40;
  std::size_t background_size = 60;
  std::uint64_t seed = 42;
  timeline::Epoch epoch;
};

/// Disjoint vocabularies drawn from the word pool; base counts chosen so
/// each topic plants roughly `docs_per_topic` documents.
inline SimPlan make_plan(const PlanSpec& spec,
                         const textnorm::Normalizer& normalizer = textnorm::Normalizer{}) {
  if (spec.shapes.empty()) throw Error(ErrorCode::InvalidArgument, "no shapes given");
  std::vector<std::string> pool = usable_words(normalizer);
  const std::size_t need = spec.n_topics * spec.vocabulary_size + spec.background_size;
  if (pool.size() < need) {
    throw Error(ErrorCode::InvalidArgument, "word pool holds " + std::to_string(pool.size()) +
                                                 " words, plan needs " + std::to_string(need));
  }
  Rng rng(spec.seed);
  rng.shuffle(std::span<std::string>(pool));
  SimPlan plan;
  plan.n_websites = spec.n_websites;
  plan.periods = spec.periods;
  plan.seed = spec.seed;
  plan.epoch = spec.epoch;
  std::size_t next = 0;
  for (std::size_t t = 0; t < spec.n_topics; ++t) {
    SimTopic topic;
    topic.shape = spec.shapes[t % spec.shapes.size()];
    char name[32];
    std::snprintf(name, sizeof name, "topic%02zu", t);
    topic.name = name;
    topic.vocabulary.assign(pool.begin() + static_cast<std::ptrdiff_t>(next),
                            pool.begin() + static_cast<std::ptrdiff_t>(next + spec.vocabulary_size));
    std::sort(topic.vocabulary.begin(), topic.vocabulary.end());
    next += spec.vocabulary_size;
    topic.envelope_seed = rng.next_u64();
    topic.base_docs_per_period =
        base_for_target(topic.shape, spec.periods, spec.docs_per_topic, topic.envelope_seed);
    plan.topics.push_back(std::move(topic));
  }
  plan.background.assign(pool.begin() + static_cast<std::ptrdiff_t>(next),
                         pool.begin() + static_cast<std::ptrdiff_t>(next + spec.background_size));
  std::sort(plan.background.begin(), plan.background.end());
  return plan;
}

struct PlantedSnapshot {
  std::string snapshot_id;
  std::size_t topic = 0;
  std::size_t period = 0;
  std::size_t website = 0;
};

struct GroundTruth {
  std::vector<PlantedSnapshot> snapshots;
  std::vector<std::vector<std::size_t>> counts;  // topic x period

  std::size_t total() const noexcept { return snapshots.size(); }
};

namespace detail {

inline std::int64_t quarter_start(const timeline::Epoch& epoch, std::size_t period) {
  const std::int64_t q = epoch.year * 4LL + (epoch.quarter - 1) + static_cast<std::int64_t>(period);
  return days_from_civil(static_cast<int>(q / 4), static_cast<int>(q % 4) * 3 + 1, 1) * 86400;
}

// Function words between the planted nouns keep the text recognisably
// English; normalization drops them as stopwords.
inline constexpr std::string_view kConnectives[] = {"the", "of the", "and the", "with the", "for the", "in the"};

inline std::string render_html(std::size_t website, const std::vector<std::string>& tokens) {
  std::string body;
  const std::size_t paragraphs = tokens.size() >= 60 ? 3 : 2;
  const std::size_t per = (tokens.size() + paragraphs - 1) / paragraphs;
  for (std::size_t i = 0; i < tokens.size(); i += per) {
    body += "<p>";
    for (std::size_t j = i; j < std::min(tokens.size(), i + per); ++j) {
      body += j > i ? " " : "";
      body += kConnectives[j % std::size(kConnectives)];
      body += ' ';
      body += tokens[j];
    }
    body += "</p>\n";
  }
  const std::string site = "Site " + std::to_string(website);
  return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + site +
         "</title><style>body{font-family:serif}</style></head>\n<body>\n"
         "<nav><a href=\"/\">Home</a> | <a href=\"/login\">Login</a> | <a href=\"/rules\">Rules</a></nav>\n"
         "<header><h2>" + site + " portal</h2></header>\n<main>\n" + body +
         "</main>\n<footer>Mirror list and contact details</footer>\n"
         "<script>var session = 'x';</script>\n</body></html>\n";
}

}  // namespace detail

/// Site identity of website `w`.
inline std::string website_path(std::size_t w) { return "/site" + std::to_string(w) + "/index.php"; }
inline std::string website_title(std::size_t w) { return "Site " + std::to_string(w); }

/// Writes manifest.jsonl, html/, ground_truth.jsonl and plan.json under
/// `out_dir`. Documents are generated period by period, topic by topic, and
/// dealt to websites round-robin.
inline GroundTruth generate_corpus(const SimPlan& plan, const std::filesystem::path& out_dir) {
  plan.validate();
  GroundTruth truth;
  for (std::size_t t = 0; t < plan.topics.size(); ++t) truth.counts.push_back(plan.envelope(t));
  std::size_t total = 0;
  for (const auto& row : truth.counts) {
    for (std::size_t c : row) total += c;
  }
  if (total < 5 * plan.n_websites) {
    throw Error(ErrorCode::PlanInfeasible, std::to_string(total) + " documents cannot give " +
                                               std::to_string(plan.n_websites) + " websites 5 snapshots each");
  }

  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "html");
  std::ofstream manifest(out_dir / "manifest.jsonl", std::ios::binary);
  std::ofstream gt(out_dir / "ground_truth.jsonl", std::ios::binary);
  if (!manifest || !gt) throw Error(ErrorCode::Io, "cannot write into " + out_dir.string());

  Rng rng(plan.seed);
  std::size_t next_id = 0;
  for (std::size_t p = 0; p < plan.periods; ++p) {
    const std::int64_t start = detail::quarter_start(plan.epoch, p);
    const std::int64_t span = detail::quarter_start(plan.epoch, p + 1) - start;
    for (std::size_t t = 0; t < plan.topics.size(); ++t) {
      const SimTopic& topic = plan.topics[t];
      for (std::size_t d = 0; d < truth.counts[t][p]; ++d) {
        const std::size_t n_tokens =
            static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(plan.min_tokens),
                                                 static_cast<std::int64_t>(plan.max_tokens)));
        std::vector<std::string> tokens;
        tokens.reserve(n_tokens);
        for (std::size_t k = 0; k < n_tokens; ++k) {
          const auto& source = rng.uniform() < plan.background_rate ? plan.background : topic.vocabulary;
          tokens.push_back(source[rng.below(source.size())]);
        }
        const UtcTime ts{start + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(span)))};
        const std::size_t website = next_id % plan.n_websites;
        char id[32];
        std::snprintf(id, sizeof id, "sim%06zu", next_id++);
        const std::string html_ref = std::string("html/") + id + ".html";
        {
          std::ofstream h(out_dir / html_ref, std::ios::binary);
          h << detail::render_html(website, tokens);
          if (!h) throw Error(ErrorCode::Io, "cannot write " + html_ref);
        }
        nlohmann::ordered_json m;
        m["snapshot_id"] = id;
        m["website_path"] = website_path(website);
        m["page_title"] = website_title(website);
        m["timestamp"] = format_iso8601(ts);
        m["html_path"] = html_ref;
        manifest << m.dump() << '\n';
        nlohmann::ordered_json g;
        g["snapshot_id"] = id;
        g["topic"] = t;
        g["topic_name"] = topic.name;
        g["shape"] = to_string(topic.shape);
        g["period"] = p;
        gt << g.dump() << '\n';
        truth.snapshots.push_back({id, t, p, website});
      }
    }
  }

  nlohmann::ordered_json pj;
  pj["seed"] = plan.seed;
  pj["periods"] = plan.periods;
  pj["epoch"] = plan.epoch.str();
  pj["n_websites"] = plan.n_websites;
  pj["background_rate"] = plan.background_rate;
  pj["tokens_per_doc"] = {plan.min_tokens, plan.max_tokens};
  pj["background"] = plan.background;
  pj["topics"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < plan.topics.size(); ++t) {
    const SimTopic& topic = plan.topics[t];
    nlohmann::ordered_json tj;
    tj["id"] = t;
    tj["name"] = topic.name;
    tj["shape"] = to_string(topic.shape);
    tj["base_docs_per_period"] = topic.base_docs_per_period;
    tj["envelope_seed"] = topic.envelope_seed;
    tj["counts"] = truth.counts[t];
    tj["vocabulary"] = topic.vocabulary;
    pj["topics"].push_back(std::move(tj));
  }
  std::ofstream(out_dir / "plan.json", std::ios::binary) << pj.dump(2) << '\n';
  return truth;
}

/// Reads ground_truth.jsonl back as snapshot id -> planted topic.
inline std::vector<std::pair<std::string, std::size_t>> load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::pair<std::string, std::size_t>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    out.emplace_back(j.at("snapshot_id").get<std::string>(), j.at("topic").get<std::size_t>());
  }
  return out;
}

}  // namespace darkspan::simulate
