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

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/textnorm.hpp"

namespace darkspan::topics {

inline constexpr std::size_t kDefaultTopK = 10;
inline constexpr std::size_t kTemplateTerms = 3;
inline constexpr std::size_t kPromptTerms = 10;
inline constexpr std::size_t kMaxLabelWords = 4;

struct TermWeight {
  std::string term;
  double weight = 0.0;

  friend bool operator==(const TermWeight&, const TermWeight&) = default;
};

enum class LabelSource { Template, Override, External };

constexpr std::string_view to_string(LabelSource s) noexcept {
  switch (s) {
    case LabelSource::Template: return "template";
    case LabelSource::Override: return "override";
    case LabelSource::External: return "external";
  }
  return "template";
}

struct TopicRepresentation {
  int topic_id = 0;
  std::vector<TermWeight> top_terms;
  std::string label;
  LabelSource label_source = LabelSource::Template;
};

using ClassTokens = std::map<int, textnorm::TokenList>;
using TermWeights = std::map<int, std::unordered_map<std::string, double>>;

/// W(t, c) = tf(t, c) * ln(1 + A / f(t)) for every term present in c, where
/// A is the mean token count per class and f(t) the corpus-wide count.
inline TermWeights ctfidf_weights(const ClassTokens& classes) {
  if (classes.empty()) throw Error(ErrorCode::EmptyInput, "no classes");
  std::unordered_map<std::string, double> corpus_freq;
  std::map<int, std::unordered_map<std::string, double>> tf;
  double total = 0.0;
  for (const auto& [id, tokens] : classes) {
    if (tokens.empty()) throw Error(ErrorCode::EmptyClass, "topic " + std::to_string(id) + " has no tokens");
    auto& counts = tf[id];
    for (const std::string& t : tokens) {
      counts[t] += 1.0;
      corpus_freq[t] += 1.0;
    }
    total += static_cast<double>(tokens.size());
  }
  const double avg = total / static_cast<double>(classes.size());
  TermWeights out;
  for (auto& [id, counts] : tf) {
    auto& w = out[id];
    for (const auto& [term, count] : counts) w[term] = count * std::log(1.0 + avg / corpus_freq[term]);
  }
  return out;
}

/// Top terms ordered by weight descending, then term ascending.
inline std::vector<TermWeight> top_terms(const std::unordered_map<std::string, double>& weights,
                                         std::size_t k) {
  std::vector<TermWeight> all;
  all.reserve(weights.size());
  for (const auto& [term, w] : weights) all.push_back({term, w});
  auto order = [](const TermWeight& a, const TermWeight& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.term < b.term;
  };
  const std::size_t m = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m), all.end(), order);
  all.resize(m);
  return all;
}

inline std::string title_case(std::string_view word) {
  std::string s(word);
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

inline std::string template_label(const std::vector<TermWeight>& terms) {
  std::string out;
  for (std::size_t i = 0; i < std::min(kTemplateTerms, terms.size()); ++i) {
    if (i) out += ' ';
    out += title_case(terms[i].term);
  }
  return out;
}

/// c-TF-IDF representation per class, labelled by template.
inline std::map<int, TopicRepresentation> ctfidf(const ClassTokens& classes,
                                                 std::size_t top_k = kDefaultTopK) {
  std::map<int, TopicRepresentation> reps;
  for (const auto& [id, weights] : ctfidf_weights(classes)) {
    TopicRepresentation r{id, top_terms(weights, top_k), {}, LabelSource::Template};
    r.label = template_label(r.top_terms);
    reps.emplace(id, std::move(r));
  }
  return reps;
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

/// Keeps the first `max_words` whitespace-separated words, single-spaced.
inline std::string truncate_words(std::string_view label, std::size_t max_words = kMaxLabelWords) {
  const auto words = split_words(label);
  std::string out;
  for (std::size_t i = 0; i < std::min(max_words, words.size()); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

/// The labelling prompt for an external model.
inline std::string build_prompt(const TopicRepresentation& rep) {
  std::string words;
  for (std::size_t i = 0; i < std::min(kPromptTerms, rep.top_terms.size()); ++i) {
    if (i) words += ", ";
    words += rep.top_terms[i].term;
  }
  return "Task: Generate a short topic label.\n"
         "Rules:\n"
         "- Output ONLY the label\n"
         "- Maximum 4 words\n"
         "- No punctuation\n"
         "- No explanation\n"
         "\n"
         "Topic words: " +
         words + "\nLabel:";
}

/// Reads `<int><TAB><text>` lines; blank lines skipped. Errors name the line.
inline std::vector<std::pair<int, std::string>> read_id_label_lines(std::istream& in,
                                                                    std::string_view what) {
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = std::string(what) + " line " + std::to_string(lineno) + ": ";
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::Parse, where + "expected <topic_id><TAB><label>");
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(line.substr(0, tab), &used);
      if (used != tab) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, where + "invalid topic id");
    }
    out.emplace_back(id, line.substr(tab + 1));
  }
  return out;
}

inline std::vector<std::pair<int, std::string>> load_id_label_file(const std::string& path,
                                                                   std::string_view what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + std::string(what) + " " + path);
  return read_id_label_lines(in, what);
}

/// Replaces labels for listed topics. External responses are truncated to
/// four words. Unknown ids and empty labels are errors.
inline void apply_labels(std::map<int, TopicRepresentation>& reps,
                         const std::vector<std::pair<int, std::string>>& labels, LabelSource source) {
  for (const auto& [id, raw] : labels) {
    const auto it = reps.find(id);
    if (it == reps.end()) throw Error(ErrorCode::UnknownTopic, "unknown topic id " + std::to_string(id));
    std::string label = source == LabelSource::External ? truncate_words(raw) : truncate_words(raw, SIZE_MAX);
    if (label.empty()) throw Error(ErrorCode::EmptyLabel, "empty label for topic " + std::to_string(id));
    it->second.label = std::move(label);
    it->second.label_source = source;
  }
}

// ---------------------------------------------------------------------------
// Merge maps

struct MergedTopic {
  int merged_id = 0;
  std::string label;
  std::vector<int> raw_ids;
};

struct MergeRegistry {
  std::vector<MergedTopic> topics;        // indexed by merged id
  std::map<int, int> raw_to_merged;

  std::size_t size() const noexcept { return topics.size(); }
};

/// Walks raw ids ascending. Raw topics mapped to the same final label share
/// one merged topic; unmapped topics stay on their own under their current
/// label. Merged ids are dense in first-appearance order.
inline MergeRegistry build_registry(const std::map<int, TopicRepresentation>& reps,
                                    const std::vector<std::pair<int, std::string>>& merge_map) {
  std::map<int, std::string> mapped;
  for (const auto& [raw, label] : merge_map) {
    if (!reps.count(raw)) {
      throw Error(ErrorCode::UnknownRawTopic, "merge map names unknown raw topic " + std::to_string(raw));
    }
    const std::string clean = truncate_words(label, SIZE_MAX);
    if (clean.empty()) throw Error(ErrorCode::EmptyLabel, "empty final label for raw topic " + std::to_string(raw));
    if (!mapped.emplace(raw, clean).second) {
      throw Error(ErrorCode::InvalidArgument, "raw topic " + std::to_string(raw) + " mapped twice");
    }
  }
  MergeRegistry reg;
  std::map<std::string, int> by_label;
  for (const auto& [raw, rep] : reps) {
    const auto m = mapped.find(raw);
    if (m != mapped.end()) {
      const auto [it, inserted] = by_label.try_emplace(m->second, static_cast<int>(reg.topics.size()));
      if (inserted) reg.topics.push_back({it->second, m->second, {}});
      reg.topics[it->second].raw_ids.push_back(raw);
      reg.raw_to_merged[raw] = it->second;
    } else {
      const int id = static_cast<int>(reg.topics.size());
      reg.topics.push_back({id, rep.label, {raw}});
      reg.raw_to_merged[raw] = id;
    }
  }
  return reg;
}

/// Sums raw probabilities (indexed by raw id) into merged topics.
inline std::vector<double> merge_distribution(const std::vector<double>& raw, const MergeRegistry& reg) {
  std::vector<double> merged(reg.size(), 0.0);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    const auto it = reg.raw_to_merged.find(static_cast<int>(r));
    if (it == reg.raw_to_merged.end()) {
      throw Error(ErrorCode::UnknownRawTopic, "distribution names unknown raw topic " + std::to_string(r));
    }
    merged[static_cast<std::size_t>(it->second)] += raw[r];
  }
  return merged;
}

// ---------------------------------------------------------------------------
// Agreement

struct AgreementReport {
  double kappa = 0.0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
};

inline AgreementReport cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "label sequences differ in length");
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "no labels");
  const double n = static_cast<double>(a.size());
  std::map<std::string, double> ca, cb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  AgreementReport r;
  r.observed_agreement = agree / n;
  for (const auto& [cat, count] : ca) {
    const auto it = cb.find(cat);
    if (it != cb.end()) r.expected_agreement += (count / n) * (it->second / n);
  }
  if (r.expected_agreement >= 1.0) {
    r.kappa = r.observed_agreement >= 1.0 ? 1.0 : 0.0;
  } else {
    r.kappa = (r.observed_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
  }
  return r;
}

}  // namespace darkspan::topics
