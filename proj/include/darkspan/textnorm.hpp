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
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/textnorm_data.hpp"
#include "darkspan/utf8.hpp"

namespace darkspan::textnorm {

/// Ordered lowercase tokens, each of length [3, 25] over [a-z].
using TokenList = std::vector<std::string>;

inline constexpr std::size_t kMinTokenLength = 3;
inline constexpr std::size_t kMaxTokenLength = 25;

namespace detail {

constexpr bool is_lower_alpha(char c) noexcept { return c >= 'a' && c <= 'z'; }
constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
constexpr bool is_vowel(char c) noexcept {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}
constexpr bool is_scheme_char(char c) noexcept {
  return is_lower_alpha(c) || is_digit(c) || c == '+' || c == '.' || c == '-';
}
constexpr bool is_host_char(char c) noexcept {
  return is_lower_alpha(c) || is_digit(c) || c == '.' || c == '-';
}
constexpr bool is_email_local_char(char c) noexcept {
  return is_lower_alpha(c) || is_digit(c) || c == '.' || c == '_' || c == '%' || c == '+' ||
         c == '-';
}

inline bool has_vowel(std::string_view s) noexcept {
  return std::any_of(s.begin(), s.end(), is_vowel);
}

inline bool ends_with(std::string_view s, std::string_view suffix) noexcept {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline void lowercase_ascii(std::string& s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
}

inline std::size_t end_of_chunk(const std::string& s, std::size_t from) {
  while (from < s.size() && !is_space(s[from])) ++from;
  return from;
}

inline void blank(std::string& s, std::size_t begin, std::size_t end) {
  std::fill(s.begin() + static_cast<std::ptrdiff_t>(begin),
            s.begin() + static_cast<std::ptrdiff_t>(end), ' ');
}

}  // namespace detail

/// Blanks `scheme://...` spans and bare `*.onion` hosts (with any trailing
/// path up to the next whitespace). Expects lowercased input.
inline void remove_urls(std::string& s) {
  using namespace detail;
  for (std::size_t at = s.find("://"); at != std::string::npos; at = s.find("://", at + 1)) {
    std::size_t begin = at;
    while (begin > 0 && is_scheme_char(s[begin - 1])) --begin;
    while (begin < at && !is_lower_alpha(s[begin])) ++begin;
    if (begin == at) continue;
    const std::size_t end = end_of_chunk(s, at + 3);
    blank(s, begin, end);
    at = end == 0 ? 0 : end - 1;
  }
  constexpr std::string_view kOnion = ".onion";
  for (std::size_t at = s.find(kOnion); at != std::string::npos; at = s.find(kOnion, at + 1)) {
    const std::size_t tail = at + kOnion.size();
    if (tail < s.size() && (is_lower_alpha(s[tail]) || is_digit(s[tail]))) continue;
    std::size_t begin = at;
    while (begin > 0 && is_host_char(s[begin - 1])) --begin;
    if (begin == at) continue;
    const std::size_t end = end_of_chunk(s, tail);
    blank(s, begin, end);
    at = end == 0 ? 0 : end - 1;
  }
}

/// Blanks `local@domain.tld` spans. Expects lowercased input.
inline void remove_emails(std::string& s) {
  using namespace detail;
  for (std::size_t at = s.find('@'); at != std::string::npos; at = s.find('@', at + 1)) {
    std::size_t begin = at;
    while (begin > 0 && is_email_local_char(s[begin - 1])) --begin;
    std::size_t end = at + 1;
    while (end < s.size() && is_host_char(s[end])) ++end;
    while (end > at + 1 && (s[end - 1] == '.' || s[end - 1] == '-')) --end;
    const std::string_view domain(s.data() + at + 1, end - at - 1);
    const std::size_t dot = domain.find('.');
    if (begin == at || dot == std::string_view::npos || dot == 0) continue;
    blank(s, begin, end);
  }
}

/// Collapses runs of three or more identical scalars to exactly two.
inline std::string collapse_repeats(std::string_view s) {
  const std::u32string cps = utf8::decode(s);
  std::u32string out;
  out.reserve(cps.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    run = (i > 0 && cps[i] == cps[i - 1]) ? run + 1 : 1;
    if (run <= 2) out.push_back(cps[i]);
  }
  return utf8::encode(out);
}

/// Rule-based English lemmatizer: an irregular-form dictionary followed by
/// plural, -ing and -ed suffix rules, iterated to a fixed point.
class Lemmatizer {
 public:
  Lemmatizer() {
    for (const auto& [surface, lemma] : data::kIrregularLemmas) {
      irregular_.emplace(surface, lemma);
    }
  }

  /// Replaces the bundled dictionary with `surface<TAB>lemma` lines.
  static Lemmatizer from_stream(std::istream& in) {
    Lemmatizer lem;
    lem.irregular_.clear();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
        throw Error(ErrorCode::Parse, "lemma table line " + std::to_string(lineno) +
                                          ": expected surface<TAB>lemma");
      }
      std::string surface = line.substr(0, tab);
      std::string lemma = line.substr(tab + 1);
      detail::lowercase_ascii(surface);
      detail::lowercase_ascii(lemma);
      lem.irregular_[surface] = lemma;
    }
    return lem;
  }

  static Lemmatizer from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open lemma table " + path);
    return from_stream(in);
  }

  std::string lemmatize(std::string_view token) const {
    std::string current(token);
    for (int i = 0; i < 8; ++i) {
      std::string next = apply_once(current);
      if (next == current) break;
      current = std::move(next);
    }
    return current;
  }

  std::size_t dictionary_size() const noexcept { return irregular_.size(); }

 private:
  static std::string fix_stem(std::string stem) {
    const std::size_t n = stem.size();
    const char last = stem[n - 1];
    if (n >= 2 && last == stem[n - 2] && !detail::is_vowel(last) && last != 'l' && last != 's' &&
        last != 'z') {
      stem.pop_back();
    } else if (n == 3 && !detail::is_vowel(stem[0]) && detail::is_vowel(stem[1]) &&
               !detail::is_vowel(last) && last != 'w' && last != 'x') {
      stem.push_back('e');
    }
    return stem;
  }

  std::string apply_once(const std::string& w) const {
    using detail::ends_with;
    if (auto it = irregular_.find(w); it != irregular_.end()) return it->second;
    const std::size_t n = w.size();
    if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
    if (ends_with(w, "sses")) return w.substr(0, n - 2);
    if (n > 4 && (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes"))) {
      return w.substr(0, n - 2);
    }
    if (n > 3 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") &&
        !ends_with(w, "is") && detail::has_vowel(std::string_view(w).substr(0, n - 1))) {
      return w.substr(0, n - 1);
    }
    if (n > 5 && ends_with(w, "ing")) {
      const std::string stem = w.substr(0, n - 3);
      if (stem.size() >= 3 && detail::has_vowel(stem)) return fix_stem(stem);
    }
    if (n > 4 && ends_with(w, "ed") && !ends_with(w, "eed")) {
      if (ends_with(w, "ied")) return w.substr(0, n - 3) + "y";
      const std::string stem = w.substr(0, n - 2);
      if (stem.size() >= 3 && detail::has_vowel(stem)) return fix_stem(stem);
    }
    return w;
  }

  std::unordered_map<std::string, std::string> irregular_;
};

class StopwordList {
 public:
  StopwordList() {
    for (std::string_view w : data::kStopwords) words_.emplace(w);
  }

  /// One word per line; replaces the bundled list.
  static StopwordList from_stream(std::istream& in) {
    StopwordList list;
    list.words_.clear();
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      detail::lowercase_ascii(line);
      list.words_.insert(line);
    }
    return list;
  }

  static StopwordList from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open stopword list " + path);
    return from_stream(in);
  }

  bool contains(std::string_view w) const { return words_.count(std::string(w)) != 0; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// The full normalization pipeline:
/// lowercase -> strip URLs -> strip emails -> collapse repeats -> keep [a-z]
/// -> split -> lemmatize -> drop stopwords -> keep lengths [3, 25].
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(StopwordList stopwords, Lemmatizer lemmatizer)
      : stopwords_(std::move(stopwords)), lemmatizer_(std::move(lemmatizer)) {}

  TokenList normalize(std::string_view text) const {
    std::string s(text);
    detail::lowercase_ascii(s);
    remove_urls(s);
    remove_emails(s);
    s = collapse_repeats(s);

    // Multi-byte scalars become a single separator.
    std::string alpha;
    alpha.reserve(s.size());
    for (std::size_t pos = 0; pos < s.size();) {
      const char32_t cp = utf8::next(s, pos);
      alpha.push_back(cp >= 'a' && cp <= 'z' ? static_cast<char>(cp) : ' ');
    }

    TokenList tokens;
    std::size_t i = 0;
    while (i < alpha.size()) {
      while (i < alpha.size() && alpha[i] == ' ') ++i;
      const std::size_t start = i;
      while (i < alpha.size() && alpha[i] != ' ') ++i;
      if (i == start) break;
      const std::string_view surface(alpha.data() + start, i - start);
      if (stopwords_.contains(surface)) continue;
      std::string lemma = lemmatizer_.lemmatize(surface);
      if (stopwords_.contains(lemma)) continue;
      if (lemma.size() < kMinTokenLength || lemma.size() > kMaxTokenLength) continue;
      tokens.push_back(std::move(lemma));
    }
    return tokens;
  }

  const StopwordList& stopwords() const noexcept { return stopwords_; }
  const Lemmatizer& lemmatizer() const noexcept { return lemmatizer_; }

 private:
  StopwordList stopwords_;
  Lemmatizer lemmatizer_;
};

inline TokenList normalize_text(std::string_view text) {
  static const Normalizer kDefault;
  return kDefault.normalize(text);
}

inline std::string join(const TokenList& tokens, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Language detection

inline constexpr std::string_view kUndetermined = "und";

struct LanguageVerdict {
  std::string lang{kUndetermined};
  double confidence = 0.0;

  bool determined() const noexcept { return lang != kUndetermined; }
  bool is(std::string_view code) const noexcept { return lang == code; }
};

/// Character-trigram language identification against bundled profiles for
/// en, de, fr, es and transliterated ru.
class LanguageDetector {
 public:
  static constexpr std::size_t kMinAlphabetic = 20;

  LanguageDetector() {
    add_profile("en", data::kEnglishSample);
    add_profile("de", data::kGermanSample);
    add_profile("fr", data::kFrenchSample);
    add_profile("es", data::kSpanishSample);
    add_profile("ru", data::kRussianTranslitSample);
  }

  void add_profile(std::string code, std::string_view sample) {
    Profile p;
    p.code = std::move(code);
    for (const auto& tri : trigrams(sample)) {
      ++p.counts[tri];
      ++p.total;
    }
    profiles_.push_back(std::move(p));
  }

  LanguageVerdict detect(std::string_view text) const {
    if (alphabetic_count(text) < kMinAlphabetic) return {};
    std::map<std::string, double> doc;
    for (auto& tri : trigrams(text)) doc[tri] += 1.0;
    if (doc.empty()) return {};

    std::vector<double> scores;
    scores.reserve(profiles_.size());
    for (const Profile& p : profiles_) {
      const double denom = std::log(p.total + kSmoothing * kVocabulary);
      double ll = 0.0;
      for (const auto& [tri, n] : doc) {
        const auto it = p.counts.find(tri);
        const double c = it == p.counts.end() ? 0.0 : it->second;
        ll += n * (std::log(c + kSmoothing) - denom);
      }
      scores.push_back(ll);
    }
    const auto best = static_cast<std::size_t>(
        std::max_element(scores.begin(), scores.end()) - scores.begin());
    double z = 0.0;
    for (double s : scores) z += std::exp(s - scores[best]);
    return {profiles_[best].code, 1.0 / z};
  }

  /// ASCII letters plus non-ASCII letters in the Latin and Cyrillic blocks.
  static std::size_t alphabetic_count(std::string_view text) {
    std::size_t n = 0;
    for (std::size_t pos = 0; pos < text.size();) {
      const char32_t cp = utf8::next(text, pos);
      if (is_letter(cp)) ++n;
    }
    return n;
  }

 private:
  static constexpr double kSmoothing = 0.5;
  static constexpr double kVocabulary = 20000.0;

  struct Profile {
    std::string code;
    std::unordered_map<std::string, double> counts;
    double total = 0.0;
  };

  static bool is_letter(char32_t cp) noexcept {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
    return cp >= 0x400 && cp <= 0x4FF;
  }

  static char32_t fold(char32_t cp) noexcept {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    return cp;
  }

  static std::vector<std::string> trigrams(std::string_view text) {
    std::vector<std::string> out;
    std::u32string word;
    auto flush = [&] {
      if (word.empty()) return;
      std::u32string padded = U" " + word + U" ";
      for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
        out.push_back(utf8::encode(std::u32string_view(padded).substr(i, 3)));
      }
      word.clear();
    };
    for (std::size_t pos = 0; pos < text.size();) {
      const char32_t cp = utf8::next(text, pos);
      if (is_letter(cp)) {
        word.push_back(fold(cp));
      } else {
        flush();
      }
    }
    flush();
    return out;
  }

  std::vector<Profile> profiles_;
};

inline LanguageVerdict detect_language(std::string_view text) {
  static const LanguageDetector kDetector;
  return kDetector.detect(text);
}

}  // namespace darkspan::textnorm
