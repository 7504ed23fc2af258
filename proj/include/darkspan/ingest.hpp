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
#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "darkspan/textnorm.hpp"
#include "darkspan/timeutil.hpp"
#include "darkspan/utf8.hpp"

namespace darkspan::ingest {

struct SnapshotMeta {
  std::string snapshot_id;
  std::string website_path;
  std::string page_title;
  std::string timestamp;  // ISO-8601 source form
  std::string html_ref;
  std::string site_type;  // optional manifest field; empty when absent
};

struct ExtractedDoc {
  std::string snapshot_id;
  std::string text;
  std::size_t char_count = 0;  // Unicode scalar values
};

enum class RejectionReason { MissingTimestamp, ParseFailure, TooShort, MissingHtmlFile, NonInformational };

constexpr std::string_view to_string(RejectionReason r) noexcept {
  switch (r) {
    case RejectionReason::MissingTimestamp: return "MissingTimestamp";
    case RejectionReason::ParseFailure: return "ParseFailure";
    case RejectionReason::TooShort: return "TooShort";
    case RejectionReason::MissingHtmlFile: return "MissingHtmlFile";
    case RejectionReason::NonInformational: return "NonInformational";
  }
  return "Unknown";
}

struct Rejection {
  std::string snapshot_id;
  RejectionReason reason;
};

// ---------------------------------------------------------------------------
// Main-content extraction

namespace detail {

inline constexpr std::array<std::string_view, 9> kRawTextSkip = {
    "script", "style", "title", "textarea", "xmp", "iframe", "noembed", "noframes", "noscript"};

inline constexpr std::array<std::string_view, 10> kNestedSkip = {
    "nav", "header", "footer", "aside", "template", "svg", "math", "select", "button", "object"};

inline constexpr std::array<std::string_view, 48> kBlockLevel = {
    "address", "article", "blockquote", "body", "br", "caption", "center", "dd", "details",
    "dialog", "dir", "div", "dl", "dt", "fieldset", "figcaption", "figure", "form", "frameset",
    "h1", "h2", "h3", "h4", "h5", "h6", "head", "hr", "html", "legend", "li", "main", "menu",
    "ol", "optgroup", "option", "p", "pre", "section", "summary", "table", "tbody", "td",
    "tfoot", "th", "thead", "tr", "ul", "hgroup"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view name) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

constexpr bool is_ascii_alpha(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr bool is_html_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

constexpr char lower(char c) noexcept { return c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c; }

inline bool iequals_at(std::string_view s, std::size_t pos, std::string_view needle) {
  if (pos + needle.size() > s.size()) return false;
  for (std::size_t i = 0; i < needle.size(); ++i) {
    if (lower(s[pos + i]) != needle[i]) return false;
  }
  return true;
}

inline std::optional<char32_t> named_entity(std::string_view name) {
  struct Entry {
    std::string_view name;
    char32_t cp;
  };
  static constexpr Entry kEntities[] = {
      {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},
      {"apos", '\''},    {"nbsp", ' '},     {"copy", 0xA9},    {"reg", 0xAE},
      {"trade", 0x2122}, {"hellip", 0x2026}, {"mdash", 0x2014}, {"ndash", 0x2013},
      {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D},
      {"laquo", 0xAB},   {"raquo", 0xBB},   {"euro", 0x20AC},  {"pound", 0xA3},
      {"yen", 0xA5},     {"cent", 0xA2},    {"sect", 0xA7},    {"deg", 0xB0},
      {"middot", 0xB7},  {"bull", 0x2022},  {"times", 0xD7},   {"divide", 0xF7},
  };
  for (const Entry& e : kEntities) {
    if (e.name == name) return e.cp;
  }
  return std::nullopt;
}

/// Decodes a `&...;` reference at `pos` (pointing at '&'). Returns the scalar
/// and the length consumed, or nullopt when no well-formed reference starts here.
inline std::optional<std::pair<char32_t, std::size_t>> decode_entity(std::string_view s,
                                                                    std::size_t pos) {
  const std::size_t semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12 || semi == pos + 1) return std::nullopt;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  const std::size_t consumed = semi - pos + 1;
  if (body[0] == '#') {
    std::uint32_t v = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty()) return std::nullopt;
    for (char c : digits) {
      int d;
      if (c >= '0' && c <= '9') {
        d = c - '0';
      } else if (hex && lower(c) >= 'a' && lower(c) <= 'f') {
        d = lower(c) - 'a' + 10;
      } else {
        return std::nullopt;
      }
      v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
      if (v > 0x10FFFF) v = 0x110000;
    }
    char32_t cp = v;
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = utf8::kReplacement;
    return std::pair{cp, consumed};
  }
  std::string lowered(body);
  for (char& c : lowered) c = lower(c);
  if (auto cp = named_entity(lowered)) return std::pair{*cp, consumed};
  return std::nullopt;
}

/// Collapses whitespace within one block: each run becomes '\n' when it
/// contains a line break and ' ' otherwise; the ends are trimmed.
inline std::string collapse_block(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool in_run = false;
  bool run_has_newline = false;
  for (char c : raw) {
    if (is_html_space(c)) {
      in_run = true;
      run_has_newline = run_has_newline || c == '\n' || c == '\r';
      continue;
    }
    if (in_run && !out.empty()) out.push_back(run_has_newline ? '\n' : ' ');
    in_run = false;
    run_has_newline = false;
    out.push_back(c);
  }
  return out;
}

class Extractor {
 public:
  explicit Extractor(double min_density) : min_density_(min_density) {}

  std::string run(std::string_view html) {
    const std::string doc = utf8::sanitize(html);
    const std::string_view s = doc;
    std::size_t pos = 0;
    while (pos < s.size()) {
      const char c = s[pos];
      if (c == '<') {
        pos = on_angle(s, pos);
      } else if (c == '&') {
        if (auto ent = decode_entity(s, pos)) {
          // '<' and '&' never reach the output so that re-parsing it is exact.
          const char32_t cp = ent->first;
          if (cp == '<' || cp == '&') {
            text(' ');
          } else if (!skipping()) {
            utf8::append(block_, cp);
          }
          pos += ent->second;
        } else {
          text(' ');
          ++pos;
        }
      } else {
        if (!skipping()) {
          // U+00A0 is treated as plain whitespace.
          if (static_cast<unsigned char>(c) == 0xC2 && pos + 1 < s.size() &&
              static_cast<unsigned char>(s[pos + 1]) == 0xA0) {
            block_.push_back(' ');
            pos += 2;
            continue;
          }
          block_.push_back(c);
        }
        ++pos;
      }
    }
    flush(0);
    std::string out;
    for (const std::string& b : kept_) {
      if (!out.empty()) out.push_back('\n');
      out += b;
    }
    return out;
  }

 private:
  bool skipping() const noexcept { return !skip_stack_.empty(); }

  void text(char c) {
    if (!skipping()) block_.push_back(c);
  }

  void flush(std::size_t next_markup) {
    std::string collapsed = collapse_block(block_);
    if (!collapsed.empty()) {
      const double chars = static_cast<double>(utf8::scalar_count(collapsed));
      const double density = chars / (chars + static_cast<double>(markup_));
      if (density >= min_density_) kept_.push_back(std::move(collapsed));
    }
    block_.clear();
    markup_ = next_markup;
  }

  static std::size_t skip_to_gt(std::string_view s, std::size_t from) {
    const std::size_t gt = s.find('>', from);
    return gt == std::string_view::npos ? s.size() : gt + 1;
  }

  std::size_t on_angle(std::string_view s, std::size_t pos) {
    if (s.compare(pos, 4, "<!--") == 0) {
      const std::size_t end = s.find("-->", pos + 4);
      return end == std::string_view::npos ? s.size() : end + 3;
    }
    const char next = pos + 1 < s.size() ? s[pos + 1] : '\0';
    if (next == '!' || next == '?') return skip_to_gt(s, pos + 2);
    if (next == '/') {
      if (pos + 2 < s.size() && is_ascii_alpha(s[pos + 2])) return on_end_tag(s, pos);
      return skip_to_gt(s, pos + 2);
    }
    if (is_ascii_alpha(next)) return on_start_tag(s, pos);
    text(' ');
    return pos + 1;
  }

  static std::string read_name(std::string_view s, std::size_t& pos) {
    std::string name;
    while (pos < s.size()) {
      const char c = s[pos];
      if (is_html_space(c) || c == '>' || c == '/') break;
      name.push_back(lower(c));
      ++pos;
    }
    return name;
  }

  std::size_t on_end_tag(std::string_view s, std::size_t pos) {
    std::size_t p = pos + 2;
    const std::string name = read_name(s, p);
    const std::size_t end = skip_to_gt(s, p);
    if (skipping()) {
      const auto it = std::find(skip_stack_.rbegin(), skip_stack_.rend(), name);
      if (it != skip_stack_.rend()) skip_stack_.erase(std::next(it).base(), skip_stack_.end());
      return end;
    }
    if (contains(kBlockLevel, name)) {
      flush(end - pos);
    } else {
      markup_ += end - pos;
    }
    return end;
  }

  std::size_t on_start_tag(std::string_view s, std::size_t pos) {
    std::size_t p = pos + 1;
    const std::string name = read_name(s, p);
    // Attributes: honour quotes, but fall back to the first '>' if a quote
    // never closes.
    std::size_t end = std::string_view::npos;
    char quote = 0;
    for (std::size_t i = p; i < s.size(); ++i) {
      const char c = s[i];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        end = i + 1;
        break;
      }
    }
    if (end == std::string_view::npos) {
      const std::size_t gt = s.find('>', p);
      if (gt == std::string_view::npos) return s.size();  // EOF inside a tag
      end = gt + 1;
    }
    const bool self_closing = end >= 2 && s[end - 2] == '/';

    if (contains(kRawTextSkip, name)) {
      if (self_closing) return end;
      const std::string closer = "</" + name;
      for (std::size_t i = end; i < s.size(); ++i) {
        if (s[i] == '<' && iequals_at(s, i, closer)) {
          const std::size_t after = i + closer.size();
          if (after >= s.size() || is_html_space(s[after]) || s[after] == '>' || s[after] == '/') {
            return skip_to_gt(s, after);
          }
        }
      }
      return s.size();
    }
    if (contains(kNestedSkip, name)) {
      if (!self_closing) skip_stack_.push_back(name);
      return end;
    }
    if (skipping()) return end;
    if (contains(kBlockLevel, name)) {
      flush(end - pos);
    } else {
      markup_ += end - pos;
    }
    return end;
  }

  double min_density_;
  std::string block_;
  std::size_t markup_ = 0;
  std::vector<std::string> skip_stack_;
  std::vector<std::string> kept_;
};

}  // namespace detail

inline constexpr double kDefaultMinTextDensity = 0.25;

/// Visible main-content text of an HTML payload. Scripts, styles, comments,
/// attributes and navigation/header/footer/aside subtrees are dropped; each
/// block element becomes its own line; blocks whose text/markup ratio falls
/// below `min_density` are discarded as boilerplate. Returns nullopt when no
/// text survives.
inline std::optional<std::string> extract_main_text(std::string_view html,
                                                    double min_density = kDefaultMinTextDensity) {
  std::string out = detail::Extractor(min_density).run(html);
  if (out.empty()) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationRules {
  std::size_t min_chars = 50;  // accepted iff char_count > min_chars
  std::vector<std::string> error_phrases{"404", "login", "captcha"};
};

/// Outcome of locating and parsing a snapshot's HTML.
struct HtmlMissing {};
struct ParseFailed {};
using ExtractionResult = std::variant<HtmlMissing, ParseFailed, std::string>;

using Validation = std::variant<ExtractedDoc, Rejection>;

/// True when the text holds nothing but configured error-page phrases, or
/// normalizes to zero tokens.
inline bool is_non_informational(std::string_view text, const ValidationRules& rules,
                                 const textnorm::Normalizer& normalizer) {
  if (normalizer.normalize(text).empty()) return true;
  std::string lowered(text);
  for (char& c : lowered) c = detail::lower(c);
  for (const std::string& phrase : rules.error_phrases) {
    if (phrase.empty()) continue;
    std::string p = phrase;
    for (char& c : p) c = detail::lower(c);
    for (std::size_t at = lowered.find(p); at != std::string::npos; at = lowered.find(p, at)) {
      lowered.replace(at, p.size(), p.size(), ' ');
    }
  }
  for (std::size_t pos = 0; pos < lowered.size();) {
    const char32_t cp = utf8::next(lowered, pos);
    const bool latin = cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
    const bool cyrillic = cp >= 0x400 && cp <= 0x4FF;
    if ((cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9') || latin || cyrillic) return false;
  }
  return true;
}

/// Applies the validity rules in order; the first failing rule names the
/// rejection: timestamp, HTML presence, parse, length, informativeness.
inline Validation validate_snapshot(const SnapshotMeta& meta, const ExtractionResult& extraction,
                                    const ValidationRules& rules = {},
                                    const textnorm::Normalizer& normalizer = {}) {
  auto reject = [&](RejectionReason r) { return Validation{Rejection{meta.snapshot_id, r}}; };
  if (meta.timestamp.empty() || !parse_iso8601(meta.timestamp)) {
    return reject(RejectionReason::MissingTimestamp);
  }
  if (std::holds_alternative<HtmlMissing>(extraction)) {
    return reject(RejectionReason::MissingHtmlFile);
  }
  if (std::holds_alternative<ParseFailed>(extraction)) {
    return reject(RejectionReason::ParseFailure);
  }
  const std::string& text = std::get<std::string>(extraction);
  if (text.empty()) return reject(RejectionReason::ParseFailure);
  ExtractedDoc doc{meta.snapshot_id, text, utf8::scalar_count(text)};
  if (doc.char_count <= rules.min_chars) return reject(RejectionReason::TooShort);
  if (is_non_informational(doc.text, rules, normalizer)) {
    return reject(RejectionReason::NonInformational);
  }
  return doc;
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

/// Resolves `meta.html_ref` against `base_dir`, extracts and validates.
inline Validation ingest_snapshot(const SnapshotMeta& meta, const std::filesystem::path& base_dir,
                                  const ValidationRules& rules = {},
                                  const textnorm::Normalizer& normalizer = {}) {
  ExtractionResult extraction = HtmlMissing{};
  if (!meta.html_ref.empty()) {
    std::filesystem::path p(meta.html_ref);
    if (p.is_relative()) p = base_dir / p;
    std::error_code ec;
    if (std::filesystem::is_regular_file(p, ec)) {
      if (auto bytes = read_file(p)) {
        if (auto text = extract_main_text(*bytes)) {
          extraction = std::move(*text);
        } else {
          extraction = ParseFailed{};
        }
      }
    }
  }
  return validate_snapshot(meta, extraction, rules, normalizer);
}

}  // namespace darkspan::ingest
