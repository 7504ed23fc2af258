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
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/matrix.hpp"
#include "darkspan/timeutil.hpp"

namespace darkspan::timeline {

/// First calendar quarter of the study, e.g. 2020-Q1.
struct Epoch {
  int year = 2020;
  int quarter = 1;

  static std::optional<Epoch> parse(std::string_view s) {
    if (s.size() != 7 || s[4] != '-' || s[5] != 'Q' || s[6] < '1' || s[6] > '4') return std::nullopt;
    int y = 0;
    for (int i = 0; i < 4; ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      y = y * 10 + (s[i] - '0');
    }
    return Epoch{y, s[6] - '0'};
  }

  std::string str() const { return period_label(0); }

  /// Quarter name of the period `index` periods after the epoch.
  std::string period_label(std::int64_t index) const {
    const std::int64_t q = (year * 4LL + (quarter - 1)) + index;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld-Q%lld", static_cast<long long>(q / 4),
                  static_cast<long long>(q % 4 + 1));
    return buf;
  }

  friend bool operator==(const Epoch&, const Epoch&) = default;
};

/// Quarter index of `t` relative to the epoch.
inline std::int64_t bucket(UtcTime t, const Epoch& epoch) {
  const CivilDate d = civil_date(t);
  const std::int64_t index =
      (static_cast<std::int64_t>(d.year) - epoch.year) * 4 + (d.month - 1) / 3 - (epoch.quarter - 1);
  if (index < 0) {
    throw Error(ErrorCode::PreEpochTimestamp,
                format_iso8601(t) + " precedes epoch " + epoch.str());
  }
  return index;
}

/// Soft assignment of one snapshot: merged-topic probabilities plus
/// outlier mass.
struct Distribution {
  std::vector<double> probabilities;
  double outlier_mass = 0.0;

  double total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0) + outlier_mass;
  }
};

struct PrevalenceTable {
  Matrix mass;                       // topics x periods
  Matrix share;                      // topics x periods
  std::vector<double> global_share;  // per topic, over the grand total
  std::vector<double> outlier_mass;  // per period
  std::vector<std::size_t> snapshots;  // per period
  double grand_total = 0.0;

  std::size_t topics() const noexcept { return mass.rows(); }
  std::size_t periods() const noexcept { return mass.cols(); }
  bool empty_period(std::size_t p) const noexcept { return snapshots[p] == 0; }
};

/// Sums probability mass per (topic, period). Shares divide by the period's
/// topic mass, or its full mass when outliers are included.
inline PrevalenceTable aggregate_prevalence(std::span<const Distribution> docs,
                                            std::span<const std::int64_t> periods,
                                            std::size_t n_topics, std::size_t n_periods,
                                            bool include_outliers_in_denominator = false) {
  if (docs.size() != periods.size()) {
    throw Error(ErrorCode::LengthMismatch, "one period per distribution required");
  }
  PrevalenceTable t;
  t.mass = Matrix(n_topics, n_periods);
  t.share = Matrix(n_topics, n_periods);
  t.outlier_mass.assign(n_periods, 0.0);
  t.snapshots.assign(n_periods, 0);
  t.global_share.assign(n_topics, 0.0);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const std::int64_t p = periods[i];
    if (p < 0 || static_cast<std::size_t>(p) >= n_periods) {
      throw Error(ErrorCode::InvalidArgument, "period " + std::to_string(p) + " out of range");
    }
    if (docs[i].probabilities.size() != n_topics) {
      throw Error(ErrorCode::DimensionMismatch, "distribution width differs from topic count");
    }
    const auto pp = static_cast<std::size_t>(p);
    for (std::size_t k = 0; k < n_topics; ++k) t.mass(k, pp) += docs[i].probabilities[k];
    t.outlier_mass[pp] += docs[i].outlier_mass;
    ++t.snapshots[pp];
  }
  std::vector<double> topic_total(n_topics, 0.0);
  for (std::size_t p = 0; p < n_periods; ++p) {
    double denom = include_outliers_in_denominator ? t.outlier_mass[p] : 0.0;
    for (std::size_t k = 0; k < n_topics; ++k) denom += t.mass(k, p);
    for (std::size_t k = 0; k < n_topics; ++k) {
      t.share(k, p) = denom > 0.0 ? t.mass(k, p) / denom : 0.0;
      topic_total[k] += t.mass(k, p);
    }
    t.grand_total += t.outlier_mass[p];
  }
  for (double v : topic_total) t.grand_total += v;
  if (t.grand_total > 0.0) {
    for (std::size_t k = 0; k < n_topics; ++k) t.global_share[k] = topic_total[k] / t.grand_total;
  }
  return t;
}

struct Concentration {
  double top_5 = 0.0;
  double top_10 = 0.0;
  double top_20 = 0.0;
  std::optional<std::size_t> min_topics_50;
  std::optional<std::size_t> min_topics_75;
  std::vector<std::size_t> order;  // topic ids, most prevalent first
};

inline constexpr double kCumulativeTolerance = 1e-12;

/// Renormalizes `global_share` to sum 1, ranks topics by share descending
/// (ties by id), and reads off top-k sums and the fewest topics reaching
/// half and three quarters of the volume.
inline Concentration concentration(std::span<const double> global_share) {
  Concentration c;
  const double total = std::accumulate(global_share.begin(), global_share.end(), 0.0);
  std::vector<double> s(global_share.begin(), global_share.end());
  if (total > 0.0) {
    for (double& v : s) v /= total;
  }
  c.order.resize(s.size());
  std::iota(c.order.begin(), c.order.end(), std::size_t{0});
  std::stable_sort(c.order.begin(), c.order.end(),
                   [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
  double cum = 0.0;
  for (std::size_t i = 0; i < c.order.size(); ++i) {
    cum += s[c.order[i]];
    const std::size_t m = i + 1;
    if (m <= 5) c.top_5 = cum;
    if (m <= 10) c.top_10 = cum;
    if (m <= 20) c.top_20 = cum;
    if (!c.min_topics_50 && cum >= 0.5 - kCumulativeTolerance) c.min_topics_50 = m;
    if (!c.min_topics_75 && cum >= 0.75 - kCumulativeTolerance) c.min_topics_75 = m;
  }
  return c;
}

inline constexpr std::array<std::string_view, 4> kCategories = {"Transactional", "Products",
                                                                "Infrastructure", "Community"};
inline constexpr std::string_view kUncategorized = "Uncategorized";

using CategoryMap = std::map<std::string, std::string>;  // final label -> category

/// Reads `final_label<TAB>category` lines; categories must be one of the four
/// known names.
inline CategoryMap read_category_map(std::istream& in) {
  CategoryMap map;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "category map line " + std::to_string(lineno) + ": ";
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::Parse, where + "expected <label><TAB><category>");
    std::string category = line.substr(tab + 1);
    if (std::find(kCategories.begin(), kCategories.end(), category) == kCategories.end()) {
      throw Error(ErrorCode::Parse, where + "unknown category '" + category + "'");
    }
    map[line.substr(0, tab)] = std::move(category);
  }
  return map;
}

inline CategoryMap load_category_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open category map " + path);
  return read_category_map(in);
}

struct CategoryShare {
  std::string category;
  double share = 0.0;
};

/// Sums topic shares per category. Output order is the four named
/// categories, then Uncategorized.
inline std::vector<CategoryShare> category_rollup(std::span<const double> shares,
                                                  std::span<const std::string> labels,
                                                  const CategoryMap& map) {
  if (shares.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "one label per topic required");
  std::vector<CategoryShare> out;
  for (std::string_view c : kCategories) out.push_back({std::string(c), 0.0});
  out.push_back({std::string(kUncategorized), 0.0});
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const auto it = map.find(labels[i]);
    std::size_t slot = kCategories.size();
    if (it != map.end()) {
      slot = static_cast<std::size_t>(
          std::find(kCategories.begin(), kCategories.end(), it->second) - kCategories.begin());
    }
    out[slot].share += shares[i];
  }
  return out;
}

}  // namespace darkspan::timeline
