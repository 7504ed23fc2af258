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
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/ingest.hpp"
#include "darkspan/textnorm.hpp"
#include "darkspan/timeutil.hpp"

namespace darkspan::corpus {

inline constexpr std::size_t kMinSnapshots = 5;

/// Identity of a website across time: (path, title) with outer whitespace trimmed.
struct WebsiteKey {
  std::string path;
  std::string title;

  std::string canonical() const { return path + '\x1f' + title; }

  friend bool operator==(const WebsiteKey& a, const WebsiteKey& b) {
    return a.canonical() == b.canonical();
  }
  friend bool operator<(const WebsiteKey& a, const WebsiteKey& b) {
    return a.canonical() < b.canonical();
  }
};

namespace detail {
inline std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\n\r\f\v";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(kSpace) - b + 1);
}
}  // namespace detail

inline WebsiteKey website_key(std::string_view path, std::string_view title) {
  return {std::string(detail::trim(path)), std::string(detail::trim(title))};
}

struct SnapshotRef {
  std::string snapshot_id;
  UtcTime timestamp;
};

struct WebsiteHistory {
  std::size_t website_id = 0;
  WebsiteKey key;
  std::vector<SnapshotRef> snapshots;  // chronological, ties by snapshot_id
};

/// Snapshot accounting through grouping and deduplication.
struct CorpusStats {
  std::size_t accepted = 0;
  std::size_t dropped_group_snapshots = 0;  // in groups below the depth threshold
  std::size_t dedup_removed = 0;
  std::size_t retained = 0;
  std::size_t dropped_groups = 0;
};

namespace detail {

inline void sort_chronologically(std::vector<SnapshotRef>& snaps) {
  std::sort(snaps.begin(), snaps.end(), [](const SnapshotRef& a, const SnapshotRef& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.snapshot_id < b.snapshot_id;
  });
}

inline void assign_ids(std::vector<WebsiteHistory>& histories) {
  std::sort(histories.begin(), histories.end(),
            [](const WebsiteHistory& a, const WebsiteHistory& b) { return a.key < b.key; });
  for (std::size_t i = 0; i < histories.size(); ++i) histories[i].website_id = i;
}

}  // namespace detail

/// Groups accepted snapshots by website key, orders each group in time, and
/// drops groups with fewer than `min_snapshots` members. Ids are dense in
/// canonical-key order.
inline std::vector<WebsiteHistory> build_websites(std::span<const ingest::SnapshotMeta> accepted,
                                                  std::size_t min_snapshots = kMinSnapshots,
                                                  CorpusStats* stats = nullptr) {
  std::map<std::string, WebsiteHistory> groups;
  for (const auto& meta : accepted) {
    const auto ts = parse_iso8601(meta.timestamp);
    if (!ts) {
      throw Error(ErrorCode::InvalidArgument,
                  "snapshot " + meta.snapshot_id + " has no valid timestamp");
    }
    WebsiteKey key = website_key(meta.website_path, meta.page_title);
    auto [it, inserted] = groups.try_emplace(key.canonical());
    if (inserted) it->second.key = std::move(key);
    it->second.snapshots.push_back({meta.snapshot_id, *ts});
  }
  std::vector<WebsiteHistory> out;
  CorpusStats local;
  local.accepted = accepted.size();
  for (auto& [canonical, history] : groups) {
    if (history.snapshots.size() < min_snapshots) {
      local.dropped_group_snapshots += history.snapshots.size();
      ++local.dropped_groups;
      continue;
    }
    detail::sort_chronologically(history.snapshots);
    local.retained += history.snapshots.size();
    out.push_back(std::move(history));
  }
  detail::assign_ids(out);
  if (stats) *stats = local;
  return out;
}

/// Removes snapshots whose normalized token sequence repeats an earlier
/// snapshot of the same history within the same bucket. Returns nullopt when
/// fewer than `min_snapshots` remain.
inline std::optional<WebsiteHistory> dedup_history(
    const WebsiteHistory& history,
    const std::unordered_map<std::string, textnorm::TokenList>& normalized,
    const std::function<std::int64_t(UtcTime)>& bucket, std::size_t min_snapshots = kMinSnapshots,
    std::size_t* removed = nullptr) {
  WebsiteHistory out{history.website_id, history.key, {}};
  std::set<std::pair<std::int64_t, std::string>> seen;
  static const textnorm::TokenList kEmpty;
  for (const SnapshotRef& snap : history.snapshots) {
    const auto it = normalized.find(snap.snapshot_id);
    const textnorm::TokenList& tokens = it == normalized.end() ? kEmpty : it->second;
    // '\n' cannot occur inside a token, so the joined form is unambiguous.
    if (seen.emplace(bucket(snap.timestamp), textnorm::join(tokens, '\n')).second) {
      out.snapshots.push_back(snap);
    }
  }
  if (removed) *removed = history.snapshots.size() - out.snapshots.size();
  if (out.snapshots.size() < min_snapshots) return std::nullopt;
  return out;
}

/// Grouping, depth threshold, per-bucket dedup, and the threshold again on
/// what remains; ids are reassigned densely over the survivors.
inline std::vector<WebsiteHistory> build_corpus(
    std::span<const ingest::SnapshotMeta> accepted,
    const std::unordered_map<std::string, textnorm::TokenList>& normalized,
    const std::function<std::int64_t(UtcTime)>& bucket, std::size_t min_snapshots = kMinSnapshots,
    CorpusStats* stats = nullptr) {
  CorpusStats local;
  std::vector<WebsiteHistory> grouped = build_websites(accepted, min_snapshots, &local);
  std::vector<WebsiteHistory> out;
  local.retained = 0;
  for (const WebsiteHistory& h : grouped) {
    std::size_t removed = 0;
    auto deduped = dedup_history(h, normalized, bucket, min_snapshots, &removed);
    local.dedup_removed += removed;
    if (!deduped) {
      local.dropped_group_snapshots += h.snapshots.size() - removed;
      ++local.dropped_groups;
      continue;
    }
    local.retained += deduped->snapshots.size();
    out.push_back(std::move(*deduped));
  }
  detail::assign_ids(out);
  if (stats) *stats = local;
  return out;
}

}  // namespace darkspan::corpus
