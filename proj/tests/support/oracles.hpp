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

// Brute-force reference implementations used by the unit and acceptance
// tests. They deliberately share no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

using Points = std::vector<std::vector<double>>;

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Minimum spanning tree weight over every labelled tree on n vertices,
/// enumerated through Prüfer sequences (n^(n-2) trees).
inline double exhaustive_mst_weight(const std::vector<std::vector<double>>& w) {
  const std::size_t n = w.size();
  if (n < 2) return 0.0;
  if (n == 2) return w[0][1];
  const std::size_t len = n - 2;
  std::vector<std::size_t> seq(len, 0);
  std::vector<std::size_t> degree(n);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::fill(degree.begin(), degree.end(), 1);
    for (std::size_t v : seq) ++degree[v];
    double total = 0.0;
    for (std::size_t v : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      total += w[leaf][v];
      --degree[leaf];
      --degree[v];
    }
    std::size_t u = n, x = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (degree[i] == 1) (u == n ? u : x) = i;
    }
    total += w[u][x];
    best = std::min(best, total);
    std::size_t pos = 0;
    while (pos < len && ++seq[pos] == n) seq[pos++] = 0;
    if (pos == len) break;
  }
  return best;
}

/// Trustworthiness straight from its definition, Euclidean in both spaces,
/// ranks by (distance, index).
inline double trustworthiness(const Points& x, const Points& y, std::size_t k) {
  const std::size_t n = x.size();
  double penalty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto ordered = [&](const Points& p) {
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) idx.push_back(j);
      }
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return euclid(p[i], p[a]) < euclid(p[i], p[b]); });
      return idx;
    };
    const auto orig = ordered(x);
    const auto red = ordered(y);
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = red[r];
      const std::size_t rank = static_cast<std::size_t>(std::find(orig.begin(), orig.end(), j) - orig.begin()) + 1;
      if (rank > k) penalty += static_cast<double>(rank - k);
    }
  }
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return 1.0 - 2.0 / (nn * kk * (2.0 * nn - 3.0 * kk - 1.0)) * penalty;
}

/// Mutual reachability by sorting every point's full distance list.
inline std::vector<std::vector<double>> mutual_reachability(const Points& p, std::size_t min_samples) {
  const std::size_t n = p.size();
  const std::size_t k = std::min(min_samples, n - 1);
  std::vector<double> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d.push_back(euclid(p[i], p[j]));
    }
    std::sort(d.begin(), d.end());
    core[i] = d[k - 1];
  }
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m[i][j] = std::max({core[i], core[j], euclid(p[i], p[j])});
    }
  }
  return m;
}

}  // namespace oracle
