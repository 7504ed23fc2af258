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

// Neighborhood-preserving dimensionality reduction (UMAP): exact k-NN graph,
// fuzzy simplicial set with local scaling, and a stochastic layout that
// minimizes fuzzy cross-entropy with negative sampling.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <utility>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/matrix.hpp"
#include "darkspan/parallel.hpp"
#include "darkspan/rng.hpp"

namespace darkspan::reduce {

enum class Metric { Cosine, Euclidean };

constexpr std::string_view to_string(Metric m) noexcept {
  return m == Metric::Cosine ? "cosine" : "euclidean";
}

struct ReduceConfig {
  std::size_t n_components = 5;
  Metric metric = Metric::Cosine;
  std::size_t n_neighbors = 15;
  std::size_t n_epochs = 200;
  double min_dist = 0.1;
  std::uint64_t seed = 42;

  void validate() const {
    if (n_components < 2) throw Error(ErrorCode::InvalidArgument, "n_components must be >= 2");
    if (n_neighbors < 2) throw Error(ErrorCode::InvalidArgument, "n_neighbors must be >= 2");
    if (!(min_dist >= 0.0)) throw Error(ErrorCode::InvalidArgument, "min_dist must be >= 0");
  }
};

inline constexpr double kSpread = 1.0;
inline constexpr double kNegativeSampleRate = 5.0;
inline constexpr double kInitScale = 1e-2;
inline constexpr int kBisectionSteps = 64;

inline double distance(Metric m, std::span<const double> a, std::span<const double> b) noexcept {
  return m == Metric::Cosine ? cosine_distance(a, b) : euclidean(a, b);
}

// ---------------------------------------------------------------------------
// Low-dimensional similarity curve 1 / (1 + a d^(2b))

struct CurveParams {
  double a = 1.0;
  double b = 1.0;
};

/// Least-squares fit of 1 / (1 + a x^(2b)) to the piecewise target
/// (1 below min_dist, exp(-(x - min_dist) / spread) above) on 300 points of
/// [0, 3 spread], by Levenberg-Marquardt from (1, 1).
inline CurveParams fit_curve(double min_dist, double spread = kSpread) {
  constexpr int kSamples = 300;
  std::vector<double> xs(kSamples), ys(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = 3.0 * spread * i / (kSamples - 1);
    ys[i] = xs[i] < min_dist ? 1.0 : std::exp(-(xs[i] - min_dist) / spread);
  }
  auto sse = [&](double a, double b) {
    double s = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double r = 1.0 / (1.0 + a * std::pow(xs[i], 2.0 * b)) - ys[i];
      s += r * r;
    }
    return s;
  };

  double a = 1.0, b = 1.0, lambda = 1e-3;
  double cost = sse(a, b);
  for (int iter = 0; iter < 500; ++iter) {
    // Normal equations J^T J and J^T r.
    double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
    for (int i = 0; i < kSamples; ++i) {
      const double x = xs[i];
      const double u = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
      const double den = 1.0 + a * u;
      const double f = 1.0 / den;
      const double r = f - ys[i];
      const double da = -u / (den * den);
      const double db = x > 0.0 ? -a * u * 2.0 * std::log(x) / (den * den) : 0.0;
      jaa += da * da, jab += da * db, jbb += db * db;
      ga += da * r, gb += db * r;
    }
    bool improved = false;
    for (int tries = 0; tries < 50 && !improved; ++tries) {
      const double m00 = jaa * (1.0 + lambda), m11 = jbb * (1.0 + lambda), m01 = jab;
      const double det = m00 * m11 - m01 * m01;
      if (det == 0.0) {
        lambda *= 10.0;
        continue;
      }
      const double step_a = -(m11 * ga - m01 * gb) / det;
      const double step_b = -(m00 * gb - m01 * ga) / det;
      const double na = a + step_a, nb = b + step_b;
      const double ncost = sse(na, nb);
      if (std::isfinite(ncost) && ncost < cost) {
        const double rel = (cost - ncost) / std::max(cost, 1e-300);
        a = na, b = nb;
        cost = ncost;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (rel < 1e-15 && std::abs(step_a) < 1e-14 && std::abs(step_b) < 1e-14) return {a, b};
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return {a, b};
}

// ---------------------------------------------------------------------------
// k-nearest-neighbor graph

struct KnnGraph {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::size_t> indices;  // n * k, nearest first, self excluded
  std::vector<double> distances;     // n * k

  std::size_t index(std::size_t i, std::size_t j) const { return indices[i * k + j]; }
  double dist(std::size_t i, std::size_t j) const { return distances[i * k + j]; }
};

/// Exhaustive k-NN; ties broken by the lower index.
inline KnnGraph exact_knn(const Matrix& points, std::size_t k, Metric metric) {
  const std::size_t n = points.rows();
  KnnGraph g{n, k, std::vector<std::size_t>(n * k), std::vector<double>(n * k)};
  parallel_for(n, [&](std::size_t i) {
    std::vector<std::pair<double, std::size_t>> row;
    row.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.emplace_back(distance(metric, points.row(i), points.row(j)), j);
    }
    std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    for (std::size_t j = 0; j < k; ++j) {
      g.indices[i * k + j] = row[j].second;
      g.distances[i * k + j] = row[j].first;
    }
  });
  return g;
}

// ---------------------------------------------------------------------------
// Fuzzy simplicial set

struct LocalScale {
  double rho = 0.0;
  double sigma = 1.0;
};

/// rho = nearest-neighbor distance; sigma by bisection so that
/// sum_j exp(-max(0, d_j - rho) / sigma) = log2(k).
inline LocalScale smooth_knn(std::span<const double> dists) {
  const double target = std::log2(static_cast<double>(dists.size()));
  LocalScale s;
  s.rho = dists.empty() ? 0.0 : dists.front();
  double lo = 1e-20, hi = 1e4;
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    double total = 0.0;
    for (double d : dists) total += std::exp(-std::max(0.0, d - s.rho) / mid);
    if (total > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  s.sigma = 0.5 * (lo + hi);
  return s;
}

struct Edge {
  std::size_t head = 0;
  std::size_t tail = 0;
  double weight = 0.0;
};

/// Symmetrized membership graph (a + b - a*b). Both directions of every
/// undirected edge are listed, sorted by (head, tail).
inline std::vector<Edge> fuzzy_simplicial_set(const KnnGraph& g) {
  std::vector<Edge> directed;
  directed.reserve(g.n * g.k);
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::span<const double> dists(g.distances.data() + i * g.k, g.k);
    const LocalScale s = smooth_knn(dists);
    for (std::size_t j = 0; j < g.k; ++j) {
      const double w = std::exp(-std::max(0.0, dists[j] - s.rho) / s.sigma);
      directed.push_back({i, g.index(i, j), w});
    }
  }
  // Pair up (i, j) with (j, i).
  std::vector<Edge> canon;
  canon.reserve(directed.size());
  for (const Edge& e : directed) {
    canon.push_back({std::min(e.head, e.tail), std::max(e.head, e.tail), e.weight});
  }
  std::sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.head, a.tail) < std::pair(b.head, b.tail);
  });
  std::vector<Edge> out;
  for (std::size_t i = 0; i < canon.size();) {
    std::size_t j = i + 1;
    double w = canon[i].weight;
    // At most two entries (one per direction) share a key.
    while (j < canon.size() && canon[j].head == canon[i].head && canon[j].tail == canon[i].tail) {
      w = w + canon[j].weight - w * canon[j].weight;
      ++j;
    }
    if (w > 0.0) {
      out.push_back({canon[i].head, canon[i].tail, w});
      out.push_back({canon[i].tail, canon[i].head, w});
    }
    i = j;
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.head, a.tail) < std::pair(b.head, b.tail);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Layout optimization

namespace detail {
inline double clip(double v) noexcept { return std::clamp(v, -4.0, 4.0); }
}  // namespace detail

/// Per-edge SGD on the fuzzy cross-entropy. Edges are sampled with frequency
/// proportional to weight, visited in a freshly shuffled order each epoch;
/// each positive sample draws negatives at `kNegativeSampleRate`.
inline Matrix optimize_layout(Matrix embedding, const std::vector<Edge>& graph,
                              std::size_t n_epochs, CurveParams curve, Rng& rng) {
  if (graph.empty() || n_epochs == 0) return embedding;
  const std::size_t n = embedding.rows();
  const std::size_t dim = embedding.cols();
  double w_max = 0.0;
  for (const Edge& e : graph) w_max = std::max(w_max, e.weight);

  std::vector<Edge> edges;
  for (const Edge& e : graph) {
    if (e.weight >= w_max / static_cast<double>(n_epochs)) edges.push_back(e);
  }
  const std::size_t m = edges.size();
  std::vector<double> epochs_per_sample(m), next_sample(m), epochs_per_negative(m), next_negative(m);
  for (std::size_t e = 0; e < m; ++e) {
    epochs_per_sample[e] = w_max / edges[e].weight;
    next_sample[e] = epochs_per_sample[e];
    epochs_per_negative[e] = epochs_per_sample[e] / kNegativeSampleRate;
    next_negative[e] = epochs_per_negative[e];
  }

  const double a = curve.a, b = curve.b;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 0; epoch < n_epochs; ++epoch) {
    const double alpha = 1.0 - static_cast<double>(epoch) / static_cast<double>(n_epochs);
    const double now = static_cast<double>(epoch);
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t e : order) {
      if (next_sample[e] > now) continue;
      const std::size_t j = edges[e].head;
      const std::size_t k = edges[e].tail;
      auto current = embedding.row(j);
      auto other = embedding.row(k);
      const double d2 = squared_euclidean(current, other);
      double coeff = 0.0;
      if (d2 > 0.0) {
        coeff = -2.0 * a * b * std::pow(d2, b - 1.0) / (a * std::pow(d2, b) + 1.0);
      }
      for (std::size_t d = 0; d < dim; ++d) {
        const double g = detail::clip(coeff * (current[d] - other[d]));
        current[d] += g * alpha;
        other[d] -= g * alpha;
      }
      next_sample[e] += epochs_per_sample[e];

      const auto n_neg =
          static_cast<std::size_t>(std::max(0.0, (now - next_negative[e]) / epochs_per_negative[e]));
      for (std::size_t p = 0; p < n_neg; ++p) {
        const std::size_t r = static_cast<std::size_t>(rng.below(n));
        auto neg = embedding.row(r);
        const double nd2 = squared_euclidean(current, neg);
        double rep = 0.0;
        if (nd2 > 0.0) {
          rep = 2.0 * b / ((0.001 + nd2) * (a * std::pow(nd2, b) + 1.0));
        } else if (r == j) {
          continue;
        }
        for (std::size_t d = 0; d < dim; ++d) {
          const double g = rep > 0.0 ? detail::clip(rep * (current[d] - neg[d])) : 4.0;
          current[d] += g * alpha;
        }
      }
      next_negative[e] += static_cast<double>(n_neg) * epochs_per_negative[e];
    }
  }
  return embedding;
}

/// Projects rows of `vectors` to `cfg.n_components` dimensions. Row i of the
/// result corresponds to row i of the input. Deterministic for a given seed.
inline Matrix reduce(const Matrix& vectors, const ReduceConfig& cfg) {
  cfg.validate();
  const std::size_t n = vectors.rows();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "reduction needs at least 2 points");
  if (!vectors.all_finite()) throw Error(ErrorCode::NonFiniteInput, "input contains non-finite values");

  const std::size_t k = std::min(cfg.n_neighbors, n - 1);
  const KnnGraph knn = exact_knn(vectors, k, cfg.metric);
  const std::vector<Edge> graph = fuzzy_simplicial_set(knn);
  const CurveParams curve = fit_curve(cfg.min_dist);

  Rng rng(cfg.seed);
  Matrix init(n, cfg.n_components);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < cfg.n_components; ++d) init(i, d) = kInitScale * rng.normal();
  }
  return optimize_layout(std::move(init), graph, cfg.n_epochs, curve, rng);
}

// ---------------------------------------------------------------------------
// Trustworthiness

/// T(k) = 1 - 2 / (n k (2n - 3k - 1)) * sum_i sum_{j in U_i} (r(i, j) - k),
/// where U_i holds the reduced-space k-NN of i absent from its original k-NN
/// and r(i, j) is j's rank among i's original-space neighbors (nearest = 1).
/// Ties are ranked by index.
inline double trustworthiness(const Matrix& original, const Matrix& reduced, std::size_t k,
                              Metric original_metric = Metric::Euclidean) {
  const std::size_t n = original.rows();
  if (reduced.rows() != n) throw Error(ErrorCode::InvalidArgument, "row counts differ");
  if (k < 1 || 2 * k >= n) throw Error(ErrorCode::InvalidArgument, "k must satisfy 1 <= k < n/2");

  std::vector<double> penalty(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<std::pair<double, std::size_t>> orig, red;
    orig.reserve(n - 1);
    red.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      orig.emplace_back(distance(original_metric, original.row(i), original.row(j)), j);
      red.emplace_back(euclidean(reduced.row(i), reduced.row(j)), j);
    }
    std::sort(orig.begin(), orig.end());
    std::partial_sort(red.begin(), red.begin() + static_cast<std::ptrdiff_t>(k), red.end());
    std::vector<std::size_t> rank(n, 0);
    for (std::size_t r = 0; r < orig.size(); ++r) rank[orig[r].second] = r + 1;
    double s = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = red[r].second;
      if (rank[j] > k) s += static_cast<double>(rank[j] - k);
    }
    penalty[i] = s;
  });
  const double total = std::accumulate(penalty.begin(), penalty.end(), 0.0);
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return 1.0 - 2.0 / (nn * kk * (2.0 * nn - 3.0 * kk - 1.0)) * total;
}

}  // namespace darkspan::reduce
