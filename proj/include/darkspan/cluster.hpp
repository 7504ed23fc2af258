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

// HDBSCAN over Euclidean points: mutual reachability, MST, condensed tree,
// excess-of-mass selection, exemplars and exemplar-distance soft membership.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/matrix.hpp"
#include "darkspan/parallel.hpp"

namespace darkspan::cluster {

struct ClusterConfig {
  std::size_t min_cluster_size = 80;
  std::size_t min_samples = 90;
  double noise_outlier_mass = 0.5;

  void validate() const {
    if (min_cluster_size < 2) throw Error(ErrorCode::InvalidArgument, "min_cluster_size must be >= 2");
    if (min_samples < 1) throw Error(ErrorCode::InvalidArgument, "min_samples must be >= 1");
    if (!(noise_outlier_mass >= 0.0 && noise_outlier_mass <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "noise_outlier_mass must be in [0, 1]");
    }
  }
};

class MutualReachability {
 public:
  MutualReachability(const Matrix& points, std::vector<double> core)
      : points_(&points), core_(std::move(core)) {}

  std::size_t size() const noexcept { return core_.size(); }
  double core(std::size_t i) const noexcept { return core_[i]; }
  const std::vector<double>& core_distances() const noexcept { return core_; }

  double operator()(std::size_t a, std::size_t b) const noexcept {
    if (a == b) return 0.0;
    return std::max({core_[a], core_[b], euclidean(points_->row(a), points_->row(b))});
  }

 private:
  const Matrix* points_;
  std::vector<double> core_;
};

/// core(p) is the distance to p's k-th nearest other point,
/// k = min(min_samples, n - 1). The accessor refers to `points`.
inline MutualReachability mutual_reachability(const Matrix& points, std::size_t min_samples) {
  const std::size_t n = points.rows();
  const std::size_t k = std::min(min_samples, n == 0 ? 0 : n - 1);
  std::vector<double> core(n, 0.0);
  if (k > 0) {
    parallel_for(n, [&](std::size_t i) {
      std::vector<double> d;
      d.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) d.push_back(euclidean(points.row(i), points.row(j)));
      }
      std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
      core[i] = d[k - 1];
    });
  }
  return {points, std::move(core)};
}

struct MstEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

/// Prim's algorithm on the dense graph; O(n^2) time, O(n) memory.
template <typename Dist>
std::vector<MstEdge> minimum_spanning_tree(std::size_t n, const Dist& dist) {
  std::vector<MstEdge> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> from(n, 0);
  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d = dist(current, j);
      if (d < best[j]) {
        best[j] = d;
        from[j] = current;
      }
      if (next == n || best[j] < best[next]) next = j;
    }
    in_tree[next] = true;
    edges.push_back({std::min(from[next], next), std::max(from[next], next), best[next]});
    current = next;
  }
  return edges;
}

inline double total_weight(const std::vector<MstEdge>& edges) {
  double s = 0.0;
  for (const MstEdge& e : edges) s += e.weight;
  return s;
}

/// One merge of the single-linkage dendrogram; node ids >= n are merges.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t size = 0;
};

/// Kruskal-style replay of MST edges sorted by (weight, lower, higher).
inline std::vector<Merge> single_linkage(std::size_t n, std::vector<MstEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<std::size_t> parent(2 * n, 0), size(2 * n, 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Merge> merges;
  merges.reserve(edges.size());
  std::size_t next = n;
  for (const MstEdge& e : edges) {
    const std::size_t ra = find(e.a), rb = find(e.b);
    merges.push_back({ra, rb, e.weight, size[ra] + size[rb]});
    parent[ra] = parent[rb] = next;
    size[next] = size[ra] + size[rb];
    ++next;
  }
  return merges;
}

/// Row of the condensed tree. Children below n are points; cluster ids
/// start at n (the root).
struct CondensedEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  double lambda = 0.0;
  std::size_t size = 0;
};

/// Collapses the dendrogram: a split where one side has fewer than
/// `min_cluster_size` points lets those points fall out of the parent at
/// lambda = 1 / distance. Zero distances are clamped so lambda stays finite.
inline std::vector<CondensedEdge> condense_tree(std::size_t n, const std::vector<Merge>& merges,
                                                std::size_t min_cluster_size) {
  std::vector<CondensedEdge> out;
  if (n < 2 || merges.size() != n - 1) return out;
  double max_dist = 0.0;
  for (const Merge& m : merges) max_dist = std::max(max_dist, m.distance);
  const double tiny = max_dist > 0.0 ? 1e-12 * max_dist : 1.0;
  auto lambda_of = [&](double d) { return 1.0 / std::max(d, tiny); };
  auto node_size = [&](std::size_t node) { return node < n ? std::size_t{1} : merges[node - n].size; };

  auto append_points = [&](std::size_t node, std::size_t label, double lambda) {
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (x < n) {
        out.push_back({label, x, lambda, 1});
      } else {
        stack.push_back(merges[x - n].right);
        stack.push_back(merges[x - n].left);
      }
    }
  };

  const std::size_t root = 2 * n - 2;
  std::size_t next_label = n + 1;
  // (dendrogram node, condensed label), breadth-first.
  std::vector<std::pair<std::size_t, std::size_t>> queue{{root, n}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto [node, label] = queue[qi];
    const Merge& m = merges[node - n];
    const double lambda = lambda_of(m.distance);
    const std::size_t ls = node_size(m.left), rs = node_size(m.right);
    const bool left_big = ls >= min_cluster_size, right_big = rs >= min_cluster_size;
    if (left_big && right_big) {
      for (std::size_t child : {m.left, m.right}) {
        const std::size_t child_label = next_label++;
        out.push_back({label, child_label, lambda, node_size(child)});
        queue.emplace_back(child, child_label);
      }
    } else {
      for (auto [child, big] : {std::pair{m.left, left_big}, std::pair{m.right, right_big}}) {
        if (big) {
          queue.emplace_back(child, label);  // continuation of the same cluster
        } else if (child < n) {
          out.push_back({label, child, lambda, 1});
        } else {
          append_points(child, label, lambda);
        }
      }
    }
  }
  return out;
}

struct ClusterResult {
  std::vector<int> labels;                        // per point, -1 = noise
  std::vector<CondensedEdge> condensed_tree;
  std::vector<std::size_t> selected;              // condensed node id per cluster label
  std::vector<std::vector<std::size_t>> exemplars;
  std::vector<double> stabilities;                // per cluster label

  std::size_t n_clusters() const noexcept { return selected.size(); }
};

namespace detail {

struct TreeIndex {
  std::size_t n = 0;
  std::size_t n_nodes = 0;                        // cluster nodes n .. n + n_nodes - 1
  std::vector<double> birth;                      // per cluster node
  std::vector<std::vector<std::size_t>> children; // cluster children per cluster node
};

inline TreeIndex index_tree(std::size_t n, const std::vector<CondensedEdge>& tree) {
  TreeIndex t;
  t.n = n;
  std::size_t max_node = n;
  for (const auto& e : tree) max_node = std::max({max_node, e.parent, e.child >= n ? e.child : n});
  t.n_nodes = max_node - n + 1;
  t.birth.assign(t.n_nodes, 0.0);
  t.children.assign(t.n_nodes, {});
  for (const auto& e : tree) {
    if (e.child >= n) {
      t.birth[e.child - n] = e.lambda;
      t.children[e.parent - n].push_back(e.child);
    }
  }
  return t;
}

}  // namespace detail

/// Stability per cluster node: sum over rows leaving it of
/// (lambda - lambda_birth) * size.
inline std::vector<double> stabilities(std::size_t n, const std::vector<CondensedEdge>& tree) {
  const detail::TreeIndex t = detail::index_tree(n, tree);
  std::vector<double> s(t.n_nodes, 0.0);
  for (const auto& e : tree) {
    s[e.parent - n] += (e.lambda - t.birth[e.parent - n]) * static_cast<double>(e.size);
  }
  return s;
}

/// Excess-of-mass selection, leaves upward. A node replaces its selected
/// descendants only when its own stability is strictly larger. The root is a
/// candidate when it holds at least `min_cluster_size` points.
inline std::vector<std::size_t> select_clusters(std::size_t n, const std::vector<CondensedEdge>& tree,
                                                std::size_t min_cluster_size) {
  if (tree.empty() || n < min_cluster_size) return {};
  const detail::TreeIndex t = detail::index_tree(n, tree);
  const std::vector<double> own = stabilities(n, tree);
  std::vector<double> best(t.n_nodes, 0.0);
  std::vector<bool> chosen(t.n_nodes, false);
  // Children always have larger ids than their parent.
  for (std::size_t i = t.n_nodes; i-- > 0;) {
    double sub = 0.0;
    for (std::size_t c : t.children[i]) sub += best[c - n];
    if (t.children[i].empty() || own[i] > sub) {
      chosen[i] = true;
      best[i] = own[i];
    } else {
      best[i] = sub;
    }
  }
  std::vector<std::size_t> selected;
  std::vector<std::size_t> stack{n};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (chosen[node - n]) {
      selected.push_back(node);
      continue;
    }
    const auto& kids = t.children[node - n];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

/// Full clustering. Cluster labels follow ascending condensed node id.
inline ClusterResult hdbscan(const Matrix& points, const ClusterConfig& cfg) {
  cfg.validate();
  const std::size_t n = points.rows();
  ClusterResult r;
  r.labels.assign(n, -1);
  if (n < 2) return r;

  const MutualReachability mr = mutual_reachability(points, cfg.min_samples);
  const auto mst = minimum_spanning_tree(n, mr);
  r.condensed_tree = condense_tree(n, single_linkage(n, mst), cfg.min_cluster_size);
  r.selected = select_clusters(n, r.condensed_tree, cfg.min_cluster_size);
  if (r.selected.empty()) return r;

  const detail::TreeIndex t = detail::index_tree(n, r.condensed_tree);
  const std::vector<double> stab = stabilities(n, r.condensed_tree);
  std::vector<int> node_label(t.n_nodes, -1);
  for (std::size_t c = 0; c < r.selected.size(); ++c) {
    // Propagate the label through the selected node's subtree.
    std::vector<std::size_t> stack{r.selected[c]};
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      node_label[node - n] = static_cast<int>(c);
      for (std::size_t k : t.children[node - n]) stack.push_back(k);
    }
    r.stabilities.push_back(stab[r.selected[c] - n]);
  }

  std::vector<double> max_lambda(r.selected.size(), -1.0);
  std::vector<double> point_lambda(n, 0.0);
  for (const auto& e : r.condensed_tree) {
    if (e.child >= n) continue;
    const int label = node_label[e.parent - n];
    r.labels[e.child] = label;
    point_lambda[e.child] = e.lambda;
    if (label >= 0) max_lambda[label] = std::max(max_lambda[label], e.lambda);
  }
  r.exemplars.assign(r.selected.size(), {});
  for (std::size_t p = 0; p < n; ++p) {
    const int label = r.labels[p];
    if (label >= 0 && point_lambda[p] == max_lambda[label]) r.exemplars[label].push_back(p);
  }
  return r;
}

inline constexpr double kMembershipEpsilon = 1e-8;

struct MembershipVector {
  std::vector<double> probabilities;  // per cluster label
  double outlier_mass = 0.0;
};

/// raw_c = 1 / (distance to nearest exemplar of c + 1e-8), normalized over
/// clusters and scaled by (1 - outlier_mass).
inline MembershipVector membership_vector(std::span<const double> point, int label,
                                          const ClusterResult& result, const Matrix& points,
                                          double noise_outlier_mass = 0.5) {
  MembershipVector m;
  const std::size_t k = result.n_clusters();
  if (k == 0) {
    m.outlier_mass = 1.0;
    return m;
  }
  m.outlier_mass = label >= 0 ? 0.0 : noise_outlier_mass;
  m.probabilities.assign(k, 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e : result.exemplars[c]) best = std::min(best, euclidean(point, points.row(e)));
    m.probabilities[c] = 1.0 / (best + kMembershipEpsilon);
    total += m.probabilities[c];
  }
  for (double& p : m.probabilities) p = p / total * (1.0 - m.outlier_mass);
  return m;
}

inline std::vector<MembershipVector> membership_vectors(const ClusterResult& result, const Matrix& points,
                                                        double noise_outlier_mass = 0.5) {
  std::vector<MembershipVector> out(points.rows());
  parallel_for(points.rows(), [&](std::size_t i) {
    out[i] = membership_vector(points.row(i), result.labels[i], result, points, noise_outlier_mass);
  });
  return out;
}

}  // namespace darkspan::cluster
