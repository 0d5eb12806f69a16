// Copyright 2026 The Authors.
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

// Exact integer bipartite matching: weighted perfect matching with dual
// potentials (sparse Hungarian method) and min-cost matchings that must
// cover a given vertex set.

#ifndef POPMAT_MATCHING_HPP_
#define POPMAT_MATCHING_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popmat/common.hpp"

namespace popmat {

using Weight = std::int64_t;

struct WeightedEdge {
  int left;
  int right;
  Weight weight;

  bool operator==(const WeightedEdge&) const = default;
};

// Vertices are 0..left_count-1 on the left and 0..right_count-1 on the
// right. At most one edge per vertex pair.
class BipartiteWeightedGraph {
 public:
  BipartiteWeightedGraph(int left_count, int right_count) : left_(left_count), right_(right_count) {
    if (left_count < 0 || right_count < 0) throw InputError("negative vertex count");
  }

  // Adding the same pair twice with the same weight is a no-op; with a
  // different weight it is an input error.
  void add_edge(int l, int r, Weight w) {
    if (l < 0 || l >= left_ || r < 0 || r >= right_) throw InputError("edge endpoint out of range");
    auto [it, inserted] = index_.try_emplace({l, r}, edges_.size());
    if (!inserted) {
      if (edges_[it->second].weight != w) throw InputError("parallel edges with different weights");
      return;
    }
    edges_.push_back({l, r, w});
  }

  int left_count() const { return left_; }
  int right_count() const { return right_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  std::optional<Weight> weight(int l, int r) const {
    auto it = index_.find({l, r});
    if (it == index_.end()) return std::nullopt;
    return edges_[it->second].weight;
  }

  BipartiteWeightedGraph negated() const {
    BipartiteWeightedGraph g(left_, right_);
    for (const auto& e : edges_) g.add_edge(e.left, e.right, -e.weight);
    return g;
  }

 private:
  int left_;
  int right_;
  std::vector<WeightedEdge> edges_;
  std::map<std::pair<int, int>, std::size_t> index_;
};

using MatchedPairs = std::vector<std::pair<int, int>>;  // (left, right), sorted by left

// pi(l) + pi(r) >= w(lr) on every edge; the sum of all potentials equals
// the optimum.
struct DualCertificate {
  std::vector<Weight> left;
  std::vector<Weight> right;

  Weight total() const {
    Weight s = 0;
    for (Weight x : left) s += x;
    for (Weight x : right) s += x;
    return s;
  }
};

struct PerfectMatching {
  MatchedPairs pairs;
  Weight weight = 0;
  DualCertificate dual;
};

struct CoverMatching {
  MatchedPairs pairs;
  Weight cost = 0;
};

namespace detail {

inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::max() / 4;

struct AssignmentResult {
  std::vector<int> row_to_col;
  std::vector<Weight> row_potential;
  std::vector<Weight> col_potential;
  Weight cost = 0;
};

// Minimum-cost perfect assignment on an n x n sparse cost structure
// (successive shortest paths with Hungarian potentials). `cost[i]` lists
// (column, cost) for row i. Returns nothing when no perfect assignment
// exists. Potentials satisfy u[i] + v[j] <= c(i, j) on every edge, with
// equality on assigned pairs.
inline std::optional<AssignmentResult> min_cost_assignment(
    int n, const std::vector<std::vector<std::pair<int, Weight>>>& cost) {
  const auto N = static_cast<std::size_t>(n);
  // 1-based rows/columns; column 0 is the virtual start.
  std::vector<Weight> u(N + 1, 0), v(N + 1, 0);
  std::vector<int> p(N + 1, 0), way(N + 1, 0);
  std::vector<std::vector<Weight>> dense(N + 1, std::vector<Weight>(N + 1, kUnreachable));
  for (std::size_t i = 0; i < N; ++i) {
    for (auto [j, c] : cost[i]) dense[i + 1][static_cast<std::size_t>(j) + 1] = c;
  }
  for (std::size_t i = 1; i <= N; ++i) {
    p[0] = static_cast<int>(i);
    std::size_t j0 = 0;
    std::vector<Weight> minv(N + 1, kUnreachable);
    std::vector<char> used(N + 1, 0);
    do {
      used[j0] = 1;
      auto i0 = static_cast<std::size_t>(p[j0]);
      Weight delta = kUnreachable;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= N; ++j) {
        if (used[j]) continue;
        if (dense[i0][j] != kUnreachable) {
          Weight cur = dense[i0][j] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = static_cast<int>(j0);
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (delta == kUnreachable) return std::nullopt;
      for (std::size_t j = 0; j <= N; ++j) {
        if (used[j]) {
          u[static_cast<std::size_t>(p[j])] += delta;
          v[j] -= delta;
        } else if (minv[j] != kUnreachable) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      auto j1 = static_cast<std::size_t>(way[j0]);
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  AssignmentResult r;
  r.row_to_col.assign(N, -1);
  for (std::size_t j = 1; j <= N; ++j) {
    if (p[j]) r.row_to_col[static_cast<std::size_t>(p[j]) - 1] = static_cast<int>(j) - 1;
  }
  r.row_potential.assign(u.begin() + 1, u.end());
  r.col_potential.assign(v.begin() + 1, v.end());
  for (std::size_t i = 0; i < N; ++i) {
    r.cost += dense[i + 1][static_cast<std::size_t>(r.row_to_col[i]) + 1];
  }
  return r;
}

}  // namespace detail

// Checks the certificate against a claimed optimum. Throws
// InvariantViolation on failure.
inline void verify_certificate(const BipartiteWeightedGraph& g, const PerfectMatching& m) {
  const auto& d = m.dual;
  if (d.left.size() != static_cast<std::size_t>(g.left_count()) ||
      d.right.size() != static_cast<std::size_t>(g.right_count())) {
    throw InvariantViolation("dual certificate has the wrong shape");
  }
  for (const auto& e : g.edges()) {
    if (d.left[static_cast<std::size_t>(e.left)] + d.right[static_cast<std::size_t>(e.right)] < e.weight) {
      throw InvariantViolation("dual certificate violated on edge (" + std::to_string(e.left) + "," +
                               std::to_string(e.right) + ")");
    }
  }
  Weight w = 0;
  for (auto [l, r] : m.pairs) {
    auto ew = g.weight(l, r);
    if (!ew) throw InvariantViolation("matching uses a non-edge");
    w += *ew;
  }
  if (w != m.weight || d.total() != m.weight) {
    throw InvariantViolation("dual certificate total differs from the matching weight");
  }
}

// Maximum-weight perfect matching with an integral dual certificate.
// Returns nothing when the graph has no perfect matching (including when
// the sides differ in size).
inline std::optional<PerfectMatching> max_weight_perfect_matching(const BipartiteWeightedGraph& g) {
  if (g.left_count() != g.right_count()) return std::nullopt;
  const int n = g.left_count();
  std::vector<std::vector<std::pair<int, Weight>>> cost(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) cost[static_cast<std::size_t>(e.left)].push_back({e.right, -e.weight});
  auto a = detail::min_cost_assignment(n, cost);
  if (!a) return std::nullopt;
  PerfectMatching m;
  for (int l = 0; l < n; ++l) m.pairs.push_back({l, a->row_to_col[static_cast<std::size_t>(l)]});
  m.weight = -a->cost;
  // Minimisation duals u + v <= -w become pi = -u, -v with pi(l)+pi(r) >= w.
  for (Weight x : a->row_potential) m.dual.left.push_back(-x);
  for (Weight x : a->col_potential) m.dual.right.push_back(-x);
  verify_certificate(g, m);
  return m;
}

// The returned potentials satisfy pi(l) + pi(r) <= w(lr), the packing
// dual of a minimisation.
inline std::optional<PerfectMatching> min_weight_perfect_matching(const BipartiteWeightedGraph& g) {
  auto m = max_weight_perfect_matching(g.negated());
  if (!m) return std::nullopt;
  m->weight = -m->weight;
  for (Weight& x : m->dual.left) x = -x;
  for (Weight& x : m->dual.right) x = -x;
  return m;
}

// Minimum-cost matching (not necessarily perfect) covering every vertex
// flagged in `mandatory_left` / `mandatory_right`. Unmatched optional
// vertices contribute nothing.
//
// Reduced to a perfect assignment on (L + R') x (R + L'): each optional
// vertex may pair with its own zero-cost copy, and the copies of matched
// vertices pair up among themselves at zero cost.
inline std::optional<CoverMatching> min_cost_cover_matching(const BipartiteWeightedGraph& g,
                                                            const std::vector<bool>& mandatory_left,
                                                            const std::vector<bool>& mandatory_right) {
  const int nl = g.left_count();
  const int nr = g.right_count();
  if (mandatory_left.size() != static_cast<std::size_t>(nl) ||
      mandatory_right.size() != static_cast<std::size_t>(nr)) {
    throw InputError("mandatory flags do not match the graph");
  }
  const int n = nl + nr;
  // Rows: 0..nl-1 real left, nl..n-1 copies of right vertices.
  // Columns: 0..nr-1 real right, nr..n-1 copies of left vertices.
  std::vector<std::vector<std::pair<int, Weight>>> cost(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) cost[static_cast<std::size_t>(e.left)].push_back({e.right, e.weight});
  for (int l = 0; l < nl; ++l) {
    if (!mandatory_left[static_cast<std::size_t>(l)]) cost[static_cast<std::size_t>(l)].push_back({nr + l, 0});
  }
  for (int r = 0; r < nr; ++r) {
    auto row = static_cast<std::size_t>(nl + r);
    if (!mandatory_right[static_cast<std::size_t>(r)]) cost[row].push_back({r, 0});
    for (int l = 0; l < nl; ++l) cost[row].push_back({nr + l, 0});
  }
  auto a = detail::min_cost_assignment(n, cost);
  if (!a) return std::nullopt;
  CoverMatching out;
  for (int l = 0; l < nl; ++l) {
    int c = a->row_to_col[static_cast<std::size_t>(l)];
    if (c < nr) {
      out.pairs.push_back({l, c});
      out.cost += *g.weight(l, c);
    }
  }
  return out;
}

}  // namespace popmat

#endif  // POPMAT_MATCHING_HPP_
