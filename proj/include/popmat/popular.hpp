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

// Maximum popular common independent sets.
//
// Every element u is replaced by two parallel copies x(u), y(u). The first
// matroid prefers every x-copy to every y-copy, the second the reverse;
// inside one copy type the original orders are kept. A kernel of the
// doubled instance, projected back, is super popular and as large as any
// weakly defendable common independent set.
//
// The brute-force classifier checks the four popularity notions directly
// by enumerating all common independent sets.

#ifndef POPMAT_POPULAR_HPP_
#define POPMAT_POPULAR_HPP_

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popmat/common.hpp"
#include "popmat/kernel.hpp"
#include "popmat/matroid.hpp"
#include "popmat/voting.hpp"

namespace popmat {

class PopularInstance {
 public:
  PopularInstance(Side first, Side second) : first_(std::move(first)), second_(std::move(second)) {
    if (first_.ground() != second_.ground()) throw InputError("sides have different ground sets");
    for (Element e : first_.ground()) {
      const ElementSet single{e};
      if (!first_.independent(single)) throw InputError("element " + std::to_string(e) + " is a loop on side 1");
      if (!second_.independent(single)) throw InputError("element " + std::to_string(e) + " is a loop on side 2");
    }
  }

  const Side& first() const { return first_; }
  const Side& second() const { return second_; }
  const Side& side(int k) const { return k == 1 ? first_ : second_; }
  const ElementSet& ground() const { return first_.ground(); }

  bool common_independent(const ElementSet& x) const {
    return first_.independent(x) && second_.independent(x);
  }

 private:
  Side first_;
  Side second_;
};

namespace detail {

// Independence of the doubled matroid: at most one copy per element and
// the projection independent in the original.
class CopyOracle final : public MatroidOracle {
 public:
  CopyOracle(Matroid base, std::vector<Element> projection)
      : base_(std::move(base)), projection_(std::move(projection)) {}

  bool independent(std::span<const Element> x) const override {
    ElementSet p;
    p.reserve(x.size());
    for (Element e : x) p.push_back(projection_[static_cast<std::size_t>(e)]);
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) return false;
    return base_.independent(p);
  }
  MatroidKind kind() const override { return MatroidKind::kDerived; }

 private:
  Matroid base_;
  std::vector<Element> projection_;
};

}  // namespace detail

// For the k-th element u of the original ground set, x(u) = k and
// y(u) = n + k.
class ExtendedInstance {
 public:
  ExtendedInstance(KernelInstance ki, ElementSet original_ground)
      : kernel_(std::move(ki)), original_(std::move(original_ground)) {}

  const KernelInstance& kernel_instance() const { return kernel_; }
  const ElementSet& original_ground() const { return original_; }
  std::size_t original_size() const { return original_.size(); }

  Element x_copy(Element u) const { return local(u); }
  Element y_copy(Element u) const { return static_cast<Element>(original_.size()) + local(u); }
  bool is_x_copy(Element star) const { return star < static_cast<Element>(original_.size()); }

  Element project(Element star) const {
    return original_[static_cast<std::size_t>(star) % original_.size()];
  }
  ElementSet project(const ElementSet& star_set) const {
    ElementSet out;
    for (Element e : star_set) out.push_back(project(e));
    return sets::normalize(out);
  }

 private:
  Element local(Element u) const {
    auto it = std::lower_bound(original_.begin(), original_.end(), u);
    if (it == original_.end() || *it != u) throw InputError("element outside the original ground set");
    return static_cast<Element>(it - original_.begin());
  }

  KernelInstance kernel_;
  ElementSet original_;
};

inline ExtendedInstance extend_instance(const PopularInstance& pi) {
  const ElementSet& ground = pi.ground();
  const auto n = static_cast<Element>(ground.size());
  std::vector<Element> projection(2 * ground.size());
  ElementSet star_ground(2 * ground.size());
  for (Element k = 0; k < 2 * n; ++k) {
    star_ground[static_cast<std::size_t>(k)] = k;
    projection[static_cast<std::size_t>(k)] = ground[static_cast<std::size_t>(k % std::max<Element>(n, 1))];
  }
  auto local = [&](Element u) {
    return static_cast<Element>(std::lower_bound(ground.begin(), ground.end(), u) - ground.begin());
  };
  auto doubled = [&](const Side& side, bool x_first) {
    Matroid m(star_ground, std::make_shared<detail::CopyOracle>(side.om.matroid(), projection));
    std::vector<Element> order;
    for (int pass = 0; pass < 2; ++pass) {
      const bool x_pass = (pass == 0) == x_first;
      for (Element u : side.om.order()) order.push_back(x_pass ? local(u) : n + local(u));
    }
    return OrderedMatroid(std::move(m), std::move(order));
  };
  return ExtendedInstance(KernelInstance(doubled(pi.first(), true), doubled(pi.second(), false)), ground);
}

struct PopularSolution {
  ElementSet set;
  ElementSet extended_kernel;
  KernelTrace trace;
};

inline PopularSolution max_popular(const PopularInstance& pi) {
  ExtendedInstance ext = extend_instance(pi);
  KernelResult kr = find_kernel(ext.kernel_instance());
  PopularSolution sol;
  sol.set = ext.project(kr.kernel);
  if (sol.set.size() != kr.kernel.size() || !pi.common_independent(sol.set)) {
    throw InvariantViolation("projection of the extended kernel is not a common independent set");
  }
  sol.extended_kernel = std::move(kr.kernel);
  sol.trace = std::move(kr.trace);
  return sol;
}

// ---------------------------------------------------------------------------
// Brute-force verification

inline constexpr std::size_t kDefaultClassifyBound = 12;

// All common independent sets, largest first, ties in lexicographic order.
inline std::vector<ElementSet> common_independent_sets(const PopularInstance& pi,
                                                       std::size_t bound = kDefaultClassifyBound) {
  const ElementSet& g = pi.ground();
  if (g.size() > bound) {
    throw ScaleError("brute-force verification is limited to " + std::to_string(bound) + " elements, instance has " +
                     std::to_string(g.size()));
  }
  std::vector<ElementSet> out;
  ElementSet cur;
  auto grow = [&](auto&& self, std::size_t k) -> void {
    out.push_back(cur);
    for (std::size_t e = k; e < g.size(); ++e) {
      cur.push_back(g[e]);
      if (pi.common_independent(cur)) self(self, e + 1);
      cur.pop_back();
    }
  };
  grow(grow, 0);
  std::stable_sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

enum class Notion { kSuperPopular = 0, kPopular = 1, kDefendable = 2, kWeaklyDefendable = 3 };

inline constexpr std::array<Notion, 4> kNotions = {Notion::kSuperPopular, Notion::kPopular, Notion::kDefendable,
                                                   Notion::kWeaklyDefendable};

inline const char* notion_name(Notion n) {
  switch (n) {
    case Notion::kSuperPopular: return "super_popular";
    case Notion::kPopular: return "popular";
    case Notion::kDefendable: return "defendable";
    case Notion::kWeaklyDefendable: return "weakly_defendable";
  }
  return "?";
}

struct PopularityVerdict {
  std::array<bool, 4> holds{true, true, true, true};
  // Lexicographically smallest J defeating the notion.
  std::array<std::optional<ElementSet>, 4> counterexample;
  std::size_t compared = 0;      // number of J examined
  std::size_t chain_checks = 0;  // vote-chain assertions performed

  bool operator[](Notion n) const { return holds[static_cast<std::size_t>(n)]; }
  bool super_popular() const { return (*this)[Notion::kSuperPopular]; }
  bool popular() const { return (*this)[Notion::kPopular]; }
  bool defendable() const { return (*this)[Notion::kDefendable]; }
  bool weakly_defendable() const { return (*this)[Notion::kWeaklyDefendable]; }
};

// Sums over both sides of the four votes for (I, J); every side's bundle
// passes the vote chain.
struct PairVotes {
  int forward = 0;
  int backward = 0;
  int weak_forward = 0;
  int weak_backward = 0;
};

inline PairVotes pair_votes(const PopularInstance& pi, const ElementSet& i, const ElementSet& j) {
  PairVotes pv;
  for (int k = 1; k <= 2; ++k) {
    VoteBundle vb = vote_bundle(pi.side(k), i, j);
    pv.forward += vb.forward;
    pv.backward += vb.backward;
    pv.weak_forward += vb.weak_forward;
    pv.weak_backward += vb.weak_backward;
  }
  return pv;
}

inline PopularityVerdict classify(const PopularInstance& pi, const ElementSet& i,
                                  std::size_t bound = kDefaultClassifyBound) {
  if (!sets::is_canonical(i) || !sets::is_subset(i, pi.ground()) || !pi.common_independent(i)) {
    throw InputError("set to classify is not common independent");
  }
  PopularityVerdict v;
  for (const ElementSet& j : common_independent_sets(pi, bound)) {
    PairVotes pv = pair_votes(pi, i, j);
    v.chain_checks += 2;
    ++v.compared;
    const std::array<bool, 4> ok = {pv.weak_forward >= 0, pv.forward >= 0, pv.backward <= 0,
                                    pv.weak_backward <= 0};
    for (std::size_t n = 0; n < 4; ++n) {
      if (ok[n]) continue;
      v.holds[n] = false;
      if (!v.counterexample[n] || j < *v.counterexample[n]) v.counterexample[n] = j;
    }
  }
  for (std::size_t n = 0; n + 1 < 4; ++n) {
    if (v.holds[n] && !v.holds[n + 1]) {
      throw InvariantViolation(std::string("popularity implication broken: ") + notion_name(kNotions[n]) +
                               " without " + notion_name(kNotions[n + 1]));
    }
  }
  return v;
}

inline bool is_weakly_defendable(const PopularInstance& pi, const ElementSet& i,
                                 const std::vector<ElementSet>& candidates) {
  for (const ElementSet& j : candidates) {
    int total = 0;
    for (int k = 1; k <= 2; ++k) {
      auto w = vote_weak(pi.side(k), j, i);
      if (!w) throw InvariantViolation("no weakly feasible pairing between common independent sets");
      total += w->value;
    }
    if (total > 0) return false;
  }
  return true;
}

// Largest cardinality of a weakly defendable common independent set.
inline std::size_t max_weakly_defendable_size(const PopularInstance& pi, std::size_t bound = kDefaultClassifyBound) {
  const std::vector<ElementSet> all = common_independent_sets(pi, bound);
  for (const ElementSet& i : all) {
    if (is_weakly_defendable(pi, i, all)) return i.size();
  }
  throw InvariantViolation("no weakly defendable common independent set");
}

// For the algorithm's output: vote_weak sums are >= 0 against every J, and
// > 0 against every larger J. Returns the first J breaking this.
inline std::optional<ElementSet> larger_set_property_counterexample(const PopularInstance& pi, const ElementSet& i,
                                                                    std::size_t bound = kDefaultClassifyBound) {
  for (const ElementSet& j : common_independent_sets(pi, bound)) {
    int total = 0;
    for (int k = 1; k <= 2; ++k) {
      auto w = vote_weak(pi.side(k), i, j);
      if (!w) throw InvariantViolation("no weakly feasible pairing between common independent sets");
      total += w->value;
    }
    if (total < 0 || (j.size() > i.size() && total <= 0)) return j;
  }
  return std::nullopt;
}

}  // namespace popmat

#endif  // POPMAT_POPULAR_HPP_
