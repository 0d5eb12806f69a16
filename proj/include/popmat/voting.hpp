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

// Pairings between two independent sets of an ordered matroid that is a
// direct sum of agent matroids, and the votes they induce.
//
// For independent I, J and a pairing N between I\J and J\I:
//   (1) I - u + v is independent for every pair uv
//   (2) every v in J\I with I + v dependent is covered
//   (3) every u in I\J with J + u dependent is covered
//   (4) every pair lies inside one summand
//   (5) each summand holds exactly min(|S_j & I\J|, |S_j & J\I|) pairs
// A pairing is feasible if (1)-(5) hold and weakly feasible if (1)-(2)
// hold. vote(I,J,N) = #{u > v} - #{u < v} + |I| - |J|; vote and vote_weak
// minimise it over feasible / weakly feasible pairings.

#ifndef POPMAT_VOTING_HPP_
#define POPMAT_VOTING_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popmat/common.hpp"
#include "popmat/matching.hpp"
#include "popmat/matroid.hpp"

namespace popmat {

// An ordered matroid together with its decomposition into agent summands.
// The matroid is always the direct sum of `sum.parts`.
struct Side {
  OrderedMatroid om;
  DirectSumStructure sum;

  const ElementSet& ground() const { return om.ground(); }
  bool independent(std::span<const Element> x) const { return om.independent(x); }
};

inline Side make_side(const std::vector<Matroid>& parts, std::vector<Element> order) {
  DirectSum ds = direct_sum(parts);
  return Side{OrderedMatroid(ds.matroid, std::move(order)), std::move(ds.structure)};
}

// A single summand: every pairing is then trivially inside one agent.
inline Side single_agent_side(const Matroid& m, std::vector<Element> order) {
  return make_side({m}, std::move(order));
}

enum class PairingMode { kFeasible, kWeaklyFeasible };

inline const char* mode_name(PairingMode m) {
  return m == PairingMode::kFeasible ? "feasible" : "weakly-feasible";
}

// (u, v) with u in I\J and v in J\I.
using Pairing = std::vector<std::pair<Element, Element>>;

struct FeasibilityReport {
  bool feasible = true;
  std::vector<int> violated;  // condition numbers 1..5
};

struct VoteReport {
  int value = 0;
  Pairing witness;
  PairingMode mode = PairingMode::kFeasible;
};

namespace detail {

inline void require_independent(const Side& side, const ElementSet& x, const char* what) {
  if (!sets::is_canonical(x) || !sets::is_subset(x, side.ground())) {
    throw InputError(std::string(what) + " is not a subset of the ground set");
  }
  if (!side.independent(x)) throw InputError(std::string(what) + " is not independent");
}

}  // namespace detail

inline FeasibilityReport is_feasible_pairing(const Side& side, const ElementSet& i, const ElementSet& j,
                                             const Pairing& n, PairingMode mode) {
  detail::require_independent(side, i, "I");
  detail::require_independent(side, j, "J");
  const ElementSet left = sets::difference(i, j);
  const ElementSet right = sets::difference(j, i);
  ElementSet used_left, used_right;
  for (auto [u, v] : n) {
    if (!sets::contains(left, u) || !sets::contains(right, v)) {
      throw InputError("pair (" + std::to_string(u) + "," + std::to_string(v) + ") is not in I\\J x J\\I");
    }
    used_left.push_back(u);
    used_right.push_back(v);
  }
  used_left = sets::normalize(used_left);
  used_right = sets::normalize(used_right);
  if (used_left.size() != n.size() || used_right.size() != n.size()) {
    throw InputError("pairing endpoints are not distinct");
  }

  FeasibilityReport rep;
  auto fail = [&](int c) {
    rep.feasible = false;
    rep.violated.push_back(c);
  };
  for (auto [u, v] : n) {
    if (!side.independent(sets::exchange(i, u, v))) {
      fail(1);
      break;
    }
  }
  for (Element v : right) {
    if (!sets::contains(used_right, v) && !side.independent(sets::plus(i, v))) {
      fail(2);
      break;
    }
  }
  if (mode == PairingMode::kWeaklyFeasible) return rep;
  for (Element u : left) {
    if (!sets::contains(used_left, u) && !side.independent(sets::plus(j, u))) {
      fail(3);
      break;
    }
  }
  for (auto [u, v] : n) {
    if (side.sum.block_of(u) != side.sum.block_of(v)) {
      fail(4);
      break;
    }
  }
  for (std::size_t b = 0; b < side.sum.size(); ++b) {
    const auto& block = side.sum.blocks[b];
    std::size_t want = std::min(sets::intersect(block, left).size(), sets::intersect(block, right).size());
    std::size_t have = 0;
    for (auto [u, v] : n) have += sets::contains(block, u) && sets::contains(block, v);
    if (have != want) {
      fail(5);
      break;
    }
  }
  return rep;
}

inline int vote_of_pairing(const OrderedMatroid& om, const ElementSet& i, const ElementSet& j, const Pairing& n) {
  int value = static_cast<int>(i.size()) - static_cast<int>(j.size());
  for (auto [u, v] : n) value += om.prefers(u, v) ? 1 : -1;
  return value;
}

namespace detail {

inline void self_check(const Side& side, const ElementSet& i, const ElementSet& j, const VoteReport& r) {
  if (!is_feasible_pairing(side, i, j, r.witness, r.mode).feasible ||
      vote_of_pairing(side.om, i, j, r.witness) != r.value) {
    throw InvariantViolation("vote witness does not reproduce the reported value");
  }
}

}  // namespace detail

// Exact vote(I,J): the minimum over all feasible pairings, one padded
// assignment problem per summand. Nothing when no feasible pairing exists.
inline std::optional<VoteReport> vote(const Side& side, const ElementSet& i, const ElementSet& j) {
  detail::require_independent(side, i, "I");
  detail::require_independent(side, j, "J");
  const ElementSet left_all = sets::difference(i, j);
  const ElementSet right_all = sets::difference(j, i);
  VoteReport rep;
  rep.mode = PairingMode::kFeasible;
  rep.value = static_cast<int>(i.size()) - static_cast<int>(j.size());
  for (const auto& block : side.sum.blocks) {
    const ElementSet left = sets::intersect(block, left_all);
    const ElementSet right = sets::intersect(block, right_all);
    if (left.empty() && right.empty()) continue;
    const int nl = static_cast<int>(left.size());
    const int nr = static_cast<int>(right.size());
    const int m = std::max(nl, nr);
    // Vertices beyond nl / nr are padding: a padded left vertex leaves an
    // addable J-element uncovered (condition 2), a padded right vertex
    // leaves an I-element with J + u independent uncovered (condition 3).
    BipartiteWeightedGraph g(m, m);
    for (int a = 0; a < nl; ++a) {
      for (int b = 0; b < nr; ++b) {
        Element u = left[static_cast<std::size_t>(a)];
        Element v = right[static_cast<std::size_t>(b)];
        if (side.independent(sets::exchange(i, u, v))) g.add_edge(a, b, side.om.prefers(u, v) ? 1 : -1);
      }
    }
    for (int b = 0; b < nr && nl < nr; ++b) {
      if (side.independent(sets::plus(i, right[static_cast<std::size_t>(b)]))) {
        for (int a = nl; a < m; ++a) g.add_edge(a, b, 0);
      }
    }
    for (int a = 0; a < nl && nr < nl; ++a) {
      if (side.independent(sets::plus(j, left[static_cast<std::size_t>(a)]))) {
        for (int b = nr; b < m; ++b) g.add_edge(a, b, 0);
      }
    }
    auto pm = min_weight_perfect_matching(g);
    if (!pm) return std::nullopt;
    rep.value += static_cast<int>(pm->weight);
    for (auto [a, b] : pm->pairs) {
      if (a < nl && b < nr) rep.witness.push_back({left[static_cast<std::size_t>(a)], right[static_cast<std::size_t>(b)]});
    }
  }
  detail::self_check(side, i, j, rep);
  return rep;
}

// Exact vote_weak(I,J): one min-cost matching over all exchanges that
// covers every non-addable element of J\I.
inline std::optional<VoteReport> vote_weak(const Side& side, const ElementSet& i, const ElementSet& j) {
  detail::require_independent(side, i, "I");
  detail::require_independent(side, j, "J");
  const ElementSet left = sets::difference(i, j);
  const ElementSet right = sets::difference(j, i);
  BipartiteWeightedGraph g(static_cast<int>(left.size()), static_cast<int>(right.size()));
  for (std::size_t a = 0; a < left.size(); ++a) {
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (side.independent(sets::exchange(i, left[a], right[b]))) {
        g.add_edge(static_cast<int>(a), static_cast<int>(b), side.om.prefers(left[a], right[b]) ? 1 : -1);
      }
    }
  }
  std::vector<bool> must_left(left.size(), false);
  std::vector<bool> must_right(right.size());
  for (std::size_t b = 0; b < right.size(); ++b) must_right[b] = !side.independent(sets::plus(i, right[b]));
  auto cm = min_cost_cover_matching(g, must_left, must_right);
  if (!cm) return std::nullopt;
  VoteReport rep;
  rep.mode = PairingMode::kWeaklyFeasible;
  rep.value = static_cast<int>(i.size()) - static_cast<int>(j.size()) + static_cast<int>(cm->cost);
  for (auto [a, b] : cm->pairs) rep.witness.push_back({left[static_cast<std::size_t>(a)], right[static_cast<std::size_t>(b)]});
  detail::self_check(side, i, j, rep);
  return rep;
}

inline std::optional<VoteReport> vote_in_mode(const Side& side, const ElementSet& i, const ElementSet& j,
                                              PairingMode mode) {
  return mode == PairingMode::kFeasible ? vote(side, i, j) : vote_weak(side, i, j);
}

inline constexpr std::size_t kBruteForceVoteLimit = 12;

// Independent oracle for vote / vote_weak: enumerates every pairing between
// I\J and J\I and filters with is_feasible_pairing.
inline std::optional<VoteReport> vote_bruteforce(const Side& side, const ElementSet& i, const ElementSet& j,
                                                 PairingMode mode) {
  detail::require_independent(side, i, "I");
  detail::require_independent(side, j, "J");
  const ElementSet left = sets::difference(i, j);
  const ElementSet right = sets::difference(j, i);
  if (left.size() + right.size() > kBruteForceVoteLimit) {
    throw ScaleError("vote_bruteforce is limited to |I\\J| + |J\\I| <= " + std::to_string(kBruteForceVoteLimit));
  }
  std::optional<VoteReport> best;
  Pairing current;
  std::vector<char> taken(right.size(), 0);
  auto visit = [&](auto&& self, std::size_t a) -> void {
    if (a == left.size()) {
      if (!is_feasible_pairing(side, i, j, current, mode).feasible) return;
      int val = vote_of_pairing(side.om, i, j, current);
      if (!best || val < best->value) best = VoteReport{val, current, mode};
      return;
    }
    self(self, a + 1);
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (taken[b]) continue;
      taken[b] = 1;
      current.push_back({left[a], right[b]});
      self(self, a + 1);
      current.pop_back();
      taken[b] = 0;
    }
  };
  visit(visit, 0);
  return best;
}

// ---------------------------------------------------------------------------
// Reduction of (I, J) to a pair of disjoint bases.

struct ReducedPair {
  // M' = direct sum of the per-summand minors, with the inherited order.
  // Element ids are those of the original instance.
  Side reduced;
  ElementSet i_prime;
  ElementSet j_prime;
  // A_j for every original summand (empty when |I_j| = |J_j|).
  std::vector<ElementSet> augmentation;
  // Summand index of M' -> summand index of the original side.
  std::vector<int> source_block;
};

inline ReducedPair reduce_to_disjoint_bases(const Side& side, const ElementSet& i, const ElementSet& j) {
  detail::require_independent(side, i, "I");
  detail::require_independent(side, j, "J");
  ElementSet i_prime, j_prime;
  std::vector<ElementSet> augmentation;
  std::vector<int> source_block;
  std::vector<Matroid> parts;
  for (std::size_t b = 0; b < side.sum.size(); ++b) {
    const Matroid& part = side.sum.parts[b];
    const ElementSet ib = sets::intersect(side.sum.blocks[b], i);
    const ElementSet jb = sets::intersect(side.sum.blocks[b], j);
    const bool grow_i = ib.size() <= jb.size();
    const ElementSet& small = grow_i ? ib : jb;
    const ElementSet& large = grow_i ? jb : ib;
    // A_j: scan large\small best-first, keep while small + A stays independent.
    ElementSet aug;
    const std::size_t need = large.size() - small.size();
    for (Element e : side.om.sorted(sets::difference(large, small))) {
      if (aug.size() == need) break;
      ElementSet cand = sets::plus(aug, e);
      if (part.independent(sets::unite(small, cand))) aug = std::move(cand);
    }
    if (aug.size() != need) throw InvariantViolation("augmentation set could not be completed");
    augmentation.push_back(aug);
    ElementSet ip = grow_i ? sets::difference(ib, jb) : sets::difference(ib, sets::unite(jb, aug));
    ElementSet jp = grow_i ? sets::difference(jb, sets::unite(ib, aug)) : sets::difference(jb, ib);
    if (ip.size() != jp.size()) throw InvariantViolation("reduced bases differ in size");
    if (ip.empty()) continue;
    const ElementSet contract = sets::unite(sets::intersect(ib, jb), aug);
    parts.push_back(derive_minor(part, sets::unite(ib, jb), contract, static_cast<int>(ip.size())));
    source_block.push_back(static_cast<int>(b));
    i_prime = sets::unite(i_prime, ip);
    j_prime = sets::unite(j_prime, jp);
  }
  if (parts.empty()) parts.push_back(free_matroid({}));
  const ElementSet ground = sets::unite(i_prime, j_prime);
  ReducedPair rp{make_side(parts, side.om.sorted(ground)), std::move(i_prime), std::move(j_prime),
                 std::move(augmentation), std::move(source_block)};
  const Matroid& mp = rp.reduced.om.matroid();
  if (!is_base(mp, rp.i_prime) || !is_base(mp, rp.j_prime)) {
    throw InvariantViolation("reduced sets are not bases of the reduced matroid");
  }
  return rp;
}

// Exchange graphs between disjoint bases A and B of an ordered matroid.
// Left vertices are A, right vertices are B (both in ascending id order).
// E_A holds ab with A - a + b independent, E_B holds ab with B + a - b
// independent. Every edge weighs 1 if a is worse than b, else 0.
struct ExchangeGraphs {
  ElementSet left;
  ElementSet right;
  BipartiteWeightedGraph from_left{0, 0};
  BipartiteWeightedGraph from_right{0, 0};

  Pairing to_pairing(const MatchedPairs& m) const {
    Pairing out;
    for (auto [a, b] : m) out.push_back({left[static_cast<std::size_t>(a)], right[static_cast<std::size_t>(b)]});
    return out;
  }
};

inline ExchangeGraphs build_exchange_graphs(const OrderedMatroid& om, const ElementSet& a, const ElementSet& b) {
  ExchangeGraphs eg{a, b, BipartiteWeightedGraph(static_cast<int>(a.size()), static_cast<int>(b.size())),
                    BipartiteWeightedGraph(static_cast<int>(a.size()), static_cast<int>(b.size()))};
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      const Weight w = om.prefers(b[y], a[x]) ? 1 : 0;
      if (om.independent(sets::exchange(a, a[x], b[y]))) {
        eg.from_left.add_edge(static_cast<int>(x), static_cast<int>(y), w);
      }
      if (om.independent(sets::exchange(b, b[y], a[x]))) {
        eg.from_right.add_edge(static_cast<int>(x), static_cast<int>(y), w);
      }
    }
  }
  return eg;
}

inline ExchangeGraphs exchange_graphs(const ReducedPair& rp) {
  ExchangeGraphs eg = build_exchange_graphs(rp.reduced.om, rp.i_prime, rp.j_prime);
  if (!max_weight_perfect_matching(eg.from_left) || !max_weight_perfect_matching(eg.from_right)) {
    throw InvariantViolation("exchange graph between two bases has no perfect matching");
  }
  return eg;
}

struct MaxMinReport {
  Weight max_from_left = 0;   // max w(N), N a perfect matching of E_A
  Weight min_from_right = 0;  // min w(N'), N' a perfect matching of E_B
  bool holds = false;
};

// Max-min exchange inequality for disjoint bases a, b.
inline MaxMinReport check_max_min(const OrderedMatroid& om, const ElementSet& a, const ElementSet& b) {
  if (!sets::intersect(a, b).empty() || !is_base(om.matroid(), a) || !is_base(om.matroid(), b)) {
    throw InputError("max-min inequality needs two disjoint bases");
  }
  ExchangeGraphs eg = build_exchange_graphs(om, a, b);
  auto hi = max_weight_perfect_matching(eg.from_left);
  auto lo = min_weight_perfect_matching(eg.from_right);
  if (!hi || !lo) throw InvariantViolation("exchange graph between two bases has no perfect matching");
  return {hi->weight, lo->weight, hi->weight >= lo->weight};
}

struct ExchangeReport {
  int vote_ij = 0;
  int vote_ji = 0;
  bool holds = false;  // vote_ij + vote_ji <= 0
  std::optional<MaxMinReport> max_min;  // present when I, J are disjoint bases
};

inline ExchangeReport check_exchange_inequality(const Side& side, const ElementSet& i, const ElementSet& j) {
  auto ij = vote(side, i, j);
  auto ji = vote(side, j, i);
  if (!ij || !ji) throw InvariantViolation("no feasible pairing between independent sets");
  ExchangeReport rep{ij->value, ji->value, ij->value + ji->value <= 0, std::nullopt};
  const Matroid& m = side.om.matroid();
  if (sets::intersect(i, j).empty() && is_base(m, i) && is_base(m, j)) rep.max_min = check_max_min(side.om, i, j);
  return rep;
}

struct DualFilterWitness {
  PerfectMatching best_from_left;   // max-weight perfect matching of E_I with its duals
  BipartiteWeightedGraph filtered{0, 0};  // edges of E_J with pi(u) + pi(v) >= w(uv)
  Pairing matching;                 // perfect matching of `filtered`, as (u in I', v in J')
};

// Filters E_J by the dual certificate of E_I and returns a perfect matching
// of what survives. Its existence is a theorem; absence throws.
inline DualFilterWitness dual_filter_witness(const ReducedPair& rp) {
  ExchangeGraphs eg = exchange_graphs(rp);
  DualFilterWitness out;
  out.best_from_left = *max_weight_perfect_matching(eg.from_left);
  const auto& pi = out.best_from_left.dual;
  out.filtered = BipartiteWeightedGraph(eg.from_right.left_count(), eg.from_right.right_count());
  for (const auto& e : eg.from_right.edges()) {
    if (pi.left[static_cast<std::size_t>(e.left)] + pi.right[static_cast<std::size_t>(e.right)] >= e.weight) {
      out.filtered.add_edge(e.left, e.right, e.weight);
    }
  }
  auto pm = max_weight_perfect_matching(out.filtered);
  if (!pm) throw InvariantViolation("dual-filtered exchange graph has no perfect matching");
  out.matching = eg.to_pairing(pm->pairs);
  return out;
}

// All four votes of one side for the ordered pair (I, J), checked against
// the chain vote_weak(I,J) <= vote(I,J) <= -vote(J,I) <= -vote_weak(J,I).
struct VoteBundle {
  int forward = 0;        // vote(I, J)
  int backward = 0;       // vote(J, I)
  int weak_forward = 0;   // vote_weak(I, J)
  int weak_backward = 0;  // vote_weak(J, I)
};

inline VoteBundle vote_bundle(const Side& side, const ElementSet& i, const ElementSet& j) {
  auto f = vote(side, i, j);
  auto b = vote(side, j, i);
  auto wf = vote_weak(side, i, j);
  auto wb = vote_weak(side, j, i);
  if (!f || !b || !wf || !wb) throw InvariantViolation("no feasible pairing between independent sets");
  VoteBundle vb{f->value, b->value, wf->value, wb->value};
  if (!(vb.weak_forward <= vb.forward && vb.forward <= -vb.backward && -vb.backward <= -vb.weak_backward)) {
    throw InvariantViolation("vote chain violated for I=" + sets::to_string(i) + " J=" + sets::to_string(j) +
                             ": " + std::to_string(vb.weak_forward) + " <= " + std::to_string(vb.forward) +
                             " <= " + std::to_string(-vb.backward) + " <= " + std::to_string(-vb.weak_backward));
  }
  return vb;
}

}  // namespace popmat

#endif  // POPMAT_VOTING_HPP_
