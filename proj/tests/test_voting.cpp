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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "popmat/trials.hpp"
#include "popmat/voting.hpp"

namespace popmat {
namespace {

// a = 0, b = 1, a preferred.
Side rank_one_pair() { return single_agent_side(uniform_matroid({0, 1}, 1), {0, 1}); }

// K4 on vertices 0..3; elements 0..5 are edges 01, 02, 03, 12, 13, 23.
Matroid k4() {
  return graphic_matroid({{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {3, 1, 2}, {4, 1, 3}, {5, 2, 3}});
}

TEST(Feasibility, EqualSetsAreVacuous) {
  Side s = single_agent_side(k4(), {0, 1, 2, 3, 4, 5});
  for (PairingMode mode : {PairingMode::kFeasible, PairingMode::kWeaklyFeasible}) {
    EXPECT_TRUE(is_feasible_pairing(s, {0, 1}, {0, 1}, {}, mode).feasible);
  }
}

TEST(Feasibility, RankOneEmptyPairingFails) {
  auto rep = is_feasible_pairing(rank_one_pair(), {0}, {1}, {}, PairingMode::kFeasible);
  EXPECT_FALSE(rep.feasible);
  // b cannot be added to {a} and a cannot be added to {b}; one pair is due.
  EXPECT_EQ(rep.violated, (std::vector<int>{2, 3, 5}));
  EXPECT_TRUE(is_feasible_pairing(rank_one_pair(), {0}, {1}, {{0, 1}}, PairingMode::kFeasible).feasible);
}

TEST(Feasibility, RejectsMalformedPairings) {
  EXPECT_THROW(is_feasible_pairing(rank_one_pair(), {0}, {1}, {{1, 0}}, PairingMode::kFeasible), InputError);
  Side two = single_agent_side(free_matroid({0, 1, 2}), {0, 1, 2});
  EXPECT_THROW(is_feasible_pairing(two, {0}, {1, 2}, {{0, 1}, {0, 2}}, PairingMode::kWeaklyFeasible), InputError);
}

TEST(Feasibility, CrossSummandPairViolatesFour) {
  Side s = make_side({uniform_matroid({0, 1}, 1), uniform_matroid({2, 3}, 1)}, {0, 1, 2, 3});
  auto rep = is_feasible_pairing(s, {0}, {2}, {{0, 2}}, PairingMode::kFeasible);
  EXPECT_FALSE(rep.feasible);
  EXPECT_NE(std::find(rep.violated.begin(), rep.violated.end(), 4), rep.violated.end());
  EXPECT_TRUE(is_feasible_pairing(s, {0}, {2}, {{0, 2}}, PairingMode::kWeaklyFeasible).feasible);
}

TEST(VoteOfPairing, Formula) {
  Side s = rank_one_pair();
  EXPECT_EQ(vote_of_pairing(s.om, {0}, {0}, {}), 0);
  EXPECT_EQ(vote_of_pairing(s.om, {0}, {1}, {{0, 1}}), 1);
  EXPECT_EQ(vote_of_pairing(s.om, {0}, {}, {}), 1);
}

TEST(Vote, RankOnePair) {
  Side s = rank_one_pair();
  EXPECT_EQ(vote(s, {0}, {1})->value, 1);
  EXPECT_EQ(vote(s, {1}, {0})->value, -1);
  EXPECT_EQ(vote_bruteforce(s, {0}, {1}, PairingMode::kFeasible)->value, 1);
  for (PairingMode mode : {PairingMode::kFeasible, PairingMode::kWeaklyFeasible}) {
    auto r = vote_in_mode(s, {0}, {0}, mode);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->value, 0);
    EXPECT_TRUE(r->witness.empty());
    EXPECT_EQ(vote_bruteforce(s, {0}, {0}, mode)->value, 0);
  }
}

TEST(Vote, WeakVoteCanCrossSummands) {
  // Two agents; I = {a} in agent 1, J = {c} in agent 2. Both additions are
  // possible so the empty pairing is weakly feasible, but feasibility also
  // allows it; the weak vote can additionally pair a with c.
  Side s = make_side({uniform_matroid({0, 1}, 1), uniform_matroid({2, 3}, 1)}, {2, 0, 1, 3});
  auto f = vote(s, {0}, {2});
  auto w = vote_weak(s, {0}, {2});
  ASSERT_TRUE(f && w);
  EXPECT_EQ(f->value, 0);
  EXPECT_EQ(w->value, -1);
  EXPECT_EQ(w->witness, (Pairing{{0, 2}}));
}

TEST(Vote, MatchesBruteForceOnRandomSides) {
  Rng rng(404);
  for (int trial = 0; trial < 150; ++trial) {
    const auto family = static_cast<RandomFamily>(trial % 3);
    Side side = random_side(family, rng.between(1, 10), rng.next());
    ElementSet i = random_independent(rng, side);
    ElementSet j = random_independent(rng, side);
    for (PairingMode mode : {PairingMode::kFeasible, PairingMode::kWeaklyFeasible}) {
      auto fast = vote_in_mode(side, i, j, mode);
      auto slow = vote_bruteforce(side, i, j, mode);
      ASSERT_TRUE(fast && slow);
      EXPECT_EQ(fast->value, slow->value) << family_name(family) << " I=" << sets::to_string(i)
                                          << " J=" << sets::to_string(j) << " mode=" << mode_name(mode);
    }
  }
}

TEST(Vote, ExchangeInequalityOnK4Splits) {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Element> order{0, 1, 2, 3, 4, 5};
    rng.shuffle(order);
    Side s = single_agent_side(k4(), order);
    ElementSet i = random_independent(rng, s);
    ElementSet j = random_independent(rng, s);
    auto rep = check_exchange_inequality(s, i, j);
    EXPECT_TRUE(rep.holds);
    EXPECT_NO_THROW(vote_bundle(s, i, j));
  }
}

TEST(Vote, BruteForceRefusesLargeDifferences) {
  ElementSet g;
  for (int e = 0; e < 14; ++e) g.push_back(e);
  Side s = single_agent_side(free_matroid(g), std::vector<Element>(g.begin(), g.end()));
  EXPECT_THROW(vote_bruteforce(s, ElementSet(g.begin(), g.begin() + 7), ElementSet(g.begin() + 7, g.end()),
                               PairingMode::kFeasible),
               ScaleError);
}

TEST(Reduction, EqualSetsGiveEmptyMatroid) {
  Side s = single_agent_side(k4(), {0, 1, 2, 3, 4, 5});
  ReducedPair rp = reduce_to_disjoint_bases(s, {0, 3}, {0, 3});
  EXPECT_TRUE(rp.reduced.ground().empty());
  EXPECT_TRUE(rp.i_prime.empty());
  ExchangeGraphs eg = exchange_graphs(rp);
  EXPECT_EQ(eg.from_left.left_count(), 0);
  EXPECT_TRUE(dual_filter_witness(rp).matching.empty());
}

TEST(Reduction, DisjointBasesCollapse) {
  Side s = single_agent_side(k4(), {0, 1, 2, 3, 4, 5});
  const ElementSet a{0, 3, 5}, b{1, 2, 4};
  ReducedPair rp = reduce_to_disjoint_bases(s, a, b);
  EXPECT_EQ(rp.i_prime, a);
  EXPECT_EQ(rp.j_prime, b);
  for (const auto& aug : rp.augmentation) EXPECT_TRUE(aug.empty());
  EXPECT_EQ(rp.reduced.ground(), sets::unite(a, b));
}

TEST(Reduction, TreeAgainstPartialForest) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Element> order{0, 1, 2, 3, 4, 5};
    rng.shuffle(order);
    Side s = single_agent_side(k4(), order);
    ElementSet tree = optimal_base(s.om, s.ground());
    ElementSet forest = random_independent(rng, s);
    ReducedPair rp = reduce_to_disjoint_bases(s, tree, forest);
    const Matroid& m = rp.reduced.om.matroid();
    EXPECT_TRUE(is_base(m, rp.i_prime));
    EXPECT_TRUE(is_base(m, rp.j_prime));
    EXPECT_TRUE(sets::intersect(rp.i_prime, rp.j_prime).empty());
    const std::size_t expect = std::min(sets::difference(tree, forest).size(), sets::difference(forest, tree).size());
    EXPECT_EQ(rp.i_prime.size(), expect);
  }
}

TEST(ExchangeGraphs, RankOnePair) {
  ReducedPair rp = reduce_to_disjoint_bases(rank_one_pair(), {0}, {1});
  ExchangeGraphs eg = exchange_graphs(rp);
  EXPECT_EQ(eg.from_left.edges().size(), 1u);
  EXPECT_EQ(eg.from_right.edges().size(), 1u);
  EXPECT_EQ(dual_filter_witness(rp).matching, (Pairing{{0, 1}}));
}

TEST(ExchangeGraphs, K4SpanningTrees) {
  const ElementSet a{0, 3, 5}, b{1, 2, 4};
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Element> order{0, 1, 2, 3, 4, 5};
    rng.shuffle(order);
    OrderedMatroid om(k4(), order);
    ExchangeGraphs eg = build_exchange_graphs(om, a, b);
    for (const auto& e : eg.from_left.edges()) {
      EXPECT_TRUE(om.independent(sets::exchange(a, a[static_cast<std::size_t>(e.left)], b[static_cast<std::size_t>(e.right)])));
    }
    auto hi = oracle::perfect_matching_range(eg.from_left);
    auto lo = oracle::perfect_matching_range(eg.from_right);
    ASSERT_TRUE(hi && lo);
    MaxMinReport rep = check_max_min(om, a, b);
    EXPECT_EQ(rep.max_from_left, hi->max);
    EXPECT_EQ(rep.min_from_right, lo->min);
    EXPECT_TRUE(rep.holds);
    auto ex = check_exchange_inequality(single_agent_side(k4(), order), a, b);
    EXPECT_TRUE(ex.holds);
    ASSERT_TRUE(ex.max_min.has_value());
  }
}

TEST(ExchangeGraphs, EveryPerfectMatchingOfLeftGraphIsFeasible) {
  Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    Side side = random_side(static_cast<RandomFamily>(trial % 3), rng.between(2, 8), rng.next());
    ElementSet i = random_independent(rng, side);
    ElementSet j = random_independent(rng, side);
    ReducedPair rp = reduce_to_disjoint_bases(side, i, j);
    ExchangeGraphs eg = exchange_graphs(rp);
    const int n = eg.from_left.left_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      MatchedPairs m;
      bool ok = true;
      for (int l = 0; l < n && ok; ++l) {
        ok = eg.from_left.weight(l, perm[static_cast<std::size_t>(l)]).has_value();
        m.push_back({l, perm[static_cast<std::size_t>(l)]});
      }
      if (!ok) continue;
      EXPECT_TRUE(is_feasible_pairing(rp.reduced, rp.i_prime, rp.j_prime, eg.to_pairing(m), PairingMode::kFeasible).feasible);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(DualFilter, WitnessOnRandomPairs) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Side side = random_side(static_cast<RandomFamily>(trial % 3), rng.between(1, 10), rng.next());
    ReducedPair rp = reduce_to_disjoint_bases(side, random_independent(rng, side), random_independent(rng, side));
    DualFilterWitness w = dual_filter_witness(rp);
    EXPECT_EQ(w.matching.size(), rp.i_prime.size());
    const auto& pi = w.best_from_left.dual;
    for (const auto& e : w.filtered.edges()) {
      EXPECT_GE(pi.left[static_cast<std::size_t>(e.left)] + pi.right[static_cast<std::size_t>(e.right)], e.weight);
    }
  }
}

TEST(PropertyHarness, RunIsCleanAndDeterministic) {
  const std::vector<RandomFamily> all{RandomFamily::kPartition, RandomFamily::kGraphic, RandomFamily::kExplicit};
  PropertyRun a = check_theorems(30, 7, all);
  PropertyRun b = check_theorems(30, 7, all, 3);
  EXPECT_TRUE(a.all_hold());
  EXPECT_EQ(a.exchange_holds, b.exchange_holds);
  EXPECT_EQ(a.failures, b.failures);
}

}  // namespace
}  // namespace popmat
