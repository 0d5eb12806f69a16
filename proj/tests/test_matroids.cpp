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

#include "oracles.hpp"
#include "popmat/matroid.hpp"

namespace popmat {
namespace {

// K3 with e12 = 0, e13 = 1, e23 = 2.
Matroid triangle() { return graphic_matroid({{0, 1, 2}, {1, 1, 3}, {2, 2, 3}}); }

// K4 on vertices 0..3; elements 0..5 are edges 01, 02, 03, 12, 13, 23.
Matroid k4() {
  return graphic_matroid({{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {3, 1, 2}, {4, 1, 3}, {5, 2, 3}});
}

TEST(Independence, EmptySetIsIndependentEverywhere) {
  for (const Matroid& m : {triangle(), k4(), uniform_matroid({0, 1, 2}, 0), free_matroid({}),
                           partition_matroid({{{0, 1}, 1}})}) {
    EXPECT_TRUE(is_independent(m, ElementSet{}));
  }
}

TEST(Independence, TriangleCycleIsDependent) {
  EXPECT_FALSE(is_independent(triangle(), ElementSet{0, 1, 2}));
  EXPECT_TRUE(is_independent(triangle(), ElementSet{0, 2}));
}

TEST(Independence, PartitionCapacity) {
  Matroid m = partition_matroid({{{0, 1}, 1}, {{2}, 1}});
  EXPECT_FALSE(is_independent(m, ElementSet{0, 1}));
  EXPECT_TRUE(is_independent(m, ElementSet{0, 2}));
}

TEST(Independence, RejectsUnknownAndRepeatedElements) {
  EXPECT_THROW(is_independent(triangle(), ElementSet{7}), InputError);
  EXPECT_THROW(is_independent(triangle(), ElementSet{1, 1}), InputError);
}

TEST(Independence, LaminarNestedCapacities) {
  // {0,1,2,3} cap 2 containing {0,1} cap 1.
  Matroid m = laminar_matroid({0, 1, 2, 3, 4}, {{{0, 1, 2, 3}, 2}, {{0, 1}, 1}});
  EXPECT_FALSE(is_independent(m, ElementSet{0, 1}));
  EXPECT_TRUE(is_independent(m, ElementSet{0, 2, 4}));
  EXPECT_FALSE(is_independent(m, ElementSet{0, 2, 3}));
  EXPECT_THROW(laminar_matroid({0, 1, 2}, {{{0, 1}, 1}, {{1, 2}, 1}}), InputError);
}

TEST(Independence, TransversalNeedsSystemOfRepresentatives) {
  // Elements 0 and 1 both only reach target 0; element 2 reaches 0 or 1.
  Matroid m = transversal_matroid({{0, {0}}, {1, {0}}, {2, {0, 1}}});
  EXPECT_FALSE(is_independent(m, ElementSet{0, 1}));
  EXPECT_TRUE(is_independent(m, ElementSet{0, 2}));
  EXPECT_TRUE(check_axioms(m));
}

TEST(Circuits, FindCircuit) {
  EXPECT_FALSE(find_circuit(triangle(), ElementSet{0, 1}).has_value());
  EXPECT_EQ(find_circuit(triangle(), ElementSet{0, 1, 2}), (ElementSet{0, 1, 2}));
  auto c = find_circuit(uniform_matroid({0, 1, 2}, 1), ElementSet{0, 1, 2});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->size(), 2u);
}

TEST(Circuits, FoundCircuitsAreMinimal) {
  Matroid m = k4();
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    ElementSet x = sets::from_mask(m.ground(), mask);
    auto c = find_circuit(m, x);
    EXPECT_EQ(c.has_value(), !m.independent(x));
    if (!c) continue;
    EXPECT_TRUE(sets::is_subset(*c, x));
    EXPECT_FALSE(m.independent(*c));
    for (Element e : *c) EXPECT_TRUE(m.independent(sets::minus(*c, e)));
  }
}

TEST(Circuits, FundamentalCircuitOfBasePlusElement) {
  Matroid m = k4();
  const ElementSet base{0, 1, 2};  // star at vertex 0
  auto c = find_circuit(m, sets::plus(base, 5));  // 23 closes the triangle 0-2-3
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (ElementSet{1, 2, 5}));
}

TEST(OptimalBase, TriangleGreedy) {
  OrderedMatroid om(triangle(), {0, 1, 2});
  EXPECT_EQ(optimal_base(om, ElementSet{0, 1, 2}), (ElementSet{0, 1}));
  EXPECT_EQ(optimal_base(om, ElementSet{}), ElementSet{});
}

TEST(OptimalBase, PartitionRestricted) {
  // a = 0, b = 1 share a class; c = 2; order a > c > b.
  OrderedMatroid om(partition_matroid({{{0, 1}, 1}, {{2}, 1}}), {0, 2, 1});
  EXPECT_EQ(optimal_base(om, ElementSet{1, 2}), (ElementSet{1, 2}));
}

TEST(OptimalBase, AgreesWithEnumerationAndCharacterisation) {
  Rng rng(11);
  Matroid m = k4();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Element> order{0, 1, 2, 3, 4, 5};
    rng.shuffle(order);
    OrderedMatroid om(m, order);
    ElementSet x = sets::from_mask(m.ground(), rng.below(64));
    ElementSet b = optimal_base(om, x);
    EXPECT_EQ(b, oracle::best_base_by_enumeration(om, x));
    for (Element u : b) {
      for (Element v : sets::difference(x, b)) {
        if (m.independent(sets::exchange(b, u, v))) {
          EXPECT_TRUE(om.prefers(u, v));
        }
      }
    }
  }
}

TEST(Domination, Examples) {
  OrderedMatroid u1(uniform_matroid({0, 1}, 1), {0, 1});
  EXPECT_TRUE(is_dominated(u1, ElementSet{0}, 1));
  EXPECT_FALSE(is_dominated(u1, ElementSet{1}, 0));
  // e12 > e23 > e13
  OrderedMatroid tri(triangle(), {0, 2, 1});
  EXPECT_FALSE(is_dominated(tri, ElementSet{0, 1}, 2));
  EXPECT_THROW(is_dominated(u1, ElementSet{0}, 0), InputError);
}

TEST(Domination, AgreesWithDefinition) {
  Rng rng(5);
  Matroid m = k4();
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Element> order{0, 1, 2, 3, 4, 5};
    rng.shuffle(order);
    OrderedMatroid om(m, order);
    ElementSet i;
    for (Element e : order) {
      if (rng.coin() && m.independent(sets::plus(i, e))) i = sets::plus(i, e);
    }
    for (Element v : sets::difference(m.ground(), i)) {
      EXPECT_EQ(is_dominated(om, i, v), oracle::dominated(om, i, v));
    }
  }
}

TEST(Minors, IdentityMinor) {
  Matroid m = k4();
  Matroid id = derive_minor(m, m.ground(), {});
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    ElementSet x = sets::from_mask(m.ground(), mask);
    EXPECT_EQ(id.independent(x), m.independent(x));
  }
}

TEST(Minors, ContractTriangleEdge) {
  Matroid c = derive_minor(triangle(), {0, 1, 2}, {0});
  EXPECT_EQ(c.ground(), (ElementSet{1, 2}));
  EXPECT_TRUE(c.independent(ElementSet{1}));
  EXPECT_FALSE(c.independent(ElementSet{1, 2}));
  EXPECT_EQ(rank_of(c, c.ground()), 1);
}

TEST(Minors, TruncateFree) {
  Matroid t = truncate(free_matroid({0, 1, 2}), 2);
  EXPECT_FALSE(t.independent(ElementSet{0, 1, 2}));
  EXPECT_TRUE(t.independent(ElementSet{0, 2}));
}

TEST(Minors, DependentContractionRejected) {
  EXPECT_THROW(derive_minor(triangle(), {0, 1, 2}, {0, 1, 2}), InputError);
}

TEST(Minors, ComposesWithDirectDefinition) {
  Matroid m = k4();
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    ElementSet restrict_to = sets::from_mask(m.ground(), rng.below(64));
    ElementSet contract;
    for (Element e : restrict_to) {
      if (rng.coin() && m.independent(sets::plus(contract, e))) contract = sets::plus(contract, e);
    }
    Matroid minor = derive_minor(m, restrict_to, contract);
    const ElementSet& g = minor.ground();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
      ElementSet x = sets::from_mask(g, mask);
      EXPECT_EQ(minor.independent(x), m.independent(sets::unite(x, contract)));
    }
  }
}

TEST(DirectSum, SinglePartIsItself) {
  Matroid m = triangle();
  DirectSum ds = direct_sum({m});
  EXPECT_EQ(ds.structure.size(), 1u);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    ElementSet x = sets::from_mask(m.ground(), mask);
    EXPECT_EQ(ds.matroid.independent(x), m.independent(x));
  }
}

TEST(DirectSum, TwoRankOneUniforms) {
  DirectSum ds = direct_sum({uniform_matroid({0, 1}, 1), uniform_matroid({2, 3}, 1)});
  EXPECT_TRUE(ds.matroid.independent(ElementSet{0, 2}));
  EXPECT_FALSE(ds.matroid.independent(ElementSet{0, 1}));
  EXPECT_EQ(ds.structure.block_of(3), 1);
  EXPECT_THROW(direct_sum({uniform_matroid({0, 1}, 1), uniform_matroid({1, 2}, 1)}), InputError);
}

TEST(DirectSum, MatchesDirectPartition) {
  // A stable-marriage side: agent blocks {0,1,2}, {3,4}, {5,6,7}, capacity 1.
  DirectSum ds = direct_sum({uniform_matroid({0, 1, 2}, 1), uniform_matroid({3, 4}, 1), uniform_matroid({5, 6, 7}, 1)});
  Matroid p = partition_matroid({{{0, 1, 2}, 1}, {{3, 4}, 1}, {{5, 6, 7}, 1}});
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    ElementSet x = sets::from_mask(p.ground(), mask);
    EXPECT_EQ(ds.matroid.independent(x), p.independent(x));
  }
}

TEST(Axioms, ExplicitExamples) {
  EXPECT_TRUE(check_axioms(explicit_matroid({0, 1}, {{}, {0}, {1}})));
  EXPECT_FALSE(check_axioms(explicit_matroid({0, 1}, {{}, {0, 1}})));
  EXPECT_TRUE(check_axioms(k4()));
  EXPECT_THROW(check_axioms(free_matroid({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12})), ScaleError);
}

TEST(Axioms, EveryFamilyPasses) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.between(1, 10);
    ElementSet g;
    for (int e = 0; e < n; ++e) g.push_back(e);
    std::vector<GraphEdge> edges;
    std::vector<TransversalRow> rows;
    for (int e = 0; e < n; ++e) {
      edges.push_back({e, rng.between(0, 4), rng.between(0, 4)});
      rows.push_back({e, {rng.between(0, 3), rng.between(0, 3)}});
    }
    const int cut = rng.between(0, n);
    std::vector<CapacitatedSet> classes{{ElementSet(g.begin(), g.begin() + cut), rng.between(0, 3)},
                                        {ElementSet(g.begin() + cut, g.end()), rng.between(0, 3)}};
    EXPECT_TRUE(check_axioms(uniform_matroid(g, rng.between(0, n))));
    EXPECT_TRUE(check_axioms(partition_matroid(classes)));
    EXPECT_TRUE(check_axioms(laminar_matroid(g, {{g, rng.between(0, n)}, classes[0]})));
    EXPECT_TRUE(check_axioms(graphic_matroid(edges)));
    EXPECT_TRUE(check_axioms(transversal_matroid(rows)));
    EXPECT_TRUE(check_axioms(truncate(graphic_matroid(edges), 2)));
  }
}

TEST(Axioms, StrongCircuitEliminationOnExplicitMatroids) {
  // Explicit copies of small graphic and uniform matroids.
  for (const Matroid& src : {k4(), uniform_matroid({0, 1, 2, 3, 4}, 2), triangle()}) {
    std::vector<ElementSet> family;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << src.size()); ++mask) {
      ElementSet x = sets::from_mask(src.ground(), mask);
      if (src.independent(x)) family.push_back(x);
    }
    Matroid m = explicit_matroid(src.ground(), family);
    EXPECT_TRUE(check_axioms(m));
    EXPECT_TRUE(oracle::strong_circuit_axiom(m));
  }
}

TEST(OrderedMatroid, RejectsNonPermutation) {
  EXPECT_THROW(OrderedMatroid(triangle(), {0, 1}), InputError);
  EXPECT_THROW(OrderedMatroid(triangle(), {0, 1, 1}), InputError);
}

}  // namespace
}  // namespace popmat
