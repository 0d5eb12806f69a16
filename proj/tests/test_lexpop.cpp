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

#include "popmat/lexpop.hpp"
#include "popmat/trials.hpp"

namespace popmat {
namespace {

BMatchingInstance single_edge() {
  return build_bmatching({{"u", AgentSide::kU, 1, {"w"}}, {"w", AgentSide::kW, 1, {"u"}}});
}

std::vector<BMatching> all_b_matchings(const BMatchingInstance& inst) {
  std::vector<BMatching> out;
  enumerate_b_matchings(inst, std::uint64_t{1} << 20, [&](const detail::Membership& m) {
    out.push_back(detail::from_membership(m));
    return true;
  });
  return out;
}

BMatching with_edges(BMatching mu, const BMatching& extra) {
  mu.insert(mu.end(), extra.begin(), extra.end());
  std::sort(mu.begin(), mu.end());
  return mu;
}

TEST(LexVote, IdenticalMatchingsTie) {
  BMatchingInstance inst = build_gadget(2, true);
  BMatching mu = gadget_popular(inst);
  for (std::size_t v = 0; v < inst.agent_count(); ++v) EXPECT_EQ(lex_vote_agent(inst, mu, mu, static_cast<int>(v)), 0);
  EXPECT_EQ(lex_vote_total(inst, mu, mu), 0);
}

TEST(LexVote, GadgetVotes) {
  BMatchingInstance inst = build_gadget(1, false);
  BMatching mu = gadget_forced_candidate(inst);
  BMatching better = gadget_dominator(inst);
  for (const char* improver : {"u1", "u2", "u3", "u4"}) {
    EXPECT_EQ(lex_vote_agent(inst, mu, better, inst.agent_id(improver)), -1) << improver;
  }
  for (const char* loser : {"v1", "v2"}) EXPECT_EQ(lex_vote_agent(inst, mu, better, inst.agent_id(loser)), 1);
  EXPECT_EQ(lex_vote_agent(inst, mu, better, inst.agent_id("x")), 0);
  EXPECT_EQ(lex_vote_total(inst, mu, better), -2);
}

TEST(LexVote, AntisymmetryAndZeroLaw) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    BMatchingInstance inst = random_bmatching(rng, 3, 3, 2);
    auto all = all_b_matchings(inst);
    for (int k = 0; k < 20; ++k) {
      const BMatching& a = all[rng.below(all.size())];
      const BMatching& b = all[rng.below(all.size())];
      EXPECT_EQ(lex_vote_total(inst, a, b), -lex_vote_total(inst, b, a));
      for (std::size_t v = 0; v < inst.agent_count(); ++v) {
        const auto& prefs = inst.agents()[v].prefs;
        bool same = true;
        for (int e : prefs) {
          same = same && (std::binary_search(a.begin(), a.end(), e) == std::binary_search(b.begin(), b.end(), e));
        }
        EXPECT_EQ(lex_vote_agent(inst, a, b, static_cast<int>(v)) == 0, same);
      }
    }
  }
}

TEST(LexVote, RejectsNonMatchings) {
  BMatchingInstance inst = build_gadget(1, false);
  BMatching over = make_bmatching(inst, {{"u1", "v1"}, {"u1", "v2"}});
  EXPECT_FALSE(is_b_matching(inst, over));
  EXPECT_THROW(lex_vote_total(inst, over, {}), InputError);
}

TEST(Gadget, Shape) {
  BMatchingInstance plain = build_gadget(1, false);
  EXPECT_EQ(plain.agent_count(), 7u);
  EXPECT_EQ(plain.edge_count(), 10u);
  for (const char* name : {"u2", "u3", "v1", "v2"}) EXPECT_EQ(plain.agent(plain.agent_id(name)).capacity, 2);
  for (const char* name : {"u1", "u4"}) EXPECT_EQ(plain.agent(plain.agent_id(name)).capacity, 1);
  std::vector<std::string> v1;
  const int v1_id = plain.agent_id("v1");
  for (int e : plain.agent(v1_id).prefs) v1.push_back(plain.agent(plain.other_end(e, v1_id)).name);
  EXPECT_EQ(v1, (std::vector<std::string>{"u3", "u4", "u1", "x", "u2"}));

  BMatchingInstance dummies = build_gadget(2, true);
  EXPECT_EQ(dummies.agent_count(), 9u);
  const int x = dummies.agent_id("x");
  const auto& xp = dummies.agent(x).prefs;
  EXPECT_EQ(dummies.agent(dummies.other_end(xp[0], x)).name, "d1");
  EXPECT_EQ(dummies.agent(dummies.other_end(xp[1], x)).name, "d2");
  EXPECT_THROW(build_gadget(0, false), InputError);
}

TEST(Domination, ForcedCandidateBeatenByDominator) {
  BMatchingInstance inst = build_gadget(1, false);
  DominationOptions opt;
  opt.strongest = true;
  DominationSearch s = find_lex_dominating(inst, gadget_forced_candidate(inst), opt);
  ASSERT_EQ(s.status, DominationStatus::kFound);
  EXPECT_EQ(*s.witness, gadget_dominator(inst));
  EXPECT_LT(lex_vote_total(inst, gadget_forced_candidate(inst), *s.witness), 0);
}

TEST(Domination, SingleEdgeIsPopular) {
  BMatchingInstance inst = single_edge();
  DominationSearch s = find_lex_dominating(inst, {0});
  EXPECT_EQ(s.status, DominationStatus::kNoneCertified);
  EXPECT_TRUE(s.exhaustive);
  EXPECT_EQ(is_lex_popular(inst, {0}).status, LexPopularity::kPopular);
  EXPECT_EQ(is_lex_popular(inst, {}).status, LexPopularity::kDominated);
}

TEST(Domination, NoPopularMatchingWithoutDummies) {
  BMatchingInstance inst = build_gadget(1, false);
  for (const BMatching& mu : all_b_matchings(inst)) {
    LexVerdict v = is_lex_popular(inst, mu);
    ASSERT_EQ(v.status, LexPopularity::kDominated);
    EXPECT_LT(lex_vote_total(inst, mu, *v.witness), 0);
  }
}

TEST(Domination, DummiesMakeGadgetMatchingPopular) {
  BMatchingInstance inst = build_gadget(1, true);
  EXPECT_EQ(is_lex_popular(inst, gadget_popular(inst)).status, LexPopularity::kPopular);
}

TEST(Domination, BudgetExhaustionIsReportedAsIncomplete) {
  BMatchingInstance inst = build_gadget(2, true);
  DominationOptions opt;
  opt.budget = 5;
  opt.local_search_steps = 2000;
  DominationSearch s = find_lex_dominating(inst, gadget_popular(inst), opt);
  EXPECT_EQ(s.status, DominationStatus::kIncomplete);
  EXPECT_FALSE(s.exhaustive);
}

TEST(Domination, LocalSearchFindsEasyWitness) {
  BMatchingInstance inst = build_gadget(1, false);
  DominationOptions opt;
  opt.budget = 1;
  DominationSearch s = find_lex_dominating(inst, BMatching{}, opt);
  ASSERT_EQ(s.status, DominationStatus::kFound);
  EXPECT_LT(lex_vote_total(inst, {}, *s.witness), 0);
}

X3CInstance triple_cover() { return X3CInstance{1, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}}; }

TEST(X3C, Validation) {
  EXPECT_THROW(validate_x3c(X3CInstance{1, {{1, 2, 3}, {1, 2, 3}}}), InputError);
  EXPECT_THROW(validate_x3c(X3CInstance{1, {{1, 2, 2}, {1, 2, 3}, {1, 2, 3}}}), InputError);
  EXPECT_THROW(validate_x3c(X3CInstance{1, {{1, 2, 3}, {1, 2, 3}, {1, 2, 4}}}), InputError);
  EXPECT_NO_THROW(validate_x3c(triple_cover()));
}

TEST(X3C, StructureForOneBlock) {
  X3CReduction red = build_x3c_reduction(triple_cover());
  const BMatchingInstance& inst = red.instance;
  EXPECT_EQ(inst.agent_count(), 82u);
  EXPECT_EQ(inst.max_capacity(), 3);
  EXPECT_EQ(inst.agent(inst.agent_id("t")).capacity, 3);
  auto names = [&](const std::string& a) {
    std::vector<std::string> out;
    const int id = inst.agent_id(a);
    for (int e : inst.agent(id).prefs) out.push_back(inst.agent(inst.other_end(e, id)).name);
    return out;
  };
  EXPECT_EQ(names("d1"), (std::vector<std::string>{"a2", "s1_1", "s1_2", "c1"}));
  EXPECT_EQ(names("d3"), (std::vector<std::string>{"a1", "s3_1", "s3_2", "c3"}));
  EXPECT_EQ(names("a1"), (std::vector<std::string>{"b1", "G1a.x", "G2a.x", "G3a.x", "d3"}));
  EXPECT_EQ(names("b2"), (std::vector<std::string>{"c2", "G1b.x", "G2b.x", "G3b.x", "a2"}));
  EXPECT_EQ(names("c3"), (std::vector<std::string>{"d3", "G1c.x", "G2c.x", "G3c.x", "b3"}));
  EXPECT_EQ(names("s2_1"), (std::vector<std::string>{"d2", "t"}));
  EXPECT_EQ(names("t"), (std::vector<std::string>{"s1_1", "s1_2", "s2_1", "s2_2", "s3_1", "s3_2"}));
  EXPECT_EQ(names("G2b.x"), (std::vector<std::string>{"b1", "b2", "b3", "G2b.v1", "G2b.v2"}));
  EXPECT_EQ(names("G1a.v2"), (std::vector<std::string>{"G1a.u2", "G1a.u1", "G1a.x", "G1a.u4", "G1a.u3"}));
}

TEST(X3C, CandidateStructure) {
  X3CReduction red = build_x3c_reduction(triple_cover());
  const BMatchingInstance& inst = red.instance;
  const BMatching& mu = red.candidate;
  ASSERT_TRUE(is_b_matching(inst, mu));
  auto has = [&](const std::string& a, const std::string& b) {
    return std::binary_search(mu.begin(), mu.end(), inst.edge_id(a, b));
  };
  for (int j = 1; j <= 3; ++j) {
    for (char l : {'a', 'b', 'c'}) {
      const std::string g = "G" + std::to_string(j) + l + ".";
      EXPECT_TRUE(has(g + "u1", g + "v1"));
      EXPECT_TRUE(has(g + "u2", g + "v2"));
      EXPECT_TRUE(has(g + "u3", g + "v1"));
      EXPECT_TRUE(has(g + "u4", g + "v2"));
      EXPECT_FALSE(has(g + "x", g + "v1"));
    }
  }
  for (int i = 1; i <= 3; ++i) {
    EXPECT_TRUE(has("d" + std::to_string(i), "s" + std::to_string(i) + "_1"));
    EXPECT_TRUE(has("d" + std::to_string(i), "s" + std::to_string(i) + "_2"));
  }
  for (int e : inst.agent(inst.agent_id("t")).prefs) EXPECT_FALSE(std::binary_search(mu.begin(), mu.end(), e));
}

TEST(X3C, CoverWitnessWinsByOne) {
  X3CReduction red = build_x3c_reduction(triple_cover());
  for (int set : {1, 2, 3}) {
    BMatching w = x3c_domination_witness(red, {set});
    EXPECT_TRUE(is_b_matching(red.instance, w));
    EXPECT_EQ(lex_vote_total(red.instance, red.candidate, w), -1);
    int s_votes = 0;
    for (int i = 1; i <= 3; ++i) {
      for (int l = 1; l <= 2; ++l) {
        const int s = red.instance.agent_id("s" + std::to_string(i) + "_" + std::to_string(l));
        s_votes += lex_vote_agent(red.instance, red.candidate, w, s);
      }
    }
    EXPECT_EQ(s_votes, 6);
  }
  EXPECT_THROW(x3c_domination_witness(red, {1, 2}), InputError);
  EXPECT_THROW(x3c_domination_witness(red, {}), InputError);
}

TEST(X3C, LargerInstance) {
  // n = 2: elements 1..6, sets chosen so that {1,2,3}, {4,5,6} is a cover.
  X3CInstance x{2, {{1, 2, 3}, {4, 5, 6}, {1, 4, 5}, {2, 3, 6}, {1, 2, 6}, {3, 4, 5}}};
  X3CReduction red = build_x3c_reduction(x);
  EXPECT_EQ(red.instance.agent_count(), 36u + 18u * 7u + 1u);
  BMatching w = x3c_domination_witness(red, {1, 2});
  EXPECT_EQ(lex_vote_total(red.instance, red.candidate, w), -1);
}

TEST(Equalize, UniformInstanceUnchanged) {
  BMatchingInstance inst = single_edge();
  EqualizedInstance eq = equalize_capacities(inst);
  EXPECT_TRUE(eq.fixed.empty());
  EXPECT_EQ(eq.instance.agent_count(), inst.agent_count());
  EXPECT_EQ(eq.instance.edge_count(), inst.edge_count());
}

TEST(Equalize, GadgetDummyCount) {
  BMatchingInstance inst = build_gadget(3, false);
  EqualizedInstance eq = equalize_capacities(inst);
  int expect = 0;
  for (const auto& a : inst.agents()) expect += 3 - a.capacity;
  EXPECT_EQ(static_cast<int>(eq.fixed.size()), expect);
  for (const auto& a : eq.instance.agents()) EXPECT_EQ(a.capacity, 3);
  for (std::size_t e = 0; e < inst.edge_count(); ++e) {
    EXPECT_EQ(eq.instance.edge(static_cast<int>(e)).u, inst.edge(static_cast<int>(e)).u);
    EXPECT_EQ(eq.instance.edge(static_cast<int>(e)).w, inst.edge(static_cast<int>(e)).w);
  }
  // Dummies are ranked first.
  const int u1 = eq.instance.agent_id("u1");
  EXPECT_TRUE(std::binary_search(eq.fixed.begin(), eq.fixed.end(), eq.instance.agent(u1).prefs[0]));
}

TEST(Equalize, PopularityRoundTrip) {
  Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    BMatchingInstance inst = random_bmatching(rng, 2, 3, 2);
    EqualizedInstance eq = equalize_capacities(inst);
    auto popular = all_lex_popular(inst);
    for (const BMatching& mu : all_b_matchings(inst)) {
      const bool before = std::find(popular.begin(), popular.end(), mu) != popular.end();
      const LexVerdict after = is_lex_popular(eq.instance, with_edges(mu, eq.fixed));
      ASSERT_NE(after.status, LexPopularity::kIncomplete);
      EXPECT_EQ(before, after.status == LexPopularity::kPopular);
    }
  }
}

}  // namespace
}  // namespace popmat
