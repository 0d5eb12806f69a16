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
#include "popmat/instance.hpp"
#include "popmat/kernel.hpp"

namespace popmat {
namespace {

// a = m1w1, b = m1w2, c = m2w1, d = m2w2.
KernelInstance marriage() {
  OrderedMatroid men(partition_matroid({{{0, 1}, 1}, {{2, 3}, 1}}), {0, 1, 2, 3});
  OrderedMatroid women(partition_matroid({{{0, 2}, 1}, {{1, 3}, 1}}), {2, 0, 1, 3});
  return KernelInstance(men, women);
}

KernelInstance from_description(const InstanceDescription& d) {
  NamedInstance ni = build_popular_instance(d);
  return KernelInstance(ni.instance.first().om, ni.instance.second().om);
}

TEST(Kernel, EmptyGround) {
  OrderedMatroid m(free_matroid({}), {});
  EXPECT_TRUE(find_kernel(KernelInstance(m, m)).kernel.empty());
}

TEST(Kernel, SingleFreeElement) {
  OrderedMatroid m(free_matroid({0}), {0});
  EXPECT_EQ(find_kernel(KernelInstance(m, m)).kernel, ElementSet{0});
}

TEST(Kernel, StableMarriageEncoding) {
  KernelInstance ki = marriage();
  EXPECT_EQ(find_kernel(ki).kernel, (ElementSet{1, 2}));
  EXPECT_TRUE(is_kernel(ki, {1, 2}).is_kernel);
  KernelCheck bad = is_kernel(ki, {0, 3});
  EXPECT_FALSE(bad.is_kernel);
  EXPECT_EQ(bad.blockers, ElementSet{2});
  EXPECT_FALSE(is_kernel(ki, {}).is_kernel);
  EXPECT_EQ(oracle::all_kernels(ki), (std::vector<ElementSet>{{1, 2}}));
}

TEST(Kernel, RejectsLoopsAndMismatchedGrounds) {
  OrderedMatroid loop(uniform_matroid({0}, 0), {0});
  OrderedMatroid fine(free_matroid({0}), {0});
  EXPECT_THROW(KernelInstance(loop, fine), InputError);
  EXPECT_THROW(KernelInstance(fine, OrderedMatroid(free_matroid({1}), {1})), InputError);
}

TEST(Kernel, TraceRejectionsAreDisjointAndBounded) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    KernelInstance ki = from_description(generate_random_instance(static_cast<RandomFamily>(seed % 3), 8, seed));
    KernelResult r = find_kernel(ki);
    EXPECT_LE(r.trace.rounds.size(), std::max<std::size_t>(1, ki.ground().size()));
    ElementSet seen;
    for (const auto& round : r.trace.rounds) {
      EXPECT_TRUE(sets::intersect(seen, round.rejected).empty());
      seen = sets::unite(seen, round.rejected);
    }
    EXPECT_TRUE(r.trace.rounds.back().rejected.empty());
  }
}

TEST(Kernel, EqualSizeLawAndMembership) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    KernelInstance ki = from_description(generate_random_instance(static_cast<RandomFamily>(seed % 3), 7, seed + 100));
    const auto kernels = oracle::all_kernels(ki);
    ASSERT_FALSE(kernels.empty());
    for (const auto& k : kernels) EXPECT_EQ(k.size(), kernels.front().size());
    const ElementSet out = find_kernel(ki).kernel;
    EXPECT_NE(std::find(kernels.begin(), kernels.end(), out), kernels.end());
  }
}

TEST(Kernel, UnitCapacityMatchesDeferredAcceptance) {
  GeneratorOptions unit;
  unit.max_capacity = 1;
  unit.split_classes = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    NamedInstance ni = build_popular_instance(generate_random_instance(RandomFamily::kPartition, 8, seed, unit));
    KernelInstance ki(ni.instance.first().om, ni.instance.second().om);
    EXPECT_EQ(find_kernel(ki).kernel, oracle::deferred_acceptance(ni.instance.first(), ni.instance.second()));
  }
}

}  // namespace
}  // namespace popmat
