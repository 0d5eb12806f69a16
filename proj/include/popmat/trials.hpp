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

// Randomised property trials for the exchange and vote results. Shared by
// the command line tool and the acceptance suite.

#ifndef POPMAT_TRIALS_HPP_
#define POPMAT_TRIALS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "popmat/common.hpp"
#include "popmat/instance.hpp"
#include "popmat/lexpop.hpp"
#include "popmat/matroid.hpp"
#include "popmat/voting.hpp"

namespace popmat {

// Independent seed for trial `t` of a run seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) {
  Rng mix(seed * 0x100000001b3ULL + t);
  return mix.next();
}

// Grows a random independent set by scanning the ground set in random
// order, stopping at a random target size.
inline ElementSet random_independent(Rng& rng, const Side& side) {
  std::vector<Element> order(side.ground().begin(), side.ground().end());
  rng.shuffle(order);
  const auto target = static_cast<std::size_t>(rng.below(order.size() + 1));
  ElementSet cur;
  for (Element e : order) {
    if (cur.size() == target) break;
    ElementSet next = sets::plus(cur, e);
    if (side.independent(next)) cur = std::move(next);
  }
  return cur;
}

// A random side of `family` with a random summand split, over `size`
// elements.
inline Side random_side(RandomFamily family, int size, std::uint64_t seed) {
  Rng rng(seed);
  NamedInstance ni = build_popular_instance(generate_random_instance(family, size, seed));
  return ni.instance.side(rng.coin() ? 1 : 2);
}

struct VoteTrial {
  ElementSet i;
  ElementSet j;
  VoteBundle bundle;
  bool exchange_holds = false;   // vote(I,J) + vote(J,I) <= 0
  bool matches_bruteforce = false;
  bool dual_filter_holds = false;      // dual-filtered exchange graph has a perfect matching
  std::string failure;
};

// One trial: random I, J on `side`; computes all four votes (vote chain
// enforced by vote_bundle), cross-checks the exact votes against
// enumeration and builds the dual-filter witness on the reduced pair.
inline VoteTrial run_vote_trial(const Side& side, Rng& rng) {
  VoteTrial t;
  t.i = random_independent(rng, side);
  t.j = random_independent(rng, side);
  try {
    t.bundle = vote_bundle(side, t.i, t.j);
    t.exchange_holds = t.bundle.forward + t.bundle.backward <= 0;
    t.matches_bruteforce = true;
    const std::pair<const ElementSet*, const ElementSet*> dirs[2] = {{&t.i, &t.j}, {&t.j, &t.i}};
    const int exact[2][2] = {{t.bundle.forward, t.bundle.weak_forward}, {t.bundle.backward, t.bundle.weak_backward}};
    for (int d = 0; d < 2; ++d) {
      auto f = vote_bruteforce(side, *dirs[d].first, *dirs[d].second, PairingMode::kFeasible);
      auto w = vote_bruteforce(side, *dirs[d].first, *dirs[d].second, PairingMode::kWeaklyFeasible);
      if (!f || !w || f->value != exact[d][0] || w->value != exact[d][1]) t.matches_bruteforce = false;
    }
    if (!t.matches_bruteforce) t.failure = "exact vote differs from enumeration";
    if (!t.exchange_holds) t.failure = "vote(I,J) + vote(J,I) > 0";
    ReducedPair rp = reduce_to_disjoint_bases(side, t.i, t.j);
    dual_filter_witness(rp);
    t.dual_filter_holds = true;
  } catch (const InvariantViolation& e) {
    t.failure = e.what();
  }
  return t;
}

// Random ordered matroid on at most 12 elements with two disjoint bases,
// plus such a pair of bases.
struct DisjointBases {
  OrderedMatroid om;
  ElementSet a;
  ElementSet b;
};

namespace detail {

inline std::optional<ElementSet> random_base_within(Rng& rng, const Matroid& m, const ElementSet& pool, int rank) {
  std::vector<Element> order(pool.begin(), pool.end());
  rng.shuffle(order);
  ElementSet cur;
  for (Element e : order) {
    ElementSet next = sets::plus(cur, e);
    if (m.independent(next)) cur = std::move(next);
  }
  if (static_cast<int>(cur.size()) != rank) return std::nullopt;
  return cur;
}

inline Matroid random_graphic_with_two_trees(Rng& rng) {
  // Two random spanning trees on v vertices plus a few extra edges.
  const int v = rng.between(2, 6);
  std::vector<GraphEdge> edges;
  Element next = 0;
  for (int tree = 0; tree < 2; ++tree) {
    for (int x = 1; x < v; ++x) edges.push_back({next++, x, rng.between(0, x - 1)});
  }
  const int extra = rng.between(0, std::max(0, 12 - next));
  for (int k = 0; k < extra && next < 12; ++k) {
    const int t = rng.between(0, v - 1);
    int h = rng.between(0, v - 2);
    if (h >= t) ++h;
    edges.push_back({next++, t, h});
  }
  return graphic_matroid(edges);
}

inline Matroid random_sparse_paving(Rng& rng) {
  const int r = rng.between(1, 5);
  const int n = rng.between(2 * r, std::min(12, 2 * r + 2));
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back(std::to_string(k));
  const Json d = random_explicit_descriptor(rng, names);
  NameIndex local;
  ElementSet ground;
  for (int k = 0; k < n; ++k) {
    local[names[static_cast<std::size_t>(k)]] = k;
    ground.push_back(k);
  }
  return build_matroid(d, ground, local, "generated");
}

}  // namespace detail

inline DisjointBases random_disjoint_bases(Rng& rng, bool graphic) {
  for (;;) {
    Matroid m = graphic ? detail::random_graphic_with_two_trees(rng) : detail::random_sparse_paving(rng);
    const int r = rank_of(m, m.ground());
    std::vector<Element> order(m.ground().begin(), m.ground().end());
    rng.shuffle(order);
    for (int attempt = 0; attempt < 8; ++attempt) {
      auto a = detail::random_base_within(rng, m, m.ground(), r);
      if (!a) continue;
      auto b = detail::random_base_within(rng, m, sets::difference(m.ground(), *a), r);
      if (b) return {OrderedMatroid(m, order), *a, *b};
    }
  }
}

// Small random b-matching instance: `u_count` x `w_count` agents, each
// possible edge present with probability 1/2, capacities in
// 1..max_capacity, random preference lists.
inline BMatchingInstance random_bmatching(Rng& rng, int u_count, int w_count, int max_capacity) {
  BMatchingInstance inst;
  for (int k = 1; k <= u_count; ++k) inst.add_agent("u" + std::to_string(k), AgentSide::kU, rng.between(1, max_capacity));
  for (int k = 1; k <= w_count; ++k) inst.add_agent("w" + std::to_string(k), AgentSide::kW, rng.between(1, max_capacity));
  for (int u = 0; u < u_count; ++u) {
    for (int w = 0; w < w_count; ++w) {
      if (rng.coin()) inst.add_edge(u, u_count + w);
    }
  }
  std::vector<std::vector<int>> incident(inst.agent_count());
  for (std::size_t e = 0; e < inst.edge_count(); ++e) {
    incident[static_cast<std::size_t>(inst.edge(static_cast<int>(e)).u)].push_back(static_cast<int>(e));
    incident[static_cast<std::size_t>(inst.edge(static_cast<int>(e)).w)].push_back(static_cast<int>(e));
  }
  for (std::size_t a = 0; a < inst.agent_count(); ++a) {
    rng.shuffle(incident[a]);
    inst.set_preferences(static_cast<int>(a), incident[a]);
  }
  inst.validate();
  return inst;
}

// Aggregate of a `check-theorems` run.
struct PropertyRun {
  int trials = 0;
  int exchange_holds = 0;      // vote(I,J) + vote(J,I) <= 0
  int bruteforce_agrees = 0;   // exact votes equal enumeration
  int dual_filter_holds = 0;        // filtered exchange graph perfect
  int max_min_holds = 0;       // disjoint-bases max-min inequality
  int chain_checks = 0;        // vote chains asserted
  std::vector<std::string> failures;  // "trial t: message", in trial order

  bool all_hold() const {
    return exchange_holds == trials && bruteforce_agrees == trials && dual_filter_holds == trials &&
           max_min_holds == trials && failures.empty();
  }
};

struct TrialOutcome {
  bool exchange = false;
  bool bruteforce = false;
  bool dual_filter = false;
  bool max_min = false;
  std::string failure;
};

inline TrialOutcome run_theorem_trial(const std::vector<RandomFamily>& families, std::uint64_t seed, std::uint64_t t) {
  TrialOutcome out;
  const std::uint64_t s = trial_seed(seed, t);
  Rng rng(s);
  const RandomFamily family = families[static_cast<std::size_t>(t % families.size())];
  try {
    Side side = random_side(family, rng.between(2, 10), s);
    VoteTrial vt = run_vote_trial(side, rng);
    out.exchange = vt.exchange_holds;
    out.bruteforce = vt.matches_bruteforce;
    out.dual_filter = vt.dual_filter_holds;
    out.failure = vt.failure;
    DisjointBases db = random_disjoint_bases(rng, family == RandomFamily::kGraphic || rng.coin());
    out.max_min = check_max_min(db.om, db.a, db.b).holds;
    if (!out.max_min && out.failure.empty()) out.failure = "max-min exchange inequality failed";
  } catch (const InvariantViolation& e) {
    out.failure = e.what();
  }
  return out;
}

// Trials are independent; `jobs` threads take interleaved trial indices and
// results are merged in trial order.
inline PropertyRun check_theorems(int trials, std::uint64_t seed, const std::vector<RandomFamily>& families,
                                 int jobs = 1) {
  if (families.empty()) throw InputError("no families selected");
  if (trials < 0) throw InputError("negative trial count");
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  auto work = [&](int first, int stride) {
    for (int t = first; t < trials; t += stride) {
      outcomes[static_cast<std::size_t>(t)] = run_theorem_trial(families, seed, static_cast<std::uint64_t>(t));
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
    for (auto& th : pool) th.join();
  }
  PropertyRun run;
  run.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const TrialOutcome& o = outcomes[static_cast<std::size_t>(t)];
    run.exchange_holds += o.exchange;
    run.bruteforce_agrees += o.bruteforce;
    run.dual_filter_holds += o.dual_filter;
    run.max_min_holds += o.max_min;
    run.chain_checks += 1;
    if (!o.failure.empty()) run.failures.push_back("trial " + std::to_string(t) + ": " + o.failure);
  }
  return run;
}

}  // namespace popmat

#endif  // POPMAT_TRIALS_HPP_
