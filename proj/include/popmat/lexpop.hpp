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

// b-matchings with lexicographic votes.
//
// Each agent compares two b-matchings by the best edge in the symmetric
// difference of its incident edge sets and casts a single vote in
// {-1, 0, +1}. A b-matching is lexicographically popular if no other
// b-matching collects more votes. Deciding this is coNP-hard, so the
// search here is exhaustive only under an explicit budget.
//
// Also provides the constructions used to study the notion: the seven
// agent gadget with no lexicographically popular b-matching, the exact
// 3-cover reduction built from copies of it, and capacity equalisation.

#ifndef POPMAT_LEXPOP_HPP_
#define POPMAT_LEXPOP_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popmat/common.hpp"

namespace popmat {

enum class AgentSide { kU, kW };

struct LexAgent {
  std::string name;
  AgentSide side = AgentSide::kU;
  int capacity = 1;
  std::vector<int> prefs;  // incident edge ids, best first
};

struct LexEdge {
  int u;  // agent on side U
  int w;  // agent on side W
};

// Edge ids index `edges()`; a b-matching is a canonical (sorted) list of
// edge ids.
using BMatching = std::vector<int>;

class BMatchingInstance {
 public:
  int add_agent(std::string name, AgentSide side, int capacity) {
    if (capacity < 1) throw InputError("agent '" + name + "' needs a positive capacity");
    if (by_name_.count(name)) throw InputError("duplicate agent '" + name + "'");
    by_name_[name] = static_cast<int>(agents_.size());
    agents_.push_back({std::move(name), side, capacity, {}});
    return static_cast<int>(agents_.size()) - 1;
  }

  int add_edge(int a, int b) {
    check_agent(a);
    check_agent(b);
    if (agents_[static_cast<std::size_t>(a)].side == agents_[static_cast<std::size_t>(b)].side) {
      throw InputError("edge " + agent(a).name + "-" + agent(b).name + " joins agents on the same side");
    }
    if (agents_[static_cast<std::size_t>(a)].side == AgentSide::kW) std::swap(a, b);
    if (edge_between(a, b)) throw InputError("duplicate edge " + agent(a).name + "-" + agent(b).name);
    edge_index_[{a, b}] = static_cast<int>(edges_.size());
    edges_.push_back({a, b});
    return static_cast<int>(edges_.size()) - 1;
  }

  void set_preferences(int a, std::vector<int> edge_ids) {
    check_agent(a);
    agents_[static_cast<std::size_t>(a)].prefs = std::move(edge_ids);
  }

  // Every agent ranks exactly its incident edges.
  void validate() const {
    std::vector<std::vector<int>> incident(agents_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident[static_cast<std::size_t>(edges_[e].u)].push_back(static_cast<int>(e));
      incident[static_cast<std::size_t>(edges_[e].w)].push_back(static_cast<int>(e));
    }
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      std::vector<int> p = agents_[a].prefs;
      std::sort(p.begin(), p.end());
      if (p != incident[a]) {
        throw InputError("preferences of '" + agents_[a].name + "' do not list exactly its incident edges");
      }
    }
  }

  const std::vector<LexAgent>& agents() const { return agents_; }
  const std::vector<LexEdge>& edges() const { return edges_; }
  const LexAgent& agent(int a) const { return agents_[static_cast<std::size_t>(a)]; }
  const LexEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::size_t agent_count() const { return agents_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<int> find_agent(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  int agent_id(const std::string& name) const {
    auto a = find_agent(name);
    if (!a) throw InputError("unknown agent '" + name + "'");
    return *a;
  }
  std::optional<int> edge_between(int a, int b) const {
    if (agents_[static_cast<std::size_t>(a)].side == AgentSide::kW) std::swap(a, b);
    auto it = edge_index_.find({a, b});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  int edge_id(const std::string& a, const std::string& b) const {
    auto e = edge_between(agent_id(a), agent_id(b));
    if (!e) throw InputError("no edge " + a + "-" + b);
    return *e;
  }
  int other_end(int e, int a) const {
    const LexEdge& ed = edge(e);
    return ed.u == a ? ed.w : ed.u;
  }
  int max_capacity() const {
    int q = 0;
    for (const auto& a : agents_) q = std::max(q, a.capacity);
    return q;
  }

 private:
  void check_agent(int a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= agents_.size()) throw InputError("agent index out of range");
  }

  std::vector<LexAgent> agents_;
  std::vector<LexEdge> edges_;
  std::map<std::string, int> by_name_;
  std::map<std::pair<int, int>, int> edge_index_;
};

// Agent described by name with neighbours ranked best first.
struct AgentSpec {
  std::string name;
  AgentSide side = AgentSide::kU;
  int capacity = 1;
  std::vector<std::string> prefs;
};

// Edges are created in order of first mention, scanning agents in
// declaration order.
inline BMatchingInstance build_bmatching(const std::vector<AgentSpec>& specs) {
  BMatchingInstance inst;
  for (const auto& s : specs) inst.add_agent(s.name, s.side, s.capacity);
  for (const auto& s : specs) {
    const int a = inst.agent_id(s.name);
    std::vector<int> ids;
    for (const auto& other : s.prefs) {
      const int b = inst.agent_id(other);
      auto e = inst.edge_between(a, b);
      ids.push_back(e ? *e : inst.add_edge(a, b));
    }
    inst.set_preferences(a, std::move(ids));
  }
  inst.validate();
  return inst;
}

inline BMatching make_bmatching(const BMatchingInstance& inst,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
  BMatching mu;
  for (const auto& [a, b] : pairs) mu.push_back(inst.edge_id(a, b));
  std::sort(mu.begin(), mu.end());
  if (std::adjacent_find(mu.begin(), mu.end()) != mu.end()) throw InputError("b-matching lists an edge twice");
  return mu;
}

inline bool is_b_matching(const BMatchingInstance& inst, const BMatching& mu) {
  std::vector<int> load(inst.agent_count(), 0);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] < 0 || static_cast<std::size_t>(mu[k]) >= inst.edge_count()) return false;
    if (k && mu[k - 1] >= mu[k]) return false;
    const LexEdge& e = inst.edge(mu[k]);
    if (++load[static_cast<std::size_t>(e.u)] > inst.agent(e.u).capacity) return false;
    if (++load[static_cast<std::size_t>(e.w)] > inst.agent(e.w).capacity) return false;
  }
  return true;
}

namespace detail {

using Membership = std::vector<char>;

inline Membership membership(const BMatchingInstance& inst, const BMatching& mu) {
  Membership in(inst.edge_count(), 0);
  for (int e : mu) in[static_cast<std::size_t>(e)] = 1;
  return in;
}

inline BMatching from_membership(const Membership& in) {
  BMatching mu;
  for (std::size_t e = 0; e < in.size(); ++e) {
    if (in[e]) mu.push_back(static_cast<int>(e));
  }
  return mu;
}

inline int agent_vote(const LexAgent& a, const Membership& mu, const Membership& other) {
  for (int e : a.prefs) {
    const auto k = static_cast<std::size_t>(e);
    if (mu[k] != other[k]) return mu[k] ? 1 : -1;
  }
  return 0;
}

inline int total_vote(const BMatchingInstance& inst, const Membership& mu, const Membership& other) {
  int total = 0;
  for (const auto& a : inst.agents()) total += agent_vote(a, mu, other);
  return total;
}

inline void require_b_matching(const BMatchingInstance& inst, const BMatching& mu, const char* what) {
  if (!is_b_matching(inst, mu)) throw InputError(std::string(what) + " is not a b-matching");
}

}  // namespace detail

// +1 if agent v prefers mu, -1 if it prefers mu_prime, 0 if it holds the
// same edges in both.
inline int lex_vote_agent(const BMatchingInstance& inst, const BMatching& mu, const BMatching& mu_prime, int v) {
  detail::require_b_matching(inst, mu, "mu");
  detail::require_b_matching(inst, mu_prime, "mu'");
  return detail::agent_vote(inst.agent(v), detail::membership(inst, mu), detail::membership(inst, mu_prime));
}

inline int lex_vote_total(const BMatchingInstance& inst, const BMatching& mu, const BMatching& mu_prime) {
  detail::require_b_matching(inst, mu, "mu");
  detail::require_b_matching(inst, mu_prime, "mu'");
  return detail::total_vote(inst, detail::membership(inst, mu), detail::membership(inst, mu_prime));
}

// Calls `visit(membership)` for every b-matching of `inst`, in a fixed
// depth-first order (edge 0 absent before present). `visit` returns false
// to stop. Returns false if stopped early or if more than `budget`
// b-matchings would be visited.
template <typename Visit>
bool enumerate_b_matchings(const BMatchingInstance& inst, std::uint64_t budget, Visit&& visit,
                           std::uint64_t* visited = nullptr) {
  detail::Membership in(inst.edge_count(), 0);
  std::vector<int> load(inst.agent_count(), 0);
  std::uint64_t count = 0;
  bool complete = true;
  auto dfs = [&](auto&& self, std::size_t e) -> bool {
    if (e == in.size()) {
      if (++count > budget) {
        complete = false;
        return false;
      }
      if (!visit(static_cast<const detail::Membership&>(in))) {
        complete = false;
        return false;
      }
      return true;
    }
    if (!self(self, e + 1)) return false;
    const LexEdge& ed = inst.edge(static_cast<int>(e));
    auto& lu = load[static_cast<std::size_t>(ed.u)];
    auto& lw = load[static_cast<std::size_t>(ed.w)];
    if (lu < inst.agent(ed.u).capacity && lw < inst.agent(ed.w).capacity) {
      ++lu;
      ++lw;
      in[e] = 1;
      const bool go_on = self(self, e + 1);
      in[e] = 0;
      --lu;
      --lw;
      if (!go_on) return false;
    }
    return true;
  };
  dfs(dfs, 0);
  if (visited) *visited = std::min(count, budget);
  return complete;
}

enum class DominationStatus { kFound, kNoneCertified, kIncomplete };

inline const char* status_name(DominationStatus s) {
  switch (s) {
    case DominationStatus::kFound: return "found";
    case DominationStatus::kNoneCertified: return "none";
    case DominationStatus::kIncomplete: return "incomplete";
  }
  return "?";
}

struct DominationSearch {
  DominationStatus status = DominationStatus::kIncomplete;
  std::optional<BMatching> witness;
  int witness_vote = 0;          // lex_vote_total(mu, witness), negative when found
  std::uint64_t explored = 0;    // b-matchings examined exhaustively
  bool exhaustive = false;
};

struct DominationOptions {
  // Maximum number of b-matchings enumerated before falling back to local
  // search.
  std::uint64_t budget = std::uint64_t{1} << 22;
  // Exhaustive mode only: keep searching for the dominator with the most
  // negative vote instead of stopping at the first.
  bool strongest = false;
  std::uint64_t seed = 0;
  int local_search_steps = 20000;
};

namespace detail {

// Random single-edge moves from mu, keeping b-matching feasibility by
// dropping an endpoint's worst edge when it is saturated. Accepts
// non-worsening moves.
inline std::optional<Membership> local_search(const BMatchingInstance& inst, const Membership& mu,
                                              const DominationOptions& opt) {
  if (inst.edge_count() == 0) return std::nullopt;
  Rng rng(opt.seed);
  Membership cur = mu;
  int cur_score = 0;
  std::vector<int> load(inst.agent_count(), 0);
  auto recount = [&](const Membership& m) {
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (!m[e]) continue;
      ++load[static_cast<std::size_t>(inst.edge(static_cast<int>(e)).u)];
      ++load[static_cast<std::size_t>(inst.edge(static_cast<int>(e)).w)];
    }
  };
  auto drop_worst = [&](Membership& m, int a) {
    const auto& prefs = inst.agent(a).prefs;
    for (auto it = prefs.rbegin(); it != prefs.rend(); ++it) {
      if (m[static_cast<std::size_t>(*it)]) {
        m[static_cast<std::size_t>(*it)] = 0;
        return;
      }
    }
  };
  for (int step = 0; step < opt.local_search_steps; ++step) {
    if (step % 500 == 0) {
      cur = mu;
      cur_score = 0;
    }
    Membership cand = cur;
    const auto e = static_cast<std::size_t>(rng.below(inst.edge_count()));
    if (cand[e]) {
      cand[e] = 0;
    } else {
      recount(cand);
      const LexEdge& ed = inst.edge(static_cast<int>(e));
      if (load[static_cast<std::size_t>(ed.u)] >= inst.agent(ed.u).capacity) drop_worst(cand, ed.u);
      if (load[static_cast<std::size_t>(ed.w)] >= inst.agent(ed.w).capacity) drop_worst(cand, ed.w);
      cand[e] = 1;
    }
    const int score = total_vote(inst, mu, cand);
    if (score < 0) return cand;
    if (score <= cur_score) {
      cur = std::move(cand);
      cur_score = score;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Looks for mu' with lex_vote_total(mu, mu') < 0. Exhaustive when the
// number of b-matchings fits the budget (then `kNoneCertified` certifies
// lexicographic popularity); otherwise local search, which can only find a
// witness or report `kIncomplete`.
inline DominationSearch find_lex_dominating(const BMatchingInstance& inst, const BMatching& mu,
                                            const DominationOptions& opt = {}) {
  detail::require_b_matching(inst, mu, "mu");
  const detail::Membership base = detail::membership(inst, mu);
  DominationSearch out;
  std::optional<detail::Membership> best;
  int best_vote = 0;
  const bool complete = enumerate_b_matchings(
      inst, opt.budget,
      [&](const detail::Membership& cand) {
        const int v = detail::total_vote(inst, base, cand);
        if (v < best_vote) {
          best_vote = v;
          best = cand;
          return opt.strongest;
        }
        return true;
      },
      &out.explored);
  if (best) {
    out.status = DominationStatus::kFound;
    out.witness = detail::from_membership(*best);
    out.witness_vote = best_vote;
    out.exhaustive = complete || opt.strongest;
    return out;
  }
  if (complete) {
    out.status = DominationStatus::kNoneCertified;
    out.exhaustive = true;
    return out;
  }
  if (auto found = detail::local_search(inst, base, opt)) {
    out.status = DominationStatus::kFound;
    out.witness = detail::from_membership(*found);
    out.witness_vote = detail::total_vote(inst, base, *found);
    return out;
  }
  out.status = DominationStatus::kIncomplete;
  return out;
}

enum class LexPopularity { kPopular, kDominated, kIncomplete };

inline const char* popularity_name(LexPopularity p) {
  switch (p) {
    case LexPopularity::kPopular: return "popular";
    case LexPopularity::kDominated: return "dominated";
    case LexPopularity::kIncomplete: return "incomplete";
  }
  return "?";
}

struct LexVerdict {
  LexPopularity status = LexPopularity::kIncomplete;
  std::optional<BMatching> witness;
};

inline LexVerdict is_lex_popular(const BMatchingInstance& inst, const BMatching& mu,
                                 const DominationOptions& opt = {}) {
  DominationSearch s = find_lex_dominating(inst, mu, opt);
  switch (s.status) {
    case DominationStatus::kFound: return {LexPopularity::kDominated, s.witness};
    case DominationStatus::kNoneCertified: return {LexPopularity::kPopular, std::nullopt};
    case DominationStatus::kIncomplete: break;
  }
  return {LexPopularity::kIncomplete, std::nullopt};
}

// All lexicographically popular b-matchings, found exhaustively. Throws
// ScaleError when the instance has more than `budget` b-matchings.
inline std::vector<BMatching> all_lex_popular(const BMatchingInstance& inst,
                                              std::uint64_t budget = std::uint64_t{1} << 16) {
  std::vector<detail::Membership> all;
  if (!enumerate_b_matchings(inst, budget, [&](const detail::Membership& m) {
        all.push_back(m);
        return true;
      })) {
    throw ScaleError("instance has more than " + std::to_string(budget) + " b-matchings");
  }
  std::vector<BMatching> popular;
  for (const auto& mu : all) {
    bool dominated = false;
    for (const auto& other : all) {
      if (detail::total_vote(inst, mu, other) < 0) {
        dominated = true;
        break;
      }
    }
    if (!dominated) popular.push_back(detail::from_membership(mu));
  }
  return popular;
}

// ---------------------------------------------------------------------------
// The seven-agent gadget

// Agents x, u1..u4 on side U, v1, v2 on side W; x has capacity q. With
// dummies, q agents d1..dq (capacity 1, side W) hang off x and x ranks them
// first.
inline BMatchingInstance build_gadget(int q, bool with_dummies) {
  if (q < 1) throw InputError("gadget capacity q must be at least 1");
  std::vector<std::string> x_prefs;
  std::vector<AgentSpec> specs;
  if (with_dummies) {
    for (int k = 1; k <= q; ++k) x_prefs.push_back("d" + std::to_string(k));
  }
  x_prefs.push_back("v1");
  x_prefs.push_back("v2");
  specs.push_back({"x", AgentSide::kU, q, x_prefs});
  specs.push_back({"u1", AgentSide::kU, 1, {"v1", "v2"}});
  specs.push_back({"u2", AgentSide::kU, 2, {"v1", "v2"}});
  specs.push_back({"u3", AgentSide::kU, 2, {"v2", "v1"}});
  specs.push_back({"u4", AgentSide::kU, 1, {"v2", "v1"}});
  specs.push_back({"v1", AgentSide::kW, 2, {"u3", "u4", "u1", "x", "u2"}});
  specs.push_back({"v2", AgentSide::kW, 2, {"u2", "u1", "x", "u4", "u3"}});
  if (with_dummies) {
    for (int k = 1; k <= q; ++k) specs.push_back({"d" + std::to_string(k), AgentSide::kW, 1, {"x"}});
  }
  return build_bmatching(specs);
}

namespace detail {

inline BMatching with_gadget_dummies(const BMatchingInstance& inst,
                                     std::vector<std::pair<std::string, std::string>> pairs) {
  for (int k = 1; inst.find_agent("d" + std::to_string(k)); ++k) pairs.push_back({"x", "d" + std::to_string(k)});
  return make_bmatching(inst, pairs);
}

}  // namespace detail

// The only b-matching surviving the forced-edge arguments in the gadget:
// {u1v2, u2v2, u3v1, u4v1} (+ every x-dummy edge when dummies exist).
inline BMatching gadget_forced_candidate(const BMatchingInstance& inst) {
  return detail::with_gadget_dummies(inst, {{"u1", "v2"}, {"u2", "v2"}, {"u3", "v1"}, {"u4", "v1"}});
}

// {u1v1, u2v1, u3v2, u4v2} (+ dummy edges), which beats the forced candidate.
inline BMatching gadget_dominator(const BMatchingInstance& inst) {
  return detail::with_gadget_dummies(inst, {{"u1", "v1"}, {"u2", "v1"}, {"u3", "v2"}, {"u4", "v2"}});
}

// {u1v1, u2v2, u3v1, u4v2} + every x-dummy edge: the unique lexicographically
// popular b-matching once dummies are present.
inline BMatching gadget_popular(const BMatchingInstance& inst) {
  return detail::with_gadget_dummies(inst, {{"u1", "v1"}, {"u2", "v2"}, {"u3", "v1"}, {"u4", "v2"}});
}

// ---------------------------------------------------------------------------
// Exact 3-cover reduction

// Elements 1..3n; 3n sets of three distinct elements, each element in
// exactly three sets. Sets are referred to by 1-based index.
struct X3CInstance {
  int n = 0;
  std::vector<std::array<int, 3>> sets;
};

inline void validate_x3c(const X3CInstance& x) {
  if (x.n < 1) throw InputError("X3C instance needs n >= 1");
  const int m = 3 * x.n;
  if (static_cast<int>(x.sets.size()) != m) throw InputError("X3C instance needs exactly 3n sets");
  std::vector<int> count(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& s : x.sets) {
    for (int k = 0; k < 3; ++k) {
      if (s[static_cast<std::size_t>(k)] < 1 || s[static_cast<std::size_t>(k)] > m) {
        throw InputError("X3C set element out of range");
      }
      for (int l = 0; l < k; ++l) {
        if (s[static_cast<std::size_t>(k)] == s[static_cast<std::size_t>(l)]) throw InputError("X3C set repeats an element");
      }
      ++count[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])];
    }
  }
  for (int e = 1; e <= m; ++e) {
    if (count[static_cast<std::size_t>(e)] != 3) {
      throw InputError("element " + std::to_string(e) + " appears in " + std::to_string(count[static_cast<std::size_t>(e)]) +
                       " sets, expected exactly 3");
    }
  }
}

struct X3CReduction {
  X3CInstance source;
  BMatchingInstance instance;
  BMatching candidate;
};

namespace detail {

inline std::string x3c_name(char kind, int i) { return std::string(1, kind) + std::to_string(i); }
inline std::string x3c_s(int i, int l) { return "s" + std::to_string(i) + "_" + std::to_string(l); }
inline std::string gadget_name(int j, char l, const std::string& role) {
  return "G" + std::to_string(j) + l + "." + role;
}

}  // namespace detail

// Agent names: a<i>, b<i>, c<i>, d<i>, s<i>_1, s<i>_2, t, and G<j><l>.<role>
// for gadget copies (role in x, u1..u4, v1, v2; l in a, b, c). In a
// gadget's x list the three element agents come first, in increasing
// element index.
inline X3CReduction build_x3c_reduction(const X3CInstance& x3c) {
  using detail::gadget_name;
  using detail::x3c_name;
  using detail::x3c_s;
  validate_x3c(x3c);
  const int m = 3 * x3c.n;
  auto wrap = [m](int i) { return (i - 1 + m) % m + 1; };
  std::vector<std::vector<int>> containing(static_cast<std::size_t>(m) + 1);
  for (int j = 1; j <= m; ++j) {
    for (int e : x3c.sets[static_cast<std::size_t>(j) - 1]) containing[static_cast<std::size_t>(e)].push_back(j);
  }
  // Sides follow the bipartition of the construction: a, c, s on U and
  // b, d, t on W; gadgets hanging off a/c sit with x on W, those hanging
  // off b with x on U.
  std::vector<AgentSpec> specs;
  for (int i = 1; i <= m; ++i) {
    const auto& in = containing[static_cast<std::size_t>(i)];
    std::vector<std::string> pa{x3c_name('b', i)}, pb{x3c_name('c', i)}, pc{x3c_name('d', i)};
    for (int j : in) {
      pa.push_back(gadget_name(j, 'a', "x"));
      pb.push_back(gadget_name(j, 'b', "x"));
      pc.push_back(gadget_name(j, 'c', "x"));
    }
    pa.push_back(x3c_name('d', wrap(i - 1)));
    pb.push_back(x3c_name('a', i));
    pc.push_back(x3c_name('b', i));
    specs.push_back({x3c_name('a', i), AgentSide::kU, 3, pa});
    specs.push_back({x3c_name('b', i), AgentSide::kW, 3, pb});
    specs.push_back({x3c_name('c', i), AgentSide::kU, 3, pc});
    specs.push_back({x3c_name('d', i), AgentSide::kW, 2,
                     {x3c_name('a', wrap(i + 1)), x3c_s(i, 1), x3c_s(i, 2), x3c_name('c', i)}});
    specs.push_back({x3c_s(i, 1), AgentSide::kU, 1, {x3c_name('d', i), "t"}});
    specs.push_back({x3c_s(i, 2), AgentSide::kU, 1, {x3c_name('d', i), "t"}});
  }
  std::vector<std::string> tp;
  for (int i = 1; i <= m; ++i) {
    tp.push_back(x3c_s(i, 1));
    tp.push_back(x3c_s(i, 2));
  }
  specs.push_back({"t", AgentSide::kW, 3, tp});
  for (int j = 1; j <= m; ++j) {
    auto members = x3c.sets[static_cast<std::size_t>(j) - 1];
    std::sort(members.begin(), members.end());
    for (char l : {'a', 'b', 'c'}) {
      const AgentSide xs = l == 'b' ? AgentSide::kU : AgentSide::kW;
      const AgentSide vs = xs == AgentSide::kU ? AgentSide::kW : AgentSide::kU;
      auto g = [&](const char* role) { return gadget_name(j, l, role); };
      std::vector<std::string> xp;
      for (int e : members) xp.push_back(x3c_name(l, e));
      xp.push_back(g("v1"));
      xp.push_back(g("v2"));
      specs.push_back({g("x"), xs, 3, xp});
      specs.push_back({g("u1"), xs, 1, {g("v1"), g("v2")}});
      specs.push_back({g("u2"), xs, 2, {g("v1"), g("v2")}});
      specs.push_back({g("u3"), xs, 2, {g("v2"), g("v1")}});
      specs.push_back({g("u4"), xs, 1, {g("v2"), g("v1")}});
      specs.push_back({g("v1"), vs, 2, {g("u3"), g("u4"), g("u1"), g("x"), g("u2")}});
      specs.push_back({g("v2"), vs, 2, {g("u2"), g("u1"), g("x"), g("u4"), g("u3")}});
    }
  }
  X3CReduction red{x3c, build_bmatching(specs), {}};
  std::vector<std::pair<std::string, std::string>> mu;
  for (int i = 1; i <= m; ++i) {
    for (int j : containing[static_cast<std::size_t>(i)]) {
      for (char l : {'a', 'b', 'c'}) mu.push_back({x3c_name(l, i), gadget_name(j, l, "x")});
    }
    mu.push_back({x3c_name('d', i), x3c_s(i, 1)});
    mu.push_back({x3c_name('d', i), x3c_s(i, 2)});
  }
  for (int j = 1; j <= m; ++j) {
    for (char l : {'a', 'b', 'c'}) {
      auto g = [&](const char* role) { return gadget_name(j, l, role); };
      mu.push_back({g("u1"), g("v1")});
      mu.push_back({g("u2"), g("v2")});
      mu.push_back({g("u3"), g("v1")});
      mu.push_back({g("u4"), g("v2")});
    }
  }
  red.candidate = make_bmatching(red.instance, mu);
  if (!is_b_matching(red.instance, red.candidate)) throw InvariantViolation("reduction candidate violates capacities");
  return red;
}

// The b-matching built from an exact cover (1-based set indices) that beats
// the candidate by one vote.
inline BMatching x3c_domination_witness(const X3CReduction& red, const std::vector<int>& cover) {
  using detail::gadget_name;
  using detail::x3c_name;
  using detail::x3c_s;
  const int m = 3 * red.source.n;
  std::vector<int> cover_of(static_cast<std::size_t>(m) + 1, 0);
  for (int j : cover) {
    if (j < 1 || j > m) throw InputError("cover set index out of range");
    for (int e : red.source.sets[static_cast<std::size_t>(j) - 1]) {
      if (cover_of[static_cast<std::size_t>(e)]) throw InputError("cover is not exact: element " + std::to_string(e) + " covered twice");
      cover_of[static_cast<std::size_t>(e)] = j;
    }
  }
  for (int e = 1; e <= m; ++e) {
    if (!cover_of[static_cast<std::size_t>(e)]) throw InputError("cover is not exact: element " + std::to_string(e) + " uncovered");
  }
  auto wrap = [m](int i) { return (i - 1 + m) % m + 1; };
  std::vector<std::pair<std::string, std::string>> mu;
  for (int j = 1; j <= m; ++j) {
    for (char l : {'a', 'b', 'c'}) {
      auto g = [&](const char* role) { return gadget_name(j, l, role); };
      mu.push_back({g("u1"), g("v1")});
      mu.push_back({g("u2"), g("v2")});
      mu.push_back({g("u3"), g("v1")});
      mu.push_back({g("u4"), g("v2")});
    }
  }
  for (int i = 1; i <= m; ++i) {
    mu.push_back({x3c_name('a', i), x3c_name('b', i)});
    mu.push_back({x3c_name('b', i), x3c_name('c', i)});
    mu.push_back({x3c_name('c', i), x3c_name('d', i)});
    mu.push_back({x3c_name('d', i), x3c_name('a', wrap(i + 1))});
    for (char l : {'a', 'b', 'c'}) mu.push_back({x3c_name(l, i), gadget_name(cover_of[static_cast<std::size_t>(i)], l, "x")});
  }
  mu.push_back({"t", x3c_s(1, 1)});
  BMatching out = make_bmatching(red.instance, mu);
  if (!is_b_matching(red.instance, out)) throw InvariantViolation("domination witness violates capacities");
  return out;
}

// ---------------------------------------------------------------------------
// Capacity equalisation

struct EqualizedInstance {
  BMatchingInstance instance;
  BMatching fixed;  // the dummy edges, which every popular b-matching must contain
  int capacity = 0;
};

// Raises every capacity to the maximum q by giving each agent with
// capacity c < q exactly q - c private dummy neighbours (capacity q), ranked
// above all its other edges. Edge ids of the original instance are kept.
inline EqualizedInstance equalize_capacities(const BMatchingInstance& inst) {
  const int q = inst.max_capacity();
  EqualizedInstance out;
  out.capacity = q;
  BMatchingInstance& eq = out.instance;
  for (const auto& a : inst.agents()) eq.add_agent(a.name, a.side, q);
  for (const auto& e : inst.edges()) eq.add_edge(e.u, e.w);
  for (std::size_t a = 0; a < inst.agent_count(); ++a) {
    const LexAgent& agent = inst.agents()[a];
    std::vector<int> prefs;
    for (int k = 1; k <= q - agent.capacity; ++k) {
      const int d = eq.add_agent("dummy." + agent.name + "." + std::to_string(k),
                                 agent.side == AgentSide::kU ? AgentSide::kW : AgentSide::kU, q);
      const int e = eq.add_edge(static_cast<int>(a), d);
      eq.set_preferences(d, {e});
      prefs.push_back(e);
      out.fixed.push_back(e);
    }
    prefs.insert(prefs.end(), agent.prefs.begin(), agent.prefs.end());
    eq.set_preferences(static_cast<int>(a), std::move(prefs));
  }
  eq.validate();
  std::sort(out.fixed.begin(), out.fixed.end());
  return out;
}

}  // namespace popmat

#endif  // POPMAT_LEXPOP_HPP_
