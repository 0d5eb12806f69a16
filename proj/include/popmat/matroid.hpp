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

// Matroids seen purely through an independence oracle.
//
// A Matroid is an immutable value: a canonical ground set plus a shared
// oracle. Concrete families (free, uniform, partition, laminar, graphic,
// transversal, explicit) and derived ones (minor/truncation, direct sum)
// all implement MatroidOracle. Everything else (circuits, greedy bases,
// domination) is derived generically from the oracle.

#ifndef POPMAT_MATROID_HPP_
#define POPMAT_MATROID_HPP_

#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "popmat/common.hpp"

namespace popmat {

enum class MatroidKind {
  kFree,
  kUniform,
  kPartition,
  kLaminar,
  kGraphic,
  kTransversal,
  kExplicit,
  kDerived,
};

inline const char* kind_name(MatroidKind k) {
  switch (k) {
    case MatroidKind::kFree: return "free";
    case MatroidKind::kUniform: return "uniform";
    case MatroidKind::kPartition: return "partition";
    case MatroidKind::kLaminar: return "laminar";
    case MatroidKind::kGraphic: return "graphic";
    case MatroidKind::kTransversal: return "transversal";
    case MatroidKind::kExplicit: return "explicit";
    case MatroidKind::kDerived: return "derived";
  }
  return "?";
}

class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;
  // `x` is a canonical subset of the ground set it was built for.
  virtual bool independent(std::span<const Element> x) const = 0;
  virtual MatroidKind kind() const = 0;
};

class Matroid {
 public:
  Matroid(ElementSet ground, std::shared_ptr<const MatroidOracle> oracle)
      : ground_(std::move(ground)), oracle_(std::move(oracle)) {}

  const ElementSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  MatroidKind kind() const { return oracle_->kind(); }
  bool contains(Element e) const { return sets::contains(ground_, e); }

  // Unchecked query: `x` must be canonical and inside the ground set.
  bool independent(std::span<const Element> x) const { return oracle_->independent(x); }

 private:
  ElementSet ground_;
  std::shared_ptr<const MatroidOracle> oracle_;
};

namespace detail {

// Element id -> local position, for oracles that need per-element data.
class IndexMap {
 public:
  IndexMap() = default;
  explicit IndexMap(std::span<const Element> ground) {
    Element top = -1;
    for (Element e : ground) {
      if (e < 0) throw InputError("element ids must be non-negative");
      top = std::max(top, e);
    }
    index_.assign(static_cast<std::size_t>(top + 1), -1);
    for (std::size_t k = 0; k < ground.size(); ++k) {
      index_[static_cast<std::size_t>(ground[k])] = static_cast<int>(k);
    }
  }
  int operator[](Element e) const { return index_[static_cast<std::size_t>(e)]; }

 private:
  std::vector<int> index_;
};

inline void require_canonical_ground(const ElementSet& ground) {
  if (!sets::is_canonical(ground)) throw InputError("ground set has duplicate elements");
}

class FreeOracle final : public MatroidOracle {
 public:
  bool independent(std::span<const Element>) const override { return true; }
  MatroidKind kind() const override { return MatroidKind::kFree; }
};

class UniformOracle final : public MatroidOracle {
 public:
  explicit UniformOracle(int rank) : rank_(rank) {}
  bool independent(std::span<const Element> x) const override {
    return static_cast<int>(x.size()) <= rank_;
  }
  MatroidKind kind() const override { return MatroidKind::kUniform; }

 private:
  int rank_;
};

// Laminar family with capacities; a partition matroid is the special case
// of pairwise disjoint sets covering the ground set.
class CapacityOracle final : public MatroidOracle {
 public:
  CapacityOracle(const ElementSet& ground, std::vector<std::vector<int>> member_sets,
                 std::vector<int> caps, MatroidKind kind)
      : index_(ground),
        member_sets_(std::move(member_sets)),
        caps_(std::move(caps)),
        kind_(kind) {}

  bool independent(std::span<const Element> x) const override {
    std::vector<int> load(caps_.size(), 0);
    for (Element e : x) {
      for (int s : member_sets_[static_cast<std::size_t>(index_[e])]) {
        if (++load[static_cast<std::size_t>(s)] > caps_[static_cast<std::size_t>(s)]) return false;
      }
    }
    return true;
  }
  MatroidKind kind() const override { return kind_; }

 private:
  IndexMap index_;
  std::vector<std::vector<int>> member_sets_;  // per local element: sets containing it
  std::vector<int> caps_;
  MatroidKind kind_;
};

class GraphicOracle final : public MatroidOracle {
 public:
  GraphicOracle(const ElementSet& ground, std::vector<std::pair<int, int>> ends, int vertices)
      : index_(ground), ends_(std::move(ends)), vertices_(vertices) {}

  bool independent(std::span<const Element> x) const override {
    std::vector<int> parent(static_cast<std::size_t>(vertices_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
      }
      return v;
    };
    for (Element e : x) {
      auto [a, b] = ends_[static_cast<std::size_t>(index_[e])];
      int ra = find(a);
      int rb = find(b);
      if (ra == rb) return false;
      parent[static_cast<std::size_t>(ra)] = rb;
    }
    return true;
  }
  MatroidKind kind() const override { return MatroidKind::kGraphic; }

 private:
  IndexMap index_;
  std::vector<std::pair<int, int>> ends_;
  int vertices_;
};

// Independent iff the elements can be matched to distinct targets.
class TransversalOracle final : public MatroidOracle {
 public:
  TransversalOracle(const ElementSet& ground, std::vector<std::vector<int>> targets, int target_count)
      : index_(ground), targets_(std::move(targets)), target_count_(target_count) {}

  bool independent(std::span<const Element> x) const override {
    std::vector<int> owner(static_cast<std::size_t>(target_count_), -1);
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::vector<char> seen(static_cast<std::size_t>(target_count_), 0);
      if (!augment(x, static_cast<int>(k), owner, seen)) return false;
    }
    return true;
  }
  MatroidKind kind() const override { return MatroidKind::kTransversal; }

 private:
  bool augment(std::span<const Element> x, int k, std::vector<int>& owner,
               std::vector<char>& seen) const {
    for (int t : targets_[static_cast<std::size_t>(index_[x[static_cast<std::size_t>(k)]])]) {
      if (seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = 1;
      int& o = owner[static_cast<std::size_t>(t)];
      if (o < 0 || augment(x, o, owner, seen)) {
        o = k;
        return true;
      }
    }
    return false;
  }

  IndexMap index_;
  std::vector<std::vector<int>> targets_;
  int target_count_;
};

class ExplicitOracle final : public MatroidOracle {
 public:
  ExplicitOracle(const ElementSet& ground, std::unordered_set<std::uint64_t> family)
      : index_(ground), family_(std::move(family)) {}

  bool independent(std::span<const Element> x) const override {
    std::uint64_t mask = 0;
    for (Element e : x) mask |= std::uint64_t{1} << index_[e];
    return family_.count(mask) > 0;
  }
  MatroidKind kind() const override { return MatroidKind::kExplicit; }

 private:
  IndexMap index_;
  std::unordered_set<std::uint64_t> family_;
};

class MinorOracle final : public MatroidOracle {
 public:
  MinorOracle(Matroid base, ElementSet contract, std::optional<int> truncate_to)
      : base_(std::move(base)), contract_(std::move(contract)), truncate_to_(truncate_to) {}

  bool independent(std::span<const Element> x) const override {
    if (truncate_to_ && static_cast<int>(x.size()) > *truncate_to_) return false;
    if (contract_.empty()) return base_.independent(x);
    return base_.independent(sets::unite(x, contract_));
  }
  MatroidKind kind() const override { return MatroidKind::kDerived; }

 private:
  Matroid base_;
  ElementSet contract_;
  std::optional<int> truncate_to_;
};

class DirectSumOracle final : public MatroidOracle {
 public:
  DirectSumOracle(std::vector<Matroid> parts, const ElementSet& ground, std::vector<int> block_of)
      : parts_(std::move(parts)), index_(ground), block_of_(std::move(block_of)) {}

  bool independent(std::span<const Element> x) const override {
    std::vector<ElementSet> split(parts_.size());
    for (Element e : x) split[static_cast<std::size_t>(block_of_[static_cast<std::size_t>(index_[e])])].push_back(e);
    for (std::size_t b = 0; b < parts_.size(); ++b) {
      if (!split[b].empty() && !parts_[b].independent(split[b])) return false;
    }
    return true;
  }
  MatroidKind kind() const override { return MatroidKind::kDerived; }

 private:
  std::vector<Matroid> parts_;
  IndexMap index_;
  std::vector<int> block_of_;
};

}  // namespace detail

// Checked independence query. Accepts any order; rejects unknown or
// repeated elements.
inline bool is_independent(const Matroid& m, std::span<const Element> x) {
  ElementSet canon = sets::normalize(ElementSet(x.begin(), x.end()));
  if (canon.size() != x.size()) throw InputError("element set has repeated elements");
  for (Element e : canon) {
    if (!m.contains(e)) throw InputError("unknown element " + std::to_string(e));
  }
  return m.independent(canon);
}

// ---------------------------------------------------------------------------
// Families

inline Matroid free_matroid(ElementSet ground) {
  detail::require_canonical_ground(ground);
  return Matroid(std::move(ground), std::make_shared<detail::FreeOracle>());
}

inline Matroid uniform_matroid(ElementSet ground, int rank) {
  detail::require_canonical_ground(ground);
  if (rank < 0) throw InputError("uniform matroid rank must be non-negative");
  return Matroid(std::move(ground), std::make_shared<detail::UniformOracle>(rank));
}

struct CapacitatedSet {
  ElementSet elements;
  int capacity = 0;
};

// Classes must be pairwise disjoint; the ground set is their union.
inline Matroid partition_matroid(const std::vector<CapacitatedSet>& classes) {
  ElementSet ground;
  for (const auto& c : classes) {
    if (!sets::is_canonical(c.elements)) throw InputError("partition class is not a set");
    if (c.capacity < 0) throw InputError("negative capacity");
    if (!sets::intersect(ground, c.elements).empty()) {
      throw InputError("partition classes overlap");
    }
    ground = sets::unite(ground, c.elements);
  }
  detail::IndexMap index(ground);
  std::vector<std::vector<int>> member(ground.size());
  std::vector<int> caps;
  for (std::size_t s = 0; s < classes.size(); ++s) {
    for (Element e : classes[s].elements) member[static_cast<std::size_t>(index[e])].push_back(static_cast<int>(s));
    caps.push_back(classes[s].capacity);
  }
  return Matroid(ground, std::make_shared<detail::CapacityOracle>(ground, std::move(member), std::move(caps),
                                                                  MatroidKind::kPartition));
}

// Every pair of sets in the family must be nested or disjoint. Elements of
// `ground` outside every set are unconstrained.
inline Matroid laminar_matroid(ElementSet ground, const std::vector<CapacitatedSet>& family) {
  detail::require_canonical_ground(ground);
  for (std::size_t a = 0; a < family.size(); ++a) {
    if (!sets::is_canonical(family[a].elements) || !sets::is_subset(family[a].elements, ground)) {
      throw InputError("laminar set is not a subset of the ground set");
    }
    if (family[a].capacity < 0) throw InputError("negative capacity");
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const auto& x = family[a].elements;
      const auto& y = family[b].elements;
      if (!sets::is_subset(x, y) && !sets::is_subset(y, x) && !sets::intersect(x, y).empty()) {
        throw InputError("family is not laminar");
      }
    }
  }
  detail::IndexMap index(ground);
  std::vector<std::vector<int>> member(ground.size());
  std::vector<int> caps;
  for (std::size_t s = 0; s < family.size(); ++s) {
    for (Element e : family[s].elements) member[static_cast<std::size_t>(index[e])].push_back(static_cast<int>(s));
    caps.push_back(family[s].capacity);
  }
  return Matroid(ground, std::make_shared<detail::CapacityOracle>(ground, std::move(member), std::move(caps),
                                                                  MatroidKind::kLaminar));
}

struct GraphEdge {
  Element element;
  int tail;
  int head;
};

// Vertices are arbitrary non-negative integers. A self-loop edge is a
// matroid loop.
inline Matroid graphic_matroid(const std::vector<GraphEdge>& edges) {
  ElementSet ground;
  int vertices = 0;
  for (const auto& e : edges) {
    if (e.tail < 0 || e.head < 0) throw InputError("negative vertex id");
    ground.push_back(e.element);
    vertices = std::max({vertices, e.tail + 1, e.head + 1});
  }
  ElementSet canon = sets::normalize(ground);
  if (canon.size() != ground.size()) throw InputError("graphic matroid has repeated elements");
  detail::IndexMap index(canon);
  std::vector<std::pair<int, int>> ends(canon.size());
  for (const auto& e : edges) ends[static_cast<std::size_t>(index[e.element])] = {e.tail, e.head};
  return Matroid(canon, std::make_shared<detail::GraphicOracle>(canon, std::move(ends), vertices));
}

struct TransversalRow {
  Element element;
  std::vector<int> targets;
};

inline Matroid transversal_matroid(const std::vector<TransversalRow>& rows) {
  ElementSet ground;
  int target_count = 0;
  for (const auto& r : rows) {
    ground.push_back(r.element);
    for (int t : r.targets) {
      if (t < 0) throw InputError("negative target id");
      target_count = std::max(target_count, t + 1);
    }
  }
  ElementSet canon = sets::normalize(ground);
  if (canon.size() != ground.size()) throw InputError("transversal matroid has repeated elements");
  detail::IndexMap index(canon);
  std::vector<std::vector<int>> targets(canon.size());
  for (const auto& r : rows) targets[static_cast<std::size_t>(index[r.element])] = r.targets;
  return Matroid(canon, std::make_shared<detail::TransversalOracle>(canon, std::move(targets), target_count));
}

// Stores the family as given; nothing is closed or repaired. Use
// check_axioms to validate.
inline Matroid explicit_matroid(ElementSet ground, const std::vector<ElementSet>& family) {
  detail::require_canonical_ground(ground);
  if (ground.size() > 63) throw ScaleError("explicit matroids are limited to 63 elements");
  detail::IndexMap index(ground);
  std::unordered_set<std::uint64_t> masks;
  for (const auto& s : family) {
    ElementSet canon = sets::normalize(s);
    if (canon.size() != s.size() || !sets::is_subset(canon, ground)) {
      throw InputError("explicit family member is not a subset of the ground set");
    }
    std::uint64_t mask = 0;
    for (Element e : canon) mask |= std::uint64_t{1} << index[e];
    masks.insert(mask);
  }
  return Matroid(ground, std::make_shared<detail::ExplicitOracle>(ground, std::move(masks)));
}

// ---------------------------------------------------------------------------
// Derived matroids

// (m | restrict_to) / contract, optionally truncated. Ground set is
// restrict_to \ contract; X is independent iff X + contract is independent
// in m and |X| <= truncate_to.
inline Matroid derive_minor(const Matroid& m, const ElementSet& restrict_to, const ElementSet& contract,
                            std::optional<int> truncate_to = std::nullopt) {
  if (!sets::is_canonical(restrict_to) || !sets::is_canonical(contract)) {
    throw InputError("minor arguments must be sets");
  }
  if (!sets::is_subset(restrict_to, m.ground())) throw InputError("restriction leaves the ground set");
  if (!sets::is_subset(contract, restrict_to)) throw InputError("contraction set outside the restriction");
  if (!m.independent(contract)) throw InputError("contraction set is dependent");
  if (truncate_to && *truncate_to < 0) throw InputError("negative truncation rank");
  return Matroid(sets::difference(restrict_to, contract),
                 std::make_shared<detail::MinorOracle>(m, contract, truncate_to));
}

inline Matroid truncate(const Matroid& m, int rank) { return derive_minor(m, m.ground(), {}, rank); }

struct DirectSumStructure {
  std::vector<ElementSet> blocks;
  std::vector<Matroid> parts;
  std::vector<int> block_index;  // by element id, -1 when absent

  std::size_t size() const { return blocks.size(); }
  int block_of(Element e) const {
    auto k = static_cast<std::size_t>(e);
    return k < block_index.size() ? block_index[k] : -1;
  }
};

struct DirectSum {
  Matroid matroid;
  DirectSumStructure structure;
};

inline DirectSum direct_sum(const std::vector<Matroid>& parts) {
  if (parts.empty()) throw InputError("direct sum of no matroids");
  DirectSumStructure st;
  ElementSet ground;
  for (const auto& p : parts) {
    if (!sets::intersect(ground, p.ground()).empty()) throw InputError("direct sum parts overlap");
    ground = sets::unite(ground, p.ground());
    st.blocks.push_back(p.ground());
    st.parts.push_back(p);
  }
  Element top = ground.empty() ? -1 : ground.back();
  st.block_index.assign(static_cast<std::size_t>(top + 1), -1);
  std::vector<int> local_block;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    for (Element e : parts[b].ground()) st.block_index[static_cast<std::size_t>(e)] = static_cast<int>(b);
  }
  for (Element e : ground) local_block.push_back(st.block_index[static_cast<std::size_t>(e)]);
  if (parts.size() == 1) return {parts.front(), std::move(st)};
  Matroid sum(ground, std::make_shared<detail::DirectSumOracle>(parts, ground, std::move(local_block)));
  return {std::move(sum), std::move(st)};
}

// ---------------------------------------------------------------------------
// Ordered matroids

class OrderedMatroid {
 public:
  // `order` lists the ground set from best to worst.
  OrderedMatroid(Matroid m, std::vector<Element> order) : matroid_(std::move(m)), order_(std::move(order)) {
    if (order_.size() != matroid_.size() || sets::normalize(order_) != matroid_.ground()) {
      throw InputError("order is not a permutation of the ground set");
    }
    Element top = matroid_.ground().empty() ? -1 : matroid_.ground().back();
    position_.assign(static_cast<std::size_t>(top + 1), -1);
    for (std::size_t k = 0; k < order_.size(); ++k) position_[static_cast<std::size_t>(order_[k])] = static_cast<int>(k);
  }

  const Matroid& matroid() const { return matroid_; }
  const std::vector<Element>& order() const { return order_; }
  const ElementSet& ground() const { return matroid_.ground(); }
  bool independent(std::span<const Element> x) const { return matroid_.independent(x); }

  // 0 is best.
  int position(Element e) const { return position_[static_cast<std::size_t>(e)]; }
  // u strictly better than v.
  bool prefers(Element u, Element v) const { return position(u) < position(v); }

  // Order restricted to x, best first.
  std::vector<Element> sorted(std::span<const Element> x) const {
    std::vector<Element> out(x.begin(), x.end());
    std::sort(out.begin(), out.end(), [&](Element a, Element b) { return prefers(a, b); });
    return out;
  }

 private:
  Matroid matroid_;
  std::vector<Element> order_;
  std::vector<int> position_;
};

// Greedy optimal base of the restriction to x.
inline ElementSet optimal_base(const OrderedMatroid& om, std::span<const Element> x) {
  ElementSet base;
  for (Element e : om.sorted(x)) {
    ElementSet cand = sets::plus(base, e);
    if (om.independent(cand)) base = std::move(cand);
  }
  return base;
}

// v is dominated by i: i+v is dependent and every valid exchange partner
// u (i-u+v independent) is strictly better than v.
inline bool is_dominated(const OrderedMatroid& om, std::span<const Element> i, Element v) {
  if (sets::contains(i, v)) throw InputError("dominated element must lie outside the set");
  if (om.independent(sets::plus(i, v))) return false;
  for (Element u : i) {
    if (om.independent(sets::exchange(i, u, v)) && !om.prefers(u, v)) return false;
  }
  return true;
}

// Some circuit inside x, or nothing if x is independent. Shrinks x one
// element at a time in ascending id order; for x = B + e with B a base
// this is the fundamental circuit.
inline std::optional<ElementSet> find_circuit(const Matroid& m, std::span<const Element> x) {
  ElementSet c(x.begin(), x.end());
  if (m.independent(c)) return std::nullopt;
  for (Element e : ElementSet(c)) {
    ElementSet smaller = sets::minus(c, e);
    if (!m.independent(smaller)) c = std::move(smaller);
  }
  return c;
}

inline int rank_of(const Matroid& m, std::span<const Element> x) {
  ElementSet base;
  for (Element e : x) {
    ElementSet cand = sets::plus(base, e);
    if (m.independent(cand)) base = std::move(cand);
  }
  return static_cast<int>(base.size());
}

inline bool is_base(const Matroid& m, std::span<const Element> x) {
  return m.independent(x) && static_cast<int>(x.size()) == rank_of(m, m.ground());
}

inline constexpr std::size_t kAxiomCheckLimit = 12;

// Exhaustive check of the matroid axioms. With heredity established, the
// exchange axiom only needs pairs with |B| = |A| + 1.
inline bool check_axioms(const Matroid& m) {
  const auto& g = m.ground();
  if (g.size() > kAxiomCheckLimit) {
    throw ScaleError("check_axioms is exhaustive and limited to " + std::to_string(kAxiomCheckLimit) +
                     " elements");
  }
  const std::uint64_t total = std::uint64_t{1} << g.size();
  std::vector<char> indep(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) indep[mask] = m.independent(sets::from_mask(g, mask));
  if (!indep[0]) return false;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!indep[mask]) continue;
    for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
      if (!indep[mask & ~(bits & -bits)]) return false;
    }
  }
  for (std::uint64_t a = 0; a < total; ++a) {
    if (!indep[a]) continue;
    for (std::uint64_t b = 0; b < total; ++b) {
      if (!indep[b] || std::popcount(b) != std::popcount(a) + 1) continue;
      bool found = false;
      for (std::uint64_t bits = b & ~a; bits && !found; bits &= bits - 1) {
        found = indep[a | (bits & -bits)];
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace popmat

#endif  // POPMAT_MATROID_HPP_
