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

// Versioned JSON instance files.
//
//   {
//     "version": 1,
//     "elements": ["e1", "e2", ...],
//     "side1": {"agents": [{"name": ..., "elements": [...],
//                           "matroid": {"kind": ...}, "order": [...]}],
//               "order": [...]},            // optional interleaving
//     "side2": {...},
//     "bmatching": {"agents": [{"name": ..., "side": "U" | "W",
//                               "capacity": c, "prefs": [...]}],
//                   "matching": [["u", "w"], ...]},   // optional
//     "metadata": {...}                                 // free-form
//   }
//
// Matroid descriptors name elements of their own agent:
//   free | uniform{rank} | partition{classes: [{elements, capacity}]}
//   laminar{sets: [{elements, capacity}]} | graphic{edges: [{element, ends}]}
//   transversal{rows: [{element, targets}]} | explicit{bases: [[...]]}
//   truncation{rank, of: descriptor}
//
// Either the two sides or the bmatching section (or both) must be present.

#ifndef POPMAT_INSTANCE_HPP_
#define POPMAT_INSTANCE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "popmat/common.hpp"
#include "popmat/lexpop.hpp"
#include "popmat/matroid.hpp"
#include "popmat/popular.hpp"
#include "popmat/voting.hpp"

namespace popmat {

using Json = nlohmann::ordered_json;

inline constexpr int kInstanceFormatVersion = 1;

struct AgentDescription {
  std::string name;
  std::vector<std::string> elements;
  Json matroid;
  std::vector<std::string> order;  // empty: declaration order of `elements`
};

struct SideDescription {
  std::vector<AgentDescription> agents;
  std::optional<std::vector<std::string>> order;
};

struct BMatchingDescription {
  std::vector<AgentSpec> agents;
  std::optional<std::vector<std::pair<std::string, std::string>>> matching;
};

struct InstanceDescription {
  int version = kInstanceFormatVersion;
  std::vector<std::string> elements;
  std::optional<SideDescription> side1;
  std::optional<SideDescription> side2;
  std::optional<BMatchingDescription> bmatching;
  Json metadata = Json::object();
};

namespace detail {

[[noreturn]] inline void fail_at(const std::string& path, const std::string& msg) {
  throw InputError(path + ": " + msg);
}

inline const Json& require_field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail_at(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(path, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail_at(path, "expected a string");
  return j.get<std::string>();
}

inline int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail_at(path, "expected an integer");
  return j.get<int>();
}

inline std::vector<std::string> as_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) fail_at(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_string(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::vector<int> as_ints(const Json& j, const std::string& path) {
  if (!j.is_array()) fail_at(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_int(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline SideDescription parse_side(const Json& j, const std::string& path) {
  SideDescription side;
  const Json& agents = require_field(j, "agents", path);
  if (!agents.is_array()) fail_at(path + ".agents", "expected an array");
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const std::string ap = path + ".agents[" + std::to_string(k) + "]";
    AgentDescription a;
    a.name = as_string(require_field(agents[k], "name", ap), ap + ".name");
    a.elements = as_strings(require_field(agents[k], "elements", ap), ap + ".elements");
    a.matroid = require_field(agents[k], "matroid", ap);
    if (agents[k].contains("order")) a.order = as_strings(agents[k]["order"], ap + ".order");
    side.agents.push_back(std::move(a));
  }
  if (j.contains("order")) side.order = as_strings(j["order"], path + ".order");
  return side;
}

inline BMatchingDescription parse_bmatching(const Json& j, const std::string& path) {
  BMatchingDescription bm;
  const Json& agents = require_field(j, "agents", path);
  if (!agents.is_array()) fail_at(path + ".agents", "expected an array");
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const std::string ap = path + ".agents[" + std::to_string(k) + "]";
    AgentSpec a;
    a.name = as_string(require_field(agents[k], "name", ap), ap + ".name");
    const std::string side = as_string(require_field(agents[k], "side", ap), ap + ".side");
    if (side == "U") {
      a.side = AgentSide::kU;
    } else if (side == "W") {
      a.side = AgentSide::kW;
    } else {
      fail_at(ap + ".side", "expected \"U\" or \"W\"");
    }
    a.capacity = as_int(require_field(agents[k], "capacity", ap), ap + ".capacity");
    a.prefs = as_strings(require_field(agents[k], "prefs", ap), ap + ".prefs");
    bm.agents.push_back(std::move(a));
  }
  if (j.contains("matching")) {
    const Json& m = j["matching"];
    if (!m.is_array()) fail_at(path + ".matching", "expected an array of pairs");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const std::string mp = path + ".matching[" + std::to_string(k) + "]";
      auto names = as_strings(m[k], mp);
      if (names.size() != 2) fail_at(mp, "expected a pair of agent names");
      pairs.push_back({names[0], names[1]});
    }
    bm.matching = std::move(pairs);
  }
  return bm;
}

}  // namespace detail

inline InstanceDescription parse_instance_json(const Json& j) {
  InstanceDescription d;
  if (!j.is_object()) detail::fail_at("$", "expected an object");
  d.version = detail::as_int(detail::require_field(j, "version", "$"), "$.version");
  if (d.version != kInstanceFormatVersion) {
    detail::fail_at("$.version", "unsupported format version " + std::to_string(d.version));
  }
  if (j.contains("elements")) d.elements = detail::as_strings(j["elements"], "$.elements");
  if (j.contains("side1") != j.contains("side2")) detail::fail_at("$", "side1 and side2 must appear together");
  if (j.contains("side1")) {
    if (!j.contains("elements")) detail::fail_at("$", "missing field 'elements'");
    d.side1 = detail::parse_side(j["side1"], "$.side1");
    d.side2 = detail::parse_side(j["side2"], "$.side2");
  }
  if (j.contains("bmatching")) d.bmatching = detail::parse_bmatching(j["bmatching"], "$.bmatching");
  if (!d.side1 && !d.bmatching) detail::fail_at("$", "instance has neither sides nor a bmatching section");
  if (j.contains("metadata")) d.metadata = j["metadata"];
  return d;
}

inline InstanceDescription parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance_json(j);
}

inline InstanceDescription load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

inline Json to_json(const InstanceDescription& d) {
  Json j;
  j["version"] = d.version;
  auto side_json = [](const SideDescription& s) {
    Json out;
    out["agents"] = Json::array();
    for (const auto& a : s.agents) {
      Json aj;
      aj["name"] = a.name;
      aj["elements"] = a.elements;
      aj["matroid"] = a.matroid;
      if (!a.order.empty()) aj["order"] = a.order;
      out["agents"].push_back(std::move(aj));
    }
    if (s.order) out["order"] = *s.order;
    return out;
  };
  if (d.side1) {
    j["elements"] = d.elements;
    j["side1"] = side_json(*d.side1);
    j["side2"] = side_json(*d.side2);
  }
  if (d.bmatching) {
    Json bm;
    bm["agents"] = Json::array();
    for (const auto& a : d.bmatching->agents) {
      Json aj;
      aj["name"] = a.name;
      aj["side"] = a.side == AgentSide::kU ? "U" : "W";
      aj["capacity"] = a.capacity;
      aj["prefs"] = a.prefs;
      bm["agents"].push_back(std::move(aj));
    }
    if (d.bmatching->matching) {
      bm["matching"] = Json::array();
      for (const auto& [a, b] : *d.bmatching->matching) bm["matching"].push_back({a, b});
    }
    j["bmatching"] = std::move(bm);
  }
  if (!d.metadata.empty()) j["metadata"] = d.metadata;
  return j;
}

// ---------------------------------------------------------------------------
// Building library objects

// A PopularInstance whose element k is `names[k]`.
struct NamedInstance {
  PopularInstance instance;
  std::vector<std::string> names;
  std::map<std::string, Element> ids;
  std::vector<std::string> agents1;  // agent names per summand, side 1
  std::vector<std::string> agents2;

  ElementSet parse_set(const std::vector<std::string>& xs, const std::string& what = "set") const {
    ElementSet out;
    for (const auto& x : xs) {
      auto it = ids.find(x);
      if (it == ids.end()) throw InputError(what + ": unknown element '" + x + "'");
      out.push_back(it->second);
    }
    ElementSet canon = sets::normalize(out);
    if (canon.size() != out.size()) throw InputError(what + ": element listed twice");
    return canon;
  }

  std::vector<std::string> name_set(const ElementSet& x) const {
    std::vector<std::string> out;
    for (Element e : x) out.push_back(names[static_cast<std::size_t>(e)]);
    return out;
  }
};

namespace detail {

using NameIndex = std::map<std::string, Element>;

inline ElementSet resolve(const std::vector<std::string>& xs, const NameIndex& local, const std::string& path) {
  ElementSet out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    auto it = local.find(xs[k]);
    if (it == local.end()) fail_at(path + "[" + std::to_string(k) + "]", "element '" + xs[k] + "' is not owned by this agent");
    out.push_back(it->second);
  }
  ElementSet canon = sets::normalize(out);
  if (canon.size() != out.size()) fail_at(path, "element listed twice");
  return canon;
}

inline Element resolve_one(const Json& j, const NameIndex& local, const std::string& path) {
  return resolve({as_string(j, path)}, local, path)[0];
}

inline std::vector<CapacitatedSet> capacitated_sets(const Json& list, const NameIndex& local, const std::string& path) {
  if (!list.is_array()) fail_at(path, "expected an array");
  std::vector<CapacitatedSet> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    out.push_back({resolve(as_strings(require_field(list[k], "elements", p), p + ".elements"), local, p + ".elements"),
                   as_int(require_field(list[k], "capacity", p), p + ".capacity")});
  }
  return out;
}

inline Matroid build_matroid(const Json& d, const ElementSet& ground, const NameIndex& local, const std::string& path) {
  const std::string kind = as_string(require_field(d, "kind", path), path + ".kind");
  Matroid m = [&]() -> Matroid {
    try {
      if (kind == "free") return free_matroid(ground);
      if (kind == "uniform") return uniform_matroid(ground, as_int(require_field(d, "rank", path), path + ".rank"));
      if (kind == "partition") return partition_matroid(capacitated_sets(require_field(d, "classes", path), local, path + ".classes"));
      if (kind == "laminar") return laminar_matroid(ground, capacitated_sets(require_field(d, "sets", path), local, path + ".sets"));
      if (kind == "graphic") {
        const Json& edges = require_field(d, "edges", path);
        if (!edges.is_array()) fail_at(path + ".edges", "expected an array");
        std::vector<GraphEdge> out;
        for (std::size_t k = 0; k < edges.size(); ++k) {
          const std::string p = path + ".edges[" + std::to_string(k) + "]";
          auto ends = as_ints(require_field(edges[k], "ends", p), p + ".ends");
          if (ends.size() != 2) fail_at(p + ".ends", "expected two vertex ids");
          out.push_back({resolve_one(require_field(edges[k], "element", p), local, p + ".element"), ends[0], ends[1]});
        }
        return graphic_matroid(out);
      }
      if (kind == "transversal") {
        const Json& rows = require_field(d, "rows", path);
        if (!rows.is_array()) fail_at(path + ".rows", "expected an array");
        std::vector<TransversalRow> out;
        for (std::size_t k = 0; k < rows.size(); ++k) {
          const std::string p = path + ".rows[" + std::to_string(k) + "]";
          out.push_back({resolve_one(require_field(rows[k], "element", p), local, p + ".element"),
                         as_ints(require_field(rows[k], "targets", p), p + ".targets")});
        }
        return transversal_matroid(out);
      }
      if (kind == "explicit") {
        const Json& bases = require_field(d, "bases", path);
        if (!bases.is_array() || bases.empty()) fail_at(path + ".bases", "expected a non-empty array of sets");
        if (ground.size() > 63) fail_at(path, "explicit matroids are limited to 63 elements");
        // Independent sets are all subsets of the listed bases.
        std::vector<std::uint64_t> masks;
        for (std::size_t k = 0; k < bases.size(); ++k) {
          const std::string p = path + ".bases[" + std::to_string(k) + "]";
          std::uint64_t mask = 0;
          for (Element e : resolve(as_strings(bases[k], p), local, p)) {
            mask |= std::uint64_t{1} << (std::lower_bound(ground.begin(), ground.end(), e) - ground.begin());
          }
          masks.push_back(mask);
        }
        std::vector<std::uint64_t> closed;
        for (std::uint64_t b : masks) {
          for (std::uint64_t sub = b;; sub = (sub - 1) & b) {
            closed.push_back(sub);
            if (!sub) break;
          }
        }
        std::sort(closed.begin(), closed.end());
        closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
        std::vector<ElementSet> family;
        for (std::uint64_t mask : closed) family.push_back(sets::from_mask(ground, mask));
        Matroid em = explicit_matroid(ground, family);
        if (ground.size() <= kAxiomCheckLimit && !check_axioms(em)) {
          fail_at(path, "listed bases do not form a matroid");
        }
        return em;
      }
      if (kind == "truncation") {
        Matroid inner = build_matroid(require_field(d, "of", path), ground, local, path + ".of");
        return truncate(inner, as_int(require_field(d, "rank", path), path + ".rank"));
      }
    } catch (const ScaleError& e) {
      fail_at(path, e.what());
    } catch (const InputError& e) {
      const std::string msg = e.what();
      if (msg.rfind("$", 0) == 0) throw;
      fail_at(path, msg);
    }
    fail_at(path + ".kind", "unknown matroid kind '" + kind + "'");
  }();
  if (m.ground() != ground) fail_at(path, "matroid does not cover exactly the agent's elements");
  return m;
}

inline Side build_side(const SideDescription& sd, const NameIndex& ids, const std::vector<std::string>& names, int k,
                       std::vector<std::string>& agent_names) {
  const std::string path = "$.side" + std::to_string(k);
  std::vector<int> owner(names.size(), -1);
  std::vector<Matroid> parts;
  std::vector<std::vector<Element>> agent_orders;
  for (std::size_t a = 0; a < sd.agents.size(); ++a) {
    const AgentDescription& ad = sd.agents[a];
    const std::string ap = path + ".agents[" + std::to_string(a) + "]";
    NameIndex local;
    for (std::size_t k2 = 0; k2 < ad.elements.size(); ++k2) {
      const std::string& name = ad.elements[k2];
      auto it = ids.find(name);
      if (it == ids.end()) fail_at(ap + ".elements[" + std::to_string(k2) + "]", "unknown element '" + name + "'");
      auto& o = owner[static_cast<std::size_t>(it->second)];
      if (o >= 0) fail_at(ap + ".elements", "element '" + name + "' owned twice on side " + std::to_string(k));
      o = static_cast<int>(a);
      local[name] = it->second;
    }
    const ElementSet ground = resolve(ad.elements, local, ap + ".elements");
    parts.push_back(build_matroid(ad.matroid, ground, local, ap + ".matroid"));
    std::vector<Element> order;
    if (ad.order.empty()) {
      for (const auto& name : ad.elements) order.push_back(local.at(name));
    } else {
      std::vector<char> seen(names.size(), 0);
      for (std::size_t k2 = 0; k2 < ad.order.size(); ++k2) {
        auto it = local.find(ad.order[k2]);
        const std::string op = ap + ".order[" + std::to_string(k2) + "]";
        if (it == local.end()) fail_at(op, "element '" + ad.order[k2] + "' is not owned by this agent");
        if (seen[static_cast<std::size_t>(it->second)]++) fail_at(op, "element '" + ad.order[k2] + "' ranked twice");
        order.push_back(it->second);
      }
      for (const auto& name : ad.elements) {
        if (!seen[static_cast<std::size_t>(local.at(name))]) fail_at(ap + ".order", "order is missing element '" + name + "'");
      }
    }
    agent_orders.push_back(std::move(order));
    agent_names.push_back(ad.name);
  }
  for (std::size_t e = 0; e < names.size(); ++e) {
    if (owner[e] < 0) fail_at(path, "element '" + names[e] + "' is not owned by any agent on side " + std::to_string(k));
  }
  std::vector<Element> global;
  if (sd.order) {
    std::vector<char> seen(names.size(), 0);
    for (std::size_t k2 = 0; k2 < sd.order->size(); ++k2) {
      const std::string& name = (*sd.order)[k2];
      auto it = ids.find(name);
      const std::string op = path + ".order[" + std::to_string(k2) + "]";
      if (it == ids.end()) fail_at(op, "unknown element '" + name + "'");
      if (seen[static_cast<std::size_t>(it->second)]++) fail_at(op, "element '" + name + "' ranked twice");
      global.push_back(it->second);
    }
    for (std::size_t e = 0; e < names.size(); ++e) {
      if (!seen[e]) fail_at(path + ".order", "order is missing element '" + names[e] + "'");
    }
    // The interleaving must agree with every agent's own order.
    std::vector<std::size_t> next(agent_orders.size(), 0);
    for (Element e : global) {
      auto a = static_cast<std::size_t>(owner[static_cast<std::size_t>(e)]);
      if (agent_orders[a][next[a]++] != e) {
        fail_at(path + ".order", "interleaving disagrees with the order of agent '" + sd.agents[a].name + "'");
      }
    }
  } else {
    for (const auto& o : agent_orders) global.insert(global.end(), o.begin(), o.end());
  }
  if (parts.empty()) parts.push_back(free_matroid({}));
  Side side = make_side(parts, std::move(global));
  for (Element e : side.ground()) {
    if (!side.independent(ElementSet{e})) {
      fail_at(path, "element '" + names[static_cast<std::size_t>(e)] + "' is a loop");
    }
  }
  return side;
}

}  // namespace detail

inline NamedInstance build_popular_instance(const InstanceDescription& d) {
  if (!d.side1 || !d.side2) throw InputError("$: instance has no side1/side2 sections");
  detail::NameIndex ids;
  for (std::size_t k = 0; k < d.elements.size(); ++k) {
    if (!ids.emplace(d.elements[k], static_cast<Element>(k)).second) {
      detail::fail_at("$.elements[" + std::to_string(k) + "]", "duplicate element '" + d.elements[k] + "'");
    }
  }
  std::vector<std::string> a1, a2;
  Side s1 = detail::build_side(*d.side1, ids, d.elements, 1, a1);
  Side s2 = detail::build_side(*d.side2, ids, d.elements, 2, a2);
  return NamedInstance{PopularInstance(std::move(s1), std::move(s2)), d.elements, std::move(ids), std::move(a1),
                       std::move(a2)};
}

struct NamedBMatching {
  BMatchingInstance instance;
  std::optional<BMatching> matching;
};

inline NamedBMatching build_bmatching_instance(const InstanceDescription& d) {
  if (!d.bmatching) throw InputError("$: instance has no bmatching section");
  NamedBMatching out{build_bmatching(d.bmatching->agents), std::nullopt};
  if (d.bmatching->matching) {
    out.matching = make_bmatching(out.instance, *d.bmatching->matching);
    if (!is_b_matching(out.instance, *out.matching)) throw InputError("$.bmatching.matching: violates capacities");
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> edge_names(const BMatchingInstance& inst, const BMatching& mu) {
  std::vector<std::pair<std::string, std::string>> out;
  for (int e : mu) out.push_back({inst.agent(inst.edge(e).u).name, inst.agent(inst.edge(e).w).name});
  return out;
}

inline InstanceDescription describe_bmatching(const BMatchingInstance& inst, const std::optional<BMatching>& mu,
                                              Json metadata = Json::object()) {
  InstanceDescription d;
  BMatchingDescription bm;
  for (std::size_t a = 0; a < inst.agent_count(); ++a) {
    const LexAgent& agent = inst.agents()[a];
    AgentSpec s{agent.name, agent.side, agent.capacity, {}};
    for (int e : agent.prefs) s.prefs.push_back(inst.agent(inst.other_end(e, static_cast<int>(a))).name);
    bm.agents.push_back(std::move(s));
  }
  if (mu) bm.matching = edge_names(inst, *mu);
  d.bmatching = std::move(bm);
  d.metadata = std::move(metadata);
  return d;
}

// ---------------------------------------------------------------------------
// Random instances

enum class RandomFamily { kPartition, kGraphic, kExplicit };

inline const char* family_name(RandomFamily f) {
  switch (f) {
    case RandomFamily::kPartition: return "partition";
    case RandomFamily::kGraphic: return "graphic";
    case RandomFamily::kExplicit: return "explicit";
  }
  return "?";
}

inline RandomFamily parse_family(const std::string& s) {
  if (s == "partition") return RandomFamily::kPartition;
  if (s == "graphic") return RandomFamily::kGraphic;
  if (s == "explicit") return RandomFamily::kExplicit;
  throw InputError("unknown family '" + s + "' (expected partition, graphic or explicit)");
}

inline constexpr int kMaxRandomSize = 16;

struct GeneratorOptions {
  int max_capacity = 0;        // caps every partition class capacity when positive
  bool split_classes = true;   // allow two-class partition summands
};

namespace detail {

inline std::vector<std::string> element_names(int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n; ++k) out.push_back("e" + std::to_string(k));
  return out;
}

// Splits 0..n-1 into `agents` non-empty random groups.
inline std::vector<std::vector<int>> random_groups(Rng& rng, int n, int agents) {
  agents = std::clamp(agents, 1, std::max(1, n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
  rng.shuffle(perm);
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(agents));
  for (int k = 0; k < n; ++k) {
    const auto g = k < agents ? static_cast<std::size_t>(k) : static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(agents)));
    groups[g].push_back(perm[static_cast<std::size_t>(k)]);
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

inline std::vector<std::string> pick(const std::vector<std::string>& names, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int k : idx) out.push_back(names[static_cast<std::size_t>(k)]);
  return out;
}

inline Json random_partition_descriptor(Rng& rng, const std::vector<std::string>& elems, const GeneratorOptions& opt) {
  auto cap = [&](int size) {
    int c = rng.between(1, size);
    return opt.max_capacity > 0 ? std::min(c, opt.max_capacity) : c;
  };
  Json d{{"kind", "partition"}, {"classes", Json::array()}};
  const int n = static_cast<int>(elems.size());
  if (opt.split_classes && n >= 3 && rng.coin(1, 3)) {
    const int cut = rng.between(1, n - 1);
    std::vector<std::string> a(elems.begin(), elems.begin() + cut), b(elems.begin() + cut, elems.end());
    d["classes"].push_back({{"elements", a}, {"capacity", cap(cut)}});
    d["classes"].push_back({{"elements", b}, {"capacity", cap(n - cut)}});
  } else {
    d["classes"].push_back({{"elements", elems}, {"capacity", cap(n)}});
  }
  return d;
}

inline Json random_graphic_descriptor(Rng& rng, const std::vector<std::string>& elems) {
  const int n = static_cast<int>(elems.size());
  Json d{{"kind", "graphic"}, {"edges", Json::array()}};
  std::size_t k = 0;
  if (n >= 6 && rng.coin(1, 3)) {
    // The first six elements form K4 on vertices 0..3.
    const int k4[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (; k < 6; ++k) d["edges"].push_back({{"element", elems[k]}, {"ends", {k4[k][0], k4[k][1]}}});
  }
  const int vertices = rng.between(2, std::max(2, std::min(n, 6)));
  for (; k < elems.size(); ++k) {
    const int t = rng.between(0, vertices - 1);
    int h = rng.between(0, vertices - 2);
    if (h >= t) ++h;
    d["edges"].push_back({{"element", elems[k]}, {"ends", {t, h}}});
  }
  return d;
}

// Sparse paving matroid: all r-subsets except a family of circuit
// hyperplanes pairwise meeting in at most r-2 elements.
inline Json random_explicit_descriptor(Rng& rng, const std::vector<std::string>& elems) {
  const int n = static_cast<int>(elems.size());
  const int r = rng.between(1, std::min(n, 4));
  std::vector<std::uint64_t> removed;
  if (r >= 2 && n > r) {
    for (int attempt = 0; attempt < n; ++attempt) {
      std::vector<int> idx(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) idx[static_cast<std::size_t>(k)] = k;
      rng.shuffle(idx);
      std::uint64_t h = 0;
      for (int k = 0; k < r; ++k) h |= std::uint64_t{1} << idx[static_cast<std::size_t>(k)];
      bool ok = true;
      for (std::uint64_t o : removed) ok = ok && std::popcount(o & h) <= r - 2;
      if (ok) removed.push_back(h);
    }
  }
  Json bases = Json::array();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != r || std::find(removed.begin(), removed.end(), mask) != removed.end()) continue;
    std::vector<std::string> b;
    for (int k = 0; k < n; ++k) {
      if (mask >> k & 1) b.push_back(elems[static_cast<std::size_t>(k)]);
    }
    bases.push_back(b);
  }
  return Json{{"kind", "explicit"}, {"bases", bases}};
}

inline SideDescription random_side(Rng& rng, const std::vector<std::string>& names, RandomFamily kind, int max_agents,
                                   const GeneratorOptions& opt, const std::string& prefix) {
  const int n = static_cast<int>(names.size());
  SideDescription sd;
  auto groups = random_groups(rng, n, rng.between(1, std::max(1, max_agents)));
  // Keep explicit summands small enough for exhaustive axiom checks.
  auto too_big = [&] {
    for (const auto& g : groups) {
      if (kind == RandomFamily::kExplicit && g.size() > kAxiomCheckLimit) return true;
    }
    return false;
  };
  while (too_big()) groups = random_groups(rng, n, std::max(2, max_agents));
  std::vector<std::vector<std::string>> orders;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    AgentDescription a;
    a.name = prefix + std::to_string(g + 1);
    a.elements = pick(names, groups[g]);
    switch (kind) {
      case RandomFamily::kPartition: a.matroid = random_partition_descriptor(rng, a.elements, opt); break;
      case RandomFamily::kGraphic: a.matroid = random_graphic_descriptor(rng, a.elements); break;
      case RandomFamily::kExplicit: a.matroid = random_explicit_descriptor(rng, a.elements); break;
    }
    a.order = a.elements;
    rng.shuffle(a.order);
    orders.push_back(a.order);
    sd.agents.push_back(std::move(a));
  }
  // Random interleaving of the agent orders.
  std::vector<std::string> global;
  std::vector<std::size_t> next(orders.size(), 0);
  while (global.size() < names.size()) {
    std::vector<std::size_t> live;
    for (std::size_t a = 0; a < orders.size(); ++a) {
      if (next[a] < orders[a].size()) live.push_back(a);
    }
    const std::size_t a = live[rng.below(live.size())];
    global.push_back(orders[a][next[a]++]);
  }
  sd.order = std::move(global);
  return sd;
}

}  // namespace detail

// Deterministic for fixed arguments. partition: both sides are direct sums
// of partition matroids (b-matching like); graphic: side 1 graphic
// summands, side 2 partition; explicit: random sparse paving summands on
// both sides.
inline InstanceDescription generate_random_instance(RandomFamily family, int size, std::uint64_t seed,
                                                    const GeneratorOptions& opt = {}) {
  if (size < 1 || size > kMaxRandomSize) {
    throw InputError("random instance size must be in 1.." + std::to_string(kMaxRandomSize));
  }
  Rng rng(seed ^ (static_cast<std::uint64_t>(family) + 1) * 0x2545f4914f6cdd1dULL ^ static_cast<std::uint64_t>(size) << 40);
  InstanceDescription d;
  d.elements = detail::element_names(size);
  switch (family) {
    case RandomFamily::kPartition:
      d.side1 = detail::random_side(rng, d.elements, RandomFamily::kPartition, std::max(1, size / 2), opt, "p");
      d.side2 = detail::random_side(rng, d.elements, RandomFamily::kPartition, std::max(1, size / 2), opt, "q");
      break;
    case RandomFamily::kGraphic:
      d.side1 = detail::random_side(rng, d.elements, RandomFamily::kGraphic, size > 8 ? 2 : 1, opt, "g");
      d.side2 = detail::random_side(rng, d.elements, RandomFamily::kPartition, std::max(1, size / 2), opt, "q");
      break;
    case RandomFamily::kExplicit:
      d.side1 = detail::random_side(rng, d.elements, RandomFamily::kExplicit, size > 8 ? 3 : 2, opt, "x");
      d.side2 = detail::random_side(rng, d.elements, RandomFamily::kExplicit, size > 8 ? 3 : 2, opt, "y");
      break;
  }
  d.metadata = Json{{"generator", {{"family", family_name(family)}, {"size", size}, {"seed", seed}}}};
  return d;
}

}  // namespace popmat

#endif  // POPMAT_INSTANCE_HPP_
