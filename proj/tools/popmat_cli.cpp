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

// Command line front end. Reports go to stdout as JSON, a one-line summary
// to stderr. Exit codes: 1 bad input, 2 scale refusal, 3 invariant
// violation, 4 incomplete search.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "popmat/instance.hpp"
#include "popmat/kernel.hpp"
#include "popmat/lexpop.hpp"
#include "popmat/popular.hpp"
#include "popmat/trials.hpp"
#include "popmat/voting.hpp"

namespace popmat {
namespace {

constexpr int kExitInput = 1;
constexpr int kExitScale = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIncomplete = 4;

struct Context {
  std::vector<std::string> argv;
  bool timing = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

Context g_ctx;

std::vector<std::string> split_names(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Json report(const Json& seed, Json result, Json verification) {
  Json r;
  r["command"] = g_ctx.argv;
  r["seed"] = seed;
  r["result"] = std::move(result);
  r["verification"] = std::move(verification);
  if (g_ctx.timing) {
    r["timing"] = {{"wall_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - g_ctx.start).count()}};
  }
  return r;
}

void emit(const Json& j, const std::string& summary) {
  std::cout << j.dump(2) << "\n";
  std::cerr << summary << "\n";
}

Json named(const NamedInstance& ni, const ElementSet& x) { return ni.name_set(x); }

std::string joined(const std::vector<std::string>& xs) {
  std::string out = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + xs[k];
  return out + "}";
}

Json verdict_json(const NamedInstance& ni, const PopularityVerdict& v) {
  Json j;
  for (Notion n : kNotions) {
    Json entry{{"holds", v[n]}};
    const auto& ce = v.counterexample[static_cast<std::size_t>(n)];
    entry["counterexample"] = ce ? named(ni, *ce) : Json(nullptr);
    j[notion_name(n)] = std::move(entry);
  }
  j["compared"] = v.compared;
  j["chain_checks"] = v.chain_checks;
  return j;
}

// ---------------------------------------------------------------------------
// Popular sets

int cmd_solve(const std::string& path, bool verify, std::size_t bound) {
  NamedInstance ni = build_popular_instance(load_instance(path));
  PopularSolution sol = max_popular(ni.instance);
  ExtendedInstance ext = extend_instance(ni.instance);
  Json copies = Json::array();
  for (Element star : sol.extended_kernel) {
    const std::string& base = ni.names[static_cast<std::size_t>(ext.project(star))];
    copies.push_back((ext.is_x_copy(star) ? "x(" : "y(") + base + ")");
  }
  Json result{{"set", named(ni, sol.set)}, {"size", sol.set.size()}, {"extended_kernel", copies},
              {"rounds", sol.trace.rounds.size()}};
  Json verification = nullptr;
  std::string summary = "max popular set " + joined(ni.name_set(sol.set)) + " of size " + std::to_string(sol.set.size());
  if (verify) {
    PopularityVerdict v = classify(ni.instance, sol.set, bound);
    const std::size_t best = max_weakly_defendable_size(ni.instance, bound);
    verification = verdict_json(ni, v);
    verification["max_weakly_defendable_size"] = best;
    verification["maximum"] = best == sol.set.size();
    if (!v.super_popular() || best != sol.set.size()) {
      emit(report(nullptr, result, verification), summary + "; verification FAILED");
      return kExitInvariant;
    }
    summary += "; verified super popular and maximum";
  }
  emit(report(nullptr, result, verification), summary);
  return 0;
}

int cmd_kernel(const std::string& path) {
  NamedInstance ni = build_popular_instance(load_instance(path));
  KernelInstance ki(ni.instance.first().om, ni.instance.second().om);
  KernelResult kr = find_kernel(ki);
  Json rounds = Json::array();
  for (const auto& r : kr.trace.rounds) {
    rounds.push_back({{"proposed", named(ni, r.proposed)}, {"accepted", named(ni, r.accepted)}, {"rejected", named(ni, r.rejected)}});
  }
  KernelCheck check = is_kernel(ki, kr.kernel);
  if (!check.is_kernel) throw InvariantViolation("deferred acceptance output is not a kernel");
  emit(report(nullptr, {{"kernel", named(ni, kr.kernel)}, {"size", kr.kernel.size()}, {"trace", rounds}},
              {{"is_kernel", check.is_kernel}, {"blockers", named(ni, check.blockers)}}),
       "kernel " + joined(ni.name_set(kr.kernel)) + " after " + std::to_string(kr.trace.rounds.size()) + " rounds");
  return 0;
}

int cmd_vote(const std::string& path, const std::string& set_i, const std::string& set_j, bool weak) {
  NamedInstance ni = build_popular_instance(load_instance(path));
  const ElementSet i = ni.parse_set(split_names(set_i), "--set-i");
  const ElementSet j = ni.parse_set(split_names(set_j), "--set-j");
  for (const auto& [x, what] : {std::pair{&i, "--set-i"}, std::pair{&j, "--set-j"}}) {
    if (!ni.instance.common_independent(*x)) throw InputError(std::string(what) + ": not a common independent set");
  }
  const PairingMode mode = weak ? PairingMode::kWeaklyFeasible : PairingMode::kFeasible;
  Json sides = Json::array();
  int total = 0;
  for (int k = 1; k <= 2; ++k) {
    const Side& side = ni.instance.side(k);
    VoteBundle vb = vote_bundle(side, i, j);
    auto r = vote_in_mode(side, i, j, mode);
    if (!r) throw InvariantViolation("no pairing between independent sets");
    Json pairing = Json::array();
    for (auto [a, b] : r->witness) {
      pairing.push_back({ni.names[static_cast<std::size_t>(a)], ni.names[static_cast<std::size_t>(b)]});
    }
    sides.push_back({{"side", k}, {"value", r->value}, {"pairing", pairing},
                     {"chain", {vb.weak_forward, vb.forward, -vb.backward, -vb.weak_backward}}});
    total += r->value;
  }
  emit(report(nullptr, {{"mode", mode_name(mode)}, {"total", total}, {"sides", sides}}, {{"chain_holds", true}}),
       std::string(weak ? "vote_weak" : "vote") + "(I, J) = " + std::to_string(total));
  return 0;
}

int cmd_verify(const std::string& path, const std::string& set, std::size_t bound) {
  NamedInstance ni = build_popular_instance(load_instance(path));
  const ElementSet x = ni.parse_set(split_names(set), "--set");
  PopularityVerdict v = classify(ni.instance, x, bound);
  std::string summary = joined(ni.name_set(x)) + ":";
  for (Notion n : kNotions) summary += std::string(" ") + notion_name(n) + "=" + (v[n] ? "yes" : "no");
  emit(report(nullptr, {{"set", named(ni, x)}}, verdict_json(ni, v)), summary);
  return 0;
}

int cmd_check_theorems(int trials, std::uint64_t seed, const std::string& families, int jobs) {
  std::vector<RandomFamily> fams;
  for (const auto& f : split_names(families)) fams.push_back(parse_family(f));
  PropertyRun run = check_theorems(trials, seed, fams, jobs);
  Json fam_names = Json::array();
  for (RandomFamily f : fams) fam_names.push_back(family_name(f));
  auto count = [&](int holds) { return Json{{"holds", holds}, {"trials", run.trials}}; };
  Json result{{"trials", run.trials},
              {"families", fam_names},
              {"exchange_inequality", count(run.exchange_holds)},
              {"max_min_disjoint_bases", count(run.max_min_holds)},
              {"dual_filtered_perfect_matching", count(run.dual_filter_holds)},
              {"vote_chain", {{"checks", run.chain_checks}, {"violations", 0}}},
              {"bruteforce_agreement", count(run.bruteforce_agrees)},
              {"failures", run.failures}};
  const bool ok = run.all_hold();
  emit(report(seed, result, {{"all_hold", ok}}),
       std::to_string(run.exchange_holds) + "/" + std::to_string(run.trials) + " trials hold" +
           (ok ? "" : ", " + std::to_string(run.failures.size()) + " failures"));
  return ok ? 0 : kExitInvariant;
}

// ---------------------------------------------------------------------------
// Lexicographic popularity

Json matching_json(const BMatchingInstance& inst, const BMatching& mu) {
  Json out = Json::array();
  for (const auto& [a, b] : edge_names(inst, mu)) out.push_back({a, b});
  return out;
}

NamedBMatching load_with_matching(const std::string& path) {
  NamedBMatching nb = build_bmatching_instance(load_instance(path));
  if (!nb.matching) throw InputError("$.bmatching: missing field 'matching'");
  return nb;
}

int cmd_lex_verify(const std::string& path, const DominationOptions& opt) {
  NamedBMatching nb = load_with_matching(path);
  DominationSearch s = find_lex_dominating(nb.instance, *nb.matching, opt);
  const LexPopularity status = s.status == DominationStatus::kFound           ? LexPopularity::kDominated
                               : s.status == DominationStatus::kNoneCertified ? LexPopularity::kPopular
                                                                              : LexPopularity::kIncomplete;
  Json result{{"status", popularity_name(status)}, {"explored", s.explored}};
  if (s.witness) {
    result["witness"] = matching_json(nb.instance, *s.witness);
    result["witness_vote"] = s.witness_vote;
  }
  emit(report(opt.seed, result, {{"exhaustive", s.exhaustive}}), std::string("lexicographically ") + popularity_name(status));
  return status == LexPopularity::kIncomplete ? kExitIncomplete : 0;
}

int cmd_lex_dominate(const std::string& path, const DominationOptions& opt) {
  NamedBMatching nb = load_with_matching(path);
  DominationSearch s = find_lex_dominating(nb.instance, *nb.matching, opt);
  Json result{{"status", status_name(s.status)}, {"explored", s.explored}};
  if (s.witness) {
    result["witness"] = matching_json(nb.instance, *s.witness);
    result["witness_vote"] = s.witness_vote;
  }
  emit(report(opt.seed, result, {{"exhaustive", s.exhaustive}}), std::string("domination search: ") + status_name(s.status));
  return s.status == DominationStatus::kIncomplete ? kExitIncomplete : 0;
}

void emit_instance(const InstanceDescription& d, const std::string& summary) {
  std::cout << to_json(d).dump(2) << "\n";
  std::cerr << summary << "\n";
}

int cmd_gen_gadget(int q, bool dummies, const std::string& which) {
  BMatchingInstance inst = build_gadget(q, dummies);
  std::optional<BMatching> mu;
  if (which == "popular") {
    mu = gadget_popular(inst);
  } else if (which == "candidate") {
    mu = gadget_forced_candidate(inst);
  } else if (which == "dominator") {
    mu = gadget_dominator(inst);
  } else if (which != "none") {
    throw InputError("--matching must be one of none, popular, candidate, dominator");
  }
  emit_instance(describe_bmatching(inst, mu, {{"generator", {{"name", "gadget"}, {"q", q}, {"dummies", dummies}}}}),
                "gadget with q=" + std::to_string(q) + ", " + std::to_string(inst.agent_count()) + " agents");
  return 0;
}

X3CInstance parse_x3c(int n, const std::string& sets) {
  X3CInstance x;
  x.n = n;
  std::string normalized = sets;
  std::replace(normalized.begin(), normalized.end(), '/', ';');
  for (const auto& s : split_names(normalized, ';')) {
    const auto parts = split_names(s, ',');
    if (parts.size() != 3) throw InputError("--sets: every set needs three elements, got '" + s + "'");
    std::array<int, 3> t{};
    for (std::size_t k = 0; k < 3; ++k) {
      try {
        t[k] = std::stoi(parts[k]);
      } catch (const std::exception&) {
        throw InputError("--sets: '" + parts[k] + "' is not an integer");
      }
    }
    x.sets.push_back(t);
  }
  validate_x3c(x);
  return x;
}

int cmd_gen_x3c(int n, const std::string& sets, const std::string& cover) {
  X3CReduction red = build_x3c_reduction(parse_x3c(n, sets));
  Json source = Json::array();
  for (const auto& s : red.source.sets) source.push_back(s);
  Json meta{{"generator", {{"name", "x3c"}, {"n", n}, {"sets", source}}}};
  std::string summary = std::to_string(red.instance.agent_count()) + " agents";
  if (!cover.empty()) {
    std::vector<int> c;
    for (const auto& s : split_names(cover)) c.push_back(std::stoi(s));
    BMatching w = x3c_domination_witness(red, c);
    meta["witness"] = matching_json(red.instance, w);
    meta["witness_vote"] = lex_vote_total(red.instance, red.candidate, w);
    summary += ", cover witness vote " + std::to_string(meta["witness_vote"].get<int>());
  }
  emit_instance(describe_bmatching(red.instance, red.candidate, meta), summary);
  return 0;
}

int cmd_lex_equalize(const std::string& path) {
  NamedBMatching nb = build_bmatching_instance(load_instance(path));
  EqualizedInstance eq = equalize_capacities(nb.instance);
  std::optional<BMatching> mu;
  if (nb.matching) {
    BMatching m = *nb.matching;
    m.insert(m.end(), eq.fixed.begin(), eq.fixed.end());
    std::sort(m.begin(), m.end());
    mu = m;
  }
  emit_instance(describe_bmatching(eq.instance, mu, {{"equalized", {{"capacity", eq.capacity}, {"dummy_edges", eq.fixed.size()}}}}),
                "equalized to capacity " + std::to_string(eq.capacity) + " with " + std::to_string(eq.fixed.size()) +
                    " dummy edges");
  return 0;
}

int cmd_gen_random(const std::string& family, int size, std::uint64_t seed) {
  InstanceDescription d = generate_random_instance(parse_family(family), size, seed);
  emit_instance(d, family + " instance with " + std::to_string(size) + " elements");
  return 0;
}

int run(int argc, char** argv) {
  for (int k = 1; k < argc; ++k) g_ctx.argv.push_back(argv[k]);
  CLI::App app{"Popular common independent sets of ordered matroids, kernels and lexicographic b-matchings"};
  app.require_subcommand(1);
  app.add_flag("--timing", g_ctx.timing, "Include wall-clock timing in reports");
  std::function<int()> action;

  std::string path, set_i, set_j, set, families = "partition,graphic,explicit", which = "none", sets, cover, family;
  bool verify = false, weak = false, dummies = false;
  std::size_t bound = kDefaultClassifyBound;
  int trials = 100, jobs = 1, q = 1, n = 1, size = 8;
  std::uint64_t seed = 1;
  DominationOptions dopt;

  auto* solve = app.add_subcommand("solve", "Maximum popular common independent set");
  solve->add_option("instance", path, "Instance file")->required();
  solve->add_flag("--verify", verify, "Check the output by brute force");
  solve->add_option("--bound", bound, "Largest ground set for brute force");
  solve->callback([&] { action = [&] { return cmd_solve(path, verify, bound); }; });

  auto* kernel = app.add_subcommand("kernel", "Kernel of the two ordered matroids by deferred acceptance");
  kernel->add_option("instance", path, "Instance file")->required();
  kernel->callback([&] { action = [&] { return cmd_kernel(path); }; });

  auto* vote_cmd = app.add_subcommand("vote", "Vote of I against J on both sides");
  vote_cmd->add_option("instance", path, "Instance file")->required();
  vote_cmd->add_option("--set-i", set_i, "Comma-separated elements of I")->required();
  vote_cmd->add_option("--set-j", set_j, "Comma-separated elements of J")->required();
  vote_cmd->add_flag("--weak", weak, "Use weakly feasible pairings");
  vote_cmd->callback([&] { action = [&] { return cmd_vote(path, set_i, set_j, weak); }; });

  auto* verify_cmd = app.add_subcommand("verify", "Classify a set under all four popularity notions");
  verify_cmd->add_option("instance", path, "Instance file")->required();
  verify_cmd->add_option("--set", set, "Comma-separated elements")->required();
  verify_cmd->add_option("--bound", bound, "Largest ground set for brute force");
  verify_cmd->callback([&] { action = [&] { return cmd_verify(path, set, bound); }; });

  auto* check = app.add_subcommand("check-theorems", "Randomised exchange and vote property trials");
  check->add_option("--trials", trials, "Number of trials")->check(CLI::NonNegativeNumber);
  check->add_option("--seed", seed, "Base seed");
  check->add_option("--families", families, "Comma-separated families: partition, graphic, explicit");
  check->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  check->callback([&] { action = [&] { return cmd_check_theorems(trials, seed, families, jobs); }; });

  auto* lex = app.add_subcommand("lex", "Lexicographic popularity of b-matchings");
  lex->require_subcommand(1);
  auto search_options = [&](CLI::App* c) {
    c->add_option("instance", path, "Instance file with a bmatching section")->required();
    c->add_option("--budget", dopt.budget, "Enumeration budget in search nodes");
    c->add_option("--seed", dopt.seed, "Local search seed");
    c->add_option("--local-steps", dopt.local_search_steps, "Local search steps after the budget runs out");
  };
  auto* lverify = lex->add_subcommand("verify", "Is the given b-matching lexicographically popular");
  search_options(lverify);
  lverify->callback([&] { action = [&] { return cmd_lex_verify(path, dopt); }; });
  auto* ldom = lex->add_subcommand("dominate", "Search for a b-matching beating the given one");
  search_options(ldom);
  ldom->add_flag("--strongest", dopt.strongest, "Return the witness with the largest margin");
  ldom->callback([&] { action = [&] { return cmd_lex_dominate(path, dopt); }; });
  auto* lex1 = lex->add_subcommand("gen-example1", "Seven-agent gadget without a lexicographically popular b-matching");
  lex1->add_option("--q", q, "Capacity of x")->check(CLI::PositiveNumber);
  lex1->add_flag("--dummies", dummies, "Attach q dummy agents to x");
  lex1->add_option("--matching", which, "Matching to include: none, popular, candidate, dominator");
  lex1->callback([&] { action = [&] { return cmd_gen_gadget(q, dummies, which); }; });
  auto* lx3c = lex->add_subcommand("gen-x3c", "Instance built from an exact 3-cover instance");
  lx3c->add_option("--n", n, "Elements are 1..3n")->check(CLI::PositiveNumber);
  lx3c->add_option("--sets", sets, "3n sets as 'a,b,c/d,e,f/...' (';' also separates)")->required();
  lx3c->add_option("--cover", cover, "Comma-separated 1-based indices of an exact cover");
  lx3c->callback([&] { action = [&] { return cmd_gen_x3c(n, sets, cover); }; });
  auto* leq = lex->add_subcommand("equalize", "Raise all capacities to the maximum using dummy agents");
  leq->add_option("instance", path, "Instance file with a bmatching section")->required();
  leq->callback([&] { action = [&] { return cmd_lex_equalize(path); }; });

  auto* gen = app.add_subcommand("gen", "Instance generators");
  gen->require_subcommand(1);
  auto* grandom = gen->add_subcommand("random", "Random instance");
  grandom->add_option("--family", family, "partition, graphic or explicit")->required();
  grandom->add_option("--size", size, "Number of elements");
  grandom->add_option("--seed", seed, "Seed");
  grandom->callback([&] { action = [&] { return cmd_gen_random(family, size, seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ScaleError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitScale;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace
}  // namespace popmat

int main(int argc, char** argv) { return popmat::run(argc, argv); }
