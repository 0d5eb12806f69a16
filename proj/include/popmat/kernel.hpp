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

// Matroid kernels: common independent sets where every outside element is
// dominated in at least one of the two ordered matroids.

#ifndef POPMAT_KERNEL_HPP_
#define POPMAT_KERNEL_HPP_

#include <string>
#include <utility>
#include <vector>

#include "popmat/common.hpp"
#include "popmat/matroid.hpp"

namespace popmat {

class KernelInstance {
 public:
  KernelInstance(OrderedMatroid first, OrderedMatroid second)
      : first_(std::move(first)), second_(std::move(second)) {
    if (first_.ground() != second_.ground()) throw InputError("kernel matroids have different ground sets");
    for (Element e : first_.ground()) {
      const ElementSet single{e};
      if (!first_.independent(single) || !second_.independent(single)) {
        throw InputError("element " + std::to_string(e) + " is a loop");
      }
    }
  }

  const OrderedMatroid& first() const { return first_; }
  const OrderedMatroid& second() const { return second_; }
  const ElementSet& ground() const { return first_.ground(); }

 private:
  OrderedMatroid first_;
  OrderedMatroid second_;
};

struct KernelRound {
  ElementSet proposed;  // optimal base of the first matroid on S \ R
  ElementSet accepted;  // optimal base of the second matroid on `proposed`
  ElementSet rejected;  // proposed \ accepted, added to R
};

struct KernelTrace {
  std::vector<KernelRound> rounds;
};

struct KernelResult {
  ElementSet kernel;
  KernelTrace trace;
};

struct KernelCheck {
  bool is_kernel = false;
  bool common_independent = false;
  ElementSet blockers;
};

inline KernelCheck is_kernel(const KernelInstance& ki, const ElementSet& i) {
  KernelCheck out;
  if (!sets::is_canonical(i) || !sets::is_subset(i, ki.ground())) {
    throw InputError("candidate kernel is not a subset of the ground set");
  }
  out.common_independent = ki.first().independent(i) && ki.second().independent(i);
  if (!out.common_independent) return out;
  for (Element v : sets::difference(ki.ground(), i)) {
    if (!is_dominated(ki.first(), i, v) && !is_dominated(ki.second(), i, v)) out.blockers.push_back(v);
  }
  out.is_kernel = out.blockers.empty();
  return out;
}

// Deferred acceptance over matroids. The first matroid proposes its
// optimal base among unrejected elements, the second keeps its optimal
// base of the proposal; what it drops is rejected for good. Stops when
// nothing is dropped.
inline KernelResult find_kernel(const KernelInstance& ki) {
  KernelResult res;
  ElementSet rejected;
  for (;;) {
    KernelRound round;
    round.proposed = optimal_base(ki.first(), sets::difference(ki.ground(), rejected));
    round.accepted = optimal_base(ki.second(), round.proposed);
    round.rejected = sets::difference(round.proposed, round.accepted);
    const bool done = round.rejected.empty();
    rejected = sets::unite(rejected, round.rejected);
    res.trace.rounds.push_back(std::move(round));
    if (done) break;
    if (res.trace.rounds.size() > ki.ground().size()) throw InvariantViolation("kernel search did not terminate");
  }
  res.kernel = res.trace.rounds.back().accepted;
  auto check = is_kernel(ki, res.kernel);
  if (!check.is_kernel) throw InvariantViolation("deferred acceptance produced a non-kernel");
  return res;
}

}  // namespace popmat

#endif  // POPMAT_KERNEL_HPP_
