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

#ifndef POPMAT_COMMON_HPP_
#define POPMAT_COMMON_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace popmat {

// Elements are dense non-negative integer indices. Names live in the
// instance layer and never reach the algorithms.
using Element = int;

// Canonical form: strictly increasing. All set helpers below expect and
// return canonical sets.
using ElementSet = std::vector<Element>;

// Malformed input: unknown element, precondition on arguments violated.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive routine was asked to run beyond its configured bound.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A property that must hold by theory failed. Always a bug (or a
// counterexample to a theorem, which is the same thing for this library).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace sets {

inline ElementSet normalize(ElementSet x) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

inline bool is_canonical(std::span<const Element> x) {
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (x[k - 1] >= x[k]) return false;
  }
  return true;
}

inline bool contains(std::span<const Element> x, Element e) {
  return std::binary_search(x.begin(), x.end(), e);
}

inline ElementSet plus(std::span<const Element> x, Element e) {
  ElementSet out(x.begin(), x.end());
  auto it = std::lower_bound(out.begin(), out.end(), e);
  if (it == out.end() || *it != e) out.insert(it, e);
  return out;
}

inline ElementSet minus(std::span<const Element> x, Element e) {
  ElementSet out;
  out.reserve(x.size());
  for (Element y : x) {
    if (y != e) out.push_back(y);
  }
  return out;
}

// x - u + v, the single exchange.
inline ElementSet exchange(std::span<const Element> x, Element u, Element v) {
  return plus(minus(x, u), v);
}

inline ElementSet unite(std::span<const Element> a, std::span<const Element> b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet difference(std::span<const Element> a, std::span<const Element> b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet intersect(std::span<const Element> a, std::span<const Element> b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(std::span<const Element> a, std::span<const Element> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Subset of `ground` selected by the bits of `mask` (bit k = ground[k]).
inline ElementSet from_mask(std::span<const Element> ground, std::uint64_t mask) {
  ElementSet out;
  for (std::size_t k = 0; k < ground.size(); ++k) {
    if (mask >> k & 1U) out.push_back(ground[k]);
  }
  return out;
}

inline std::string to_string(std::span<const Element> x) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k) os << ',';
    os << x[k];
  }
  os << '}';
  return os.str();
}

}  // namespace sets

// Deterministic random source. Bounded draws and shuffles are implemented
// here rather than through <random> distributions so that generated
// instances are byte-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

  // Uniform in [lo, hi].
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin(std::uint64_t num = 1, std::uint64_t den = 2) { return below(den) < num; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) {
      std::swap(v[k - 1], v[below(k)]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace popmat

#endif  // POPMAT_COMMON_HPP_
