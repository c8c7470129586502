#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "caplat/capacity.hpp"
#include "caplat/error.hpp"
#include "caplat/ideal_lattice.hpp"
#include "caplat/lattice.hpp"
#include "caplat/rational.hpp"

namespace test {

using namespace caplat;

inline Rational q(const char* text) { return parse_rational(text); }

inline Subset subset(const Lattice& L, const std::string& names) {
  return Subset(L.parse_list(names));
}

inline std::vector<Element> seq(const Lattice& L, const std::string& names) {
  return L.parse_list(names);
}

inline Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("no caplat::Error thrown");
}

inline IdealLatticePtr ideals_of(const LatticePtr& L) {
  return std::make_shared<const IdealLattice>(IdealLattice::build(L));
}

// Fixed-seed generator shared by the randomized suites.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240613);
  return gen;
}

inline void reseed(std::uint64_t seed) { rng().seed(seed); }

inline int uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

// Lattice of an intersection-closed family of subsets of {0..k-1} that
// contains the full set, ordered by inclusion. Size between min_size and
// max_size.
inline LatticePtr random_lattice(std::size_t max_size, std::size_t min_size = 1) {
  for (;;) {
    const int k = uniform(2, 4);
    const std::uint32_t full = (1u << k) - 1;
    std::vector<std::uint32_t> family{full};
    const int draws = uniform(0, static_cast<int>(max_size) + 1);
    for (int i = 0; i < draws; ++i) {
      family.push_back(static_cast<std::uint32_t>(uniform(0, static_cast<int>(full))));
    }
    for (bool grew = true; grew;) {
      grew = false;
      std::sort(family.begin(), family.end());
      family.erase(std::unique(family.begin(), family.end()), family.end());
      const std::size_t m = family.size();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          const std::uint32_t s = family[i] & family[j];
          if (!std::binary_search(family.begin(), family.end(), s)) {
            family.push_back(s);
            grew = true;
          }
        }
      }
    }
    if (family.size() > max_size || family.size() < min_size) continue;
    std::vector<std::string> names;
    for (std::uint32_t s : family) names.push_back("s" + std::to_string(s));
    std::vector<std::vector<bool>> leq(family.size(),
                                       std::vector<bool>(family.size()));
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = 0; j < family.size(); ++j) {
        leq[i][j] = (family[i] & ~family[j]) == 0;
      }
    }
    return share(Lattice::from_order(names, leq));
  }
}

inline Rational random_step() {
  static const int denominators[] = {1, 2, 3, 6};
  return ratio(uniform(0, 3), denominators[uniform(0, 3)]);
}

// Nonnegative monotone function built upward along a topological order.
inline LatticeFn random_monotone(const LatticePtr& L) {
  LatticeFn f(L);
  for (Element x : L->topological_order()) {
    Rational base;
    for (Element y : L->lower_covers(x)) base = std::max(base, f[y]);
    f[x] = base + random_step();
  }
  return f;
}

// Monotone with phi(0) = 0 and phi(1) = 1 (the zero function stays as is
// only when every step came out zero, which is then retried).
inline LatticeFn random_capacity(const LatticePtr& L) {
  for (;;) {
    LatticeFn f = random_monotone(L);
    f -= LatticeFn(L, std::vector<Rational>(L->size(), f[L->bottom()]));
    const Rational top = f[L->top()];
    if (is_zero(top)) {
      if (L->size() == 1) return f;
      continue;
    }
    for (Element x = 0; x < f.size(); ++x) f[x] /= top;
    return f;
  }
}

// Random masses; normalized to total 1 when `normalize`.
inline LatticeFn random_mass(const LatticePtr& L, bool normalize) {
  for (;;) {
    LatticeFn m(L);
    Rational total;
    for (Element x = 0; x < m.size(); ++x) {
      m[x] = uniform(0, 2) == 0 ? Rational(0) : random_step();
      total += m[x];
    }
    if (is_zero(total)) continue;
    if (normalize) {
      for (Element x = 0; x < m.size(); ++x) m[x] /= total;
    }
    return m;
  }
}

inline LatticeFn random_cdf(const LatticePtr& L) {
  return cdf_from_mass(random_mass(L, true));
}

// Random distinct elements in a random order consistent with the lattice
// order, i.e. a monotone path.
inline std::vector<Element> random_monotone_path(const Lattice& L,
                                                 std::size_t max_len) {
  std::vector<Element> picked;
  for (Element x = 0; x < L.size(); ++x) {
    if (uniform(0, 2) == 0) picked.push_back(x);
  }
  std::shuffle(picked.begin(), picked.end(), rng());
  if (picked.size() > max_len) picked.resize(max_len);
  // Any order works as long as no later entry is strictly below an earlier
  // one; sorting by a random rank-respecting key does that.
  std::vector<Rational> key(L.size());
  for (Element x : L.topological_order()) {
    Rational best;
    for (Element y : L.lower_covers(x)) best = std::max(best, Rational(key[y] + 1));
    key[x] = best + ratio(uniform(0, 5), 7);
  }
  std::stable_sort(picked.begin(), picked.end(),
                   [&](Element a, Element b) { return key[a] < key[b]; });
  if (picked.empty()) picked.push_back(static_cast<Element>(uniform(0, static_cast<int>(L.size()) - 1)));
  return picked;
}

}  // namespace test
