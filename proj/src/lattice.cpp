#include "caplat/lattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "caplat/error.hpp"

namespace caplat {

Subset::Subset(std::initializer_list<Element> items)
    : Subset(std::vector<Element>(items)) {}

Subset::Subset(std::vector<Element> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool Subset::contains(Element e) const {
  return std::binary_search(items_.begin(), items_.end(), e);
}

Lattice Lattice::build(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& relation,
    std::size_t cap) {
  if (elements.empty()) throw Error(Errc::EmptyLattice, "no elements");
  if (elements.size() > cap) {
    throw Error(Errc::CapExceeded, std::to_string(elements.size()) +
                                       " elements exceed the lattice cap " +
                                       std::to_string(cap));
  }
  std::map<std::string, Element> index;
  for (Element i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw Error(Errc::DuplicateElement, "element '" + elements[i] + "'");
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (const auto& [lo, hi] : relation) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end() || b == index.end()) {
      throw Error(Errc::UnknownElement,
                  "relation pair (" + lo + ", " + hi + ")");
    }
    leq[a->second][b->second] = true;
  }
  return from_order(elements, std::move(leq), cap);
}

Lattice Lattice::from_order(std::vector<std::string> names,
                            std::vector<std::vector<bool>> leq,
                            std::size_t cap) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(Errc::EmptyLattice, "no elements");
  if (n > cap) {
    throw Error(Errc::CapExceeded, std::to_string(n) +
                                       " elements exceed the lattice cap " +
                                       std::to_string(cap));
  }
  Lattice L;
  for (Element i = 0; i < n; ++i) {
    if (!L.index_.emplace(names[i], i).second) {
      throw Error(Errc::DuplicateElement, "element '" + names[i] + "'");
    }
  }
  L.names_ = std::move(names);
  for (Element i = 0; i < n; ++i) leq[i][i] = true;
  for (Element k = 0; k < n; ++k) {
    for (Element i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (Element j = 0; j < n; ++j) {
        if (leq[k][j]) leq[i][j] = true;
      }
    }
  }
  L.leq_.assign(n * n, false);
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) L.leq_[i * n + j] = leq[i][j];
  }
  L.finish(cap);
  return L;
}

void Lattice::finish(std::size_t) {
  const std::size_t n = size();
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) {
      if (leq(i, j) && leq(j, i)) {
        throw Error(Errc::NotAPoset, "cycle through (" + names_[i] + ", " +
                                         names_[j] + ")");
      }
    }
  }

  // Topological order: by number of strict lower bounds, then position.
  std::vector<std::size_t> below(n, 0);
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) below[i] += less(j, i) ? 1 : 0;
  }
  topo_.resize(n);
  std::iota(topo_.begin(), topo_.end(), Element{0});
  std::stable_sort(topo_.begin(), topo_.end(), [&](Element a, Element b) {
    return below[a] < below[b];
  });

  meet_.assign(n * n, 0);
  join_.assign(n * n, 0);
  for (Element i = 0; i < n; ++i) {
    for (Element j = i; j < n; ++j) {
      // Candidate bound = the common bound with the most (fewest) strict
      // lower bounds; it must then dominate every other common bound.
      std::optional<Element> glb;
      std::optional<Element> lub;
      for (Element z = 0; z < n; ++z) {
        if (leq(z, i) && leq(z, j) && (!glb || below[z] > below[*glb])) glb = z;
        if (leq(i, z) && leq(j, z) && (!lub || below[z] < below[*lub])) lub = z;
      }
      for (Element w = 0; w < n; ++w) {
        if (glb && leq(w, i) && leq(w, j) && !leq(w, *glb)) glb.reset();
        if (lub && leq(i, w) && leq(j, w) && !leq(*lub, w)) lub.reset();
      }
      if (!glb || !lub) {
        throw Error(Errc::NotALattice,
                    std::string("pair (") + names_[i] + ", " + names_[j] +
                        ") has no " + (!glb ? "meet" : "join"));
      }
      meet_[i * n + j] = meet_[j * n + i] = *glb;
      join_[i * n + j] = join_[j * n + i] = *lub;
    }
  }
  bottom_ = topo_.front();
  top_ = topo_.back();
  for (Element x = 0; x < n; ++x) {
    bottom_ = meet(bottom_, x);
    top_ = join(top_, x);
  }

  covers_.clear();
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (Element z = 0; z < n && cover; ++z) {
        if (less(x, z) && less(z, y)) cover = false;
      }
      if (cover) covers_.emplace_back(x, y);
    }
  }

  // mu(x, x) = 1, mu(x, y) = -sum_{x <= z < y} mu(x, z), rows filled along
  // the topological order so every z below y is ready.
  mobius_.assign(n * n, 0);
  for (Element x = 0; x < n; ++x) {
    mobius_[x * n + x] = 1;
    for (Element y : topo_) {
      if (!less(x, y)) continue;
      std::int64_t sum = 0;
      for (Element z = 0; z < n; ++z) {
        if (leq(x, z) && less(z, y)) sum += mobius_[x * n + z];
      }
      mobius_[x * n + y] = -sum;
    }
  }
}

Element Lattice::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw Error(Errc::UnknownElement, "element '" + name + "'");
  }
  return it->second;
}

std::optional<Element> Lattice::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Element> Lattice::lower_covers(Element x) const {
  std::vector<Element> out;
  for (const auto& [lo, hi] : covers_) {
    if (hi == x) out.push_back(lo);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Element Lattice::meet_of(const Subset& subset) const {
  Element acc = top_;
  for (Element e : subset) acc = meet(acc, e);
  return acc;
}

Element Lattice::join_of(const Subset& subset) const {
  Element acc = bottom_;
  for (Element e : subset) acc = join(acc, e);
  return acc;
}

Rational Lattice::mobius(Element x, Element y) const {
  if (!leq(x, y)) {
    throw Error(Errc::NotComparable,
                "mobius(" + names_.at(x) + ", " + names_.at(y) + ")");
  }
  return Rational(static_cast<long>(mobius_[x * size() + y]));
}

Rational Lattice::mobius_crosscut(Element a, Element b,
                                  const Subset& crosscut) const {
  if (!less(a, b)) {
    throw Error(Errc::NotComparable,
                "cross-cut needs " + names_.at(a) + " < " + names_.at(b));
  }
  for (Element c : crosscut) {
    if (!leq(a, c) || !less(c, b)) {
      throw Error(Errc::NotDominating,
                  "element " + names_.at(c) + " lies outside [a, b)");
    }
  }
  for (Element x = 0; x < size(); ++x) {
    if (!leq(a, x) || leq(b, x) || !leq(x, b)) continue;
    const bool covered = std::any_of(crosscut.begin(), crosscut.end(),
                                      [&](Element c) { return leq(x, c); });
    if (!covered) {
      throw Error(Errc::NotDominating,
                  "no upper bound in C for " + names_.at(x));
    }
  }
  // sum over nonempty C' of (-1)^{|C'|} [meet C' = a]
  const auto& items = crosscut.items();
  const std::size_t k = items.size();
  if (k >= 63) throw Error(Errc::CapExceeded, "cross-cut too large");
  long total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    Element m = top_;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) {
        m = meet(m, items[i]);
        ++bits;
      }
    }
    if (m == a) total += (bits % 2 == 0) ? 1 : -1;
  }
  return Rational(total);
}

Subset Lattice::down_set(const Subset& generators) const {
  std::vector<Element> out;
  for (Element x = 0; x < size(); ++x) {
    for (Element g : generators) {
      if (leq(x, g)) {
        out.push_back(x);
        break;
      }
    }
  }
  return Subset(std::move(out));
}

Subset Lattice::up_closure(const Subset& generators) const {
  std::vector<Element> out;
  for (Element x = 0; x < size(); ++x) {
    for (Element g : generators) {
      if (leq(g, x)) {
        out.push_back(x);
        break;
      }
    }
  }
  return Subset(std::move(out));
}

Subset Lattice::minimal(const Subset& subset) const {
  std::vector<Element> out;
  for (Element x : subset) {
    const bool dominated = std::any_of(
        subset.begin(), subset.end(), [&](Element y) { return less(y, x); });
    if (!dominated) out.push_back(x);
  }
  return Subset(std::move(out));
}

Subset Lattice::maximal(const Subset& subset) const {
  std::vector<Element> out;
  for (Element x : subset) {
    const bool dominated = std::any_of(
        subset.begin(), subset.end(), [&](Element y) { return less(x, y); });
    if (!dominated) out.push_back(x);
  }
  return Subset(std::move(out));
}

bool Lattice::is_antichain(const Subset& subset) const {
  for (Element x : subset) {
    for (Element y : subset) {
      if (less(x, y)) return false;
    }
  }
  return true;
}

bool Lattice::is_down_set(const Subset& subset) const {
  for (Element y : subset) {
    for (Element x = 0; x < size(); ++x) {
      if (leq(x, y) && !subset.contains(x)) return false;
    }
  }
  return true;
}

bool Lattice::is_up_set(const Subset& subset) const {
  for (Element x : subset) {
    for (Element y = 0; y < size(); ++y) {
      if (leq(x, y) && !subset.contains(y)) return false;
    }
  }
  return true;
}

bool Lattice::is_monotone_path(const std::vector<Element>& seq) const {
  if (Subset(seq).size() != seq.size()) {
    throw Error(Errc::DuplicateElement, "path repeats an element");
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (less(seq[j], seq[i])) return false;
    }
  }
  return true;
}

Lattice Lattice::dual() const {
  const std::size_t n = size();
  std::vector<std::vector<bool>> rev(n, std::vector<bool>(n, false));
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) rev[i][j] = leq(j, i);
  }
  return from_order(names_, std::move(rev), std::numeric_limits<std::size_t>::max());
}

std::vector<Element> Lattice::parse_list(const std::string& text) const {
  std::vector<Element> out;
  std::string token;
  std::istringstream in(text);
  const char sep = text.find('|') != std::string::npos ? '|' : ',';
  while (std::getline(in, token, sep)) {
    if (token.empty()) continue;
    out.push_back(index(token));
  }
  return out;
}

std::string Lattice::format(const Subset& subset, char sep) const {
  std::string out;
  for (Element e : subset) {
    if (!out.empty()) out += sep;
    out += names_.at(e);
  }
  return out;
}

Lattice boolean_lattice(int n, int cap) {
  if (n < 0 || n > cap || n > 9) {
    throw Error(Errc::CapExceeded, "boolean lattice of rank " +
                                       std::to_string(n) + " exceeds cap " +
                                       std::to_string(cap));
  }
  const std::uint32_t count = 1U << n;
  std::vector<std::uint32_t> masks(count);
  std::iota(masks.begin(), masks.end(), 0U);
  auto digits = [n](std::uint32_t mask) {
    std::string s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1U) s += static_cast<char>('1' + i);
    }
    return s;
  };
  std::stable_sort(masks.begin(), masks.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     const int pa = __builtin_popcount(a);
                     const int pb = __builtin_popcount(b);
                     if (pa != pb) return pa < pb;
                     return digits(a) < digits(b);
                   });
  std::vector<std::string> names;
  for (auto m : masks) names.push_back(m == 0 ? kEmptySetName : digits(m));
  std::vector<std::vector<bool>> leq(count, std::vector<bool>(count, false));
  for (std::uint32_t i = 0; i < count; ++i) {
    for (std::uint32_t j = 0; j < count; ++j) {
      leq[i][j] = (masks[i] & ~masks[j]) == 0;
    }
  }
  return Lattice::from_order(std::move(names), std::move(leq),
                             std::size_t{1} << 9);
}

Lattice chain_lattice(const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) {
    rel.emplace_back(names[i], names[i + 1]);
  }
  return Lattice::build(names, rel, std::max(names.size(), kDefaultLatticeCap));
}

LinearExtensions::LinearExtensions(LatticePtr lattice)
    : lattice_(std::move(lattice)), placed_(lattice_->size(), false) {}

Element LinearExtensions::pick(std::size_t, std::size_t from) const {
  const std::size_t n = lattice_->size();
  for (Element e = from; e < n; ++e) {
    if (placed_[e]) continue;
    bool ready = true;
    for (Element y = 0; y < n && ready; ++y) {
      if (lattice_->less(y, e) && !placed_[y]) ready = false;
    }
    if (ready) return e;
  }
  return n;
}

bool LinearExtensions::advance_from(std::size_t) {
  const std::size_t n = lattice_->size();
  while (current_.size() < n) {
    const Element e = pick(current_.size(), 0);
    if (e == n) return false;
    placed_[e] = true;
    current_.push_back(e);
  }
  return true;
}

std::optional<std::vector<Element>> LinearExtensions::next() {
  if (done_) return std::nullopt;
  const std::size_t n = lattice_->size();
  if (!started_) {
    started_ = true;
    advance_from(0);
    return current_;
  }
  while (!current_.empty()) {
    const Element last = current_.back();
    current_.pop_back();
    placed_[last] = false;
    const Element alt = pick(current_.size(), last + 1);
    if (alt != n) {
      placed_[alt] = true;
      current_.push_back(alt);
      advance_from(current_.size());
      return current_;
    }
  }
  done_ = true;
  return std::nullopt;
}

}  // namespace caplat
