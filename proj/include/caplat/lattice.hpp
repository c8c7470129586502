#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caplat/rational.hpp"

namespace caplat {

// Position of an element in its lattice's element list.
using Element = std::size_t;

// Canonical sorted set of element positions.
class Subset {
 public:
  Subset() = default;
  Subset(std::initializer_list<Element> items);
  explicit Subset(std::vector<Element> items);

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(Element e) const;
  const std::vector<Element>& items() const { return items_; }

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  std::vector<Element> items_;
};

inline constexpr std::size_t kDefaultLatticeCap = 64;

// A finite lattice. Immutable once built; share through LatticePtr.
class Lattice {
 public:
  // `relation` may be any generating relation (pairs a <= b); the closure
  // and the covers are computed here.
  static Lattice build(
      const std::vector<std::string>& elements,
      const std::vector<std::pair<std::string, std::string>>& relation,
      std::size_t cap = kDefaultLatticeCap);

  // Builds from an explicit order table, leq[x][y] meaning x <= y. The
  // table is closed transitively before validation.
  static Lattice from_order(std::vector<std::string> names,
                            std::vector<std::vector<bool>> leq,
                            std::size_t cap = kDefaultLatticeCap);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Element e) const { return names_.at(e); }
  // Throws Error(UnknownElement).
  Element index(const std::string& name) const;
  std::optional<Element> find(const std::string& name) const;

  bool leq(Element x, Element y) const { return leq_[x * size() + y]; }
  bool less(Element x, Element y) const { return x != y && leq(x, y); }
  bool comparable(Element x, Element y) const {
    return leq(x, y) || leq(y, x);
  }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element bottom() const { return bottom_; }
  Element top() const { return top_; }

  // Transitive reduction, sorted pairs (lower, upper).
  const std::vector<std::pair<Element, Element>>& covers() const {
    return covers_;
  }
  // Elements covered by x.
  std::vector<Element> lower_covers(Element x) const;

  // Element positions sorted so that x < y implies x comes first; ties keep
  // element-list order.
  const std::vector<Element>& topological_order() const { return topo_; }

  // Meet of a subset; the empty meet is the top.
  Element meet_of(const Subset& subset) const;
  Element join_of(const Subset& subset) const;

  // Throws Error(NotComparable) unless x <= y.
  Rational mobius(Element x, Element y) const;
  // Cross-cut evaluation of mu(a, b), a < b, for a set C that dominates
  // [a, b). Throws NotComparable / NotDominating.
  Rational mobius_crosscut(Element a, Element b, const Subset& crosscut) const;

  Subset down_set(const Subset& generators) const;
  Subset up_closure(const Subset& generators) const;
  // Minimal elements of a subset.
  Subset minimal(const Subset& subset) const;
  Subset maximal(const Subset& subset) const;
  bool is_antichain(const Subset& subset) const;
  bool is_down_set(const Subset& subset) const;
  bool is_up_set(const Subset& subset) const;

  // Sequence of distinct elements where no later entry lies strictly below
  // an earlier one. Throws Error(DuplicateElement) on repeats.
  bool is_monotone_path(const std::vector<Element>& seq) const;

  Lattice dual() const;

  // Parses "a,b,c" (or "a|b|c") into element positions.
  std::vector<Element> parse_list(const std::string& text) const;
  std::string format(const Subset& subset, char sep = ',') const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  Lattice() = default;
  void finish(std::size_t cap);

  std::vector<std::string> names_;
  std::map<std::string, Element> index_;
  std::vector<bool> leq_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  std::vector<std::int64_t> mobius_;
  std::vector<std::pair<Element, Element>> covers_;
  std::vector<Element> topo_;
  Element bottom_ = 0;
  Element top_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

inline LatticePtr share(Lattice lattice) {
  return std::make_shared<const Lattice>(std::move(lattice));
}

// Subsets of {1..n} under inclusion, named "∅", "1", "12", ... and listed by
// cardinality, then lexicographically. Throws CapExceeded for n > cap.
Lattice boolean_lattice(int n, int cap = 6);

// a_0 < a_1 < ... with the given names.
Lattice chain_lattice(const std::vector<std::string>& names);

inline constexpr const char* kEmptySetName = "\xE2\x88\x85";  // ∅

// Lazy enumeration of linear extensions, lexicographic in element-list
// position.
class LinearExtensions {
 public:
  explicit LinearExtensions(LatticePtr lattice);
  // Next extension, or nullopt once exhausted.
  std::optional<std::vector<Element>> next();

 private:
  bool advance_from(std::size_t depth);
  Element pick(std::size_t depth, std::size_t from) const;

  LatticePtr lattice_;
  std::vector<Element> current_;
  std::vector<bool> placed_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace caplat
