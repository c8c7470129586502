#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "caplat/capacity.hpp"
#include "caplat/lattice.hpp"
#include "caplat/rational.hpp"

namespace caplat {

// Nonempty up-set of L, keyed by its antichain of minimal elements.
struct UpSet {
  Subset generators;
  Subset members;

  friend bool operator==(const UpSet& a, const UpSet& b) {
    return a.generators == b.generators;
  }
};

// Canonical up-set generated by a nonempty subset. Throws
// Error(EmptyGenerator).
UpSet up_set(const Lattice& lattice, const Subset& generators);

inline constexpr std::size_t kDefaultIdealCap = 200000;

using NodeId = std::size_t;

// The distributive lattice of nonempty up-sets of L under reverse inclusion
// (V precedes U iff V contains U). Nodes are listed by ascending rank, i.e.
// descending |U|, then by generator positions.
class IdealLattice {
 public:
  // Throws Error(CapExceeded) once more than `cap` up-sets are found.
  static IdealLattice build(LatticePtr base, std::size_t cap = kDefaultIdealCap);

  const Lattice& base() const { return *base_; }
  const LatticePtr& base_ptr() const { return base_; }
  std::size_t size() const { return nodes_.size(); }
  const UpSet& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<UpSet>& nodes() const { return nodes_; }

  // V precedes U in the ideal lattice order, i.e. V contains U.
  bool precedes(NodeId v, NodeId u) const;
  bool contains(NodeId v, Element x) const { return member_[v][x]; }

  NodeId principal(Element a) const { return principal_[a]; }
  NodeId bottom() const { return principal_[base_->bottom()]; }
  NodeId top() const { return principal_[base_->top()]; }

  // Throws Error(UnknownElement) if the generators do not name a node.
  NodeId find(const Subset& generators) const;
  NodeId find_upset(const std::string& text) const;  // "12|13" or "12,13"
  // "⟨12,13⟩*".
  std::string label(NodeId id) const;

  // The ideal lattice as a Lattice, with labels as element names.
  Lattice as_lattice(std::size_t cap = 4096) const;

 private:
  LatticePtr base_;
  std::vector<UpSet> nodes_;
  std::vector<std::vector<bool>> member_;
  std::vector<NodeId> principal_;
  std::map<Subset, NodeId> by_generators_;
};

using IdealLatticePtr = std::shared_ptr<const IdealLattice>;

// Lattice of nonempty down-sets of L under reverse inclusion; built as the
// ideal lattice of L*.
IdealLattice build_down_set_lattice(const Lattice& base,
                                    std::size_t cap = kDefaultIdealCap);

// Function on the nodes of an ideal lattice.
using IdealFn = std::vector<Rational>;

// A pmf on the ideal lattice; Phi(U) = sum of pmf over V containing U.
class Extension {
 public:
  Extension(IdealLatticePtr ideals, std::map<NodeId, Rational> pmf);

  const IdealLattice& ideals() const { return *ideals_; }
  const IdealLatticePtr& ideals_ptr() const { return ideals_; }
  // Nonzero atoms only, ordered by node id.
  const std::map<NodeId, Rational>& pmf() const { return pmf_; }
  Rational total_mass() const;

  // Sum of pmf over V with V containing U.
  Rational evaluate(NodeId u) const;
  // Sum of pmf(V) * g(V).
  Rational expectation(const IdealFn& g) const;
  // Phi on every node.
  IdealFn values() const;

  Extension& operator+=(const Extension& other);

 private:
  IdealLatticePtr ideals_;
  std::map<NodeId, Rational> pmf_;
};

// phi(x) = Phi(<x>*).
LatticeFn project(const Extension& ext);

// Level-set construction. Throws NotMonotone / NegativeValue.
Extension greedy_extension(IdealLatticePtr ideals, const LatticeFn& phi);

// pmf(<x>*) = Moebius inverse of phi at x. Throws NotCompletelyMonotone.
Extension mobius_extension(IdealLatticePtr ideals, const LatticeFn& phi);

// Checks Phi(<a,b>*) = phi(a ^ b) over all pairs. Throws MarginalMismatch
// when Phi does not project onto phi.
bool is_mobius_extension(const Extension& ext, const LatticeFn& phi);

// Extension whose atoms are complements of principal down-sets. Throws
// NotACapacity / NotCompletelyAlternating.
Extension dual_mobius_extension(IdealLatticePtr ideals, const LatticeFn& phi);

// Checks Phi(<a,b>*) = phi(a) + phi(b) - phi(a v b) over all pairs.
bool satisfies_dual_pair_formula(const Extension& ext, const LatticeFn& phi);

}  // namespace caplat
