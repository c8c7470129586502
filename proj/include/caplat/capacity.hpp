#pragma once

#include <map>
#include <string>
#include <vector>

#include "caplat/lattice.hpp"
#include "caplat/rational.hpp"

namespace caplat {

// A total function L -> Q. Holds phi, psi, Moebius inverses and all derived
// operator images.
class LatticeFn {
 public:
  LatticeFn(LatticePtr lattice, std::vector<Rational> values);
  // The zero function.
  explicit LatticeFn(LatticePtr lattice);
  // Named values; elements not listed default to zero. Throws
  // Error(UnknownElement).
  static LatticeFn from_map(LatticePtr lattice,
                            const std::map<std::string, Rational>& values);

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  const Rational& operator[](Element e) const { return values_[e]; }
  Rational& operator[](Element e) { return values_[e]; }
  const Rational& at(const std::string& name) const {
    return values_[lattice_->index(name)];
  }

  // Same values attached to another lattice of the same size (e.g. L*).
  LatticeFn rebind(LatticePtr other) const;

  friend bool operator==(const LatticeFn& a, const LatticeFn& b) {
    return a.values_ == b.values_ && *a.lattice_ == *b.lattice_;
  }
  LatticeFn& operator+=(const LatticeFn& other);
  LatticeFn& operator-=(const LatticeFn& other);

 private:
  LatticePtr lattice_;
  std::vector<Rational> values_;
};

LatticeFn operator+(LatticeFn a, const LatticeFn& b);
LatticeFn operator-(LatticeFn a, const LatticeFn& b);

struct CapacityClass {
  bool is_monotone = false;
  bool is_nonnegative = false;
  // phi(0) = 0 and phi(1) = 1 and monotone.
  bool is_capacity = false;
  // Every successive difference is nonnegative (Moebius inverse >= 0 off
  // the bottom).
  bool is_completely_monotone = false;
  // Every dual successive difference is nonpositive.
  bool is_completely_alternating = false;
  // phi(0) >= 0. Not implied by complete monotonicity, which ignores the
  // bottom.
  bool bottom_nonnegative = false;
};

bool is_monotone(const LatticeFn& phi);
bool is_nonnegative(const LatticeFn& phi);
bool is_capacity(const LatticeFn& phi);

CapacityClass classify(const LatticeFn& phi);

// f(x) = sum_{y <= x} phi(y) mu(y, x).
LatticeFn mobius_inverse(const LatticeFn& phi);
// phi(x) = sum_{y <= x} f(y).
LatticeFn cdf_from_mass(const LatticeFn& mass);

// Successive difference functional nabla_A^b phi. A is deduplicated, reduced
// to a maximal b-meet antichain, then expanded over its subsets. Throws
// Error(EmptyGenerator) for empty A.
Rational nabla(const LatticeFn& phi, const Subset& a, Element b);
// Plain subset expansion without the reduction step; used as a reference
// path and by callers that need the raw sum.
Rational nabla_expansion(const LatticeFn& phi, const Subset& a, Element b);

// {x <= b : x not below any a in A}.
Subset pi_set(const Lattice& lattice, const Subset& a, Element b);

// Subset of A whose meets with b form an antichain dominating all a ^ b.
// Ties between equal meets keep the element listed first. Throws
// Error(Unreducible) when b <= a for some a in A.
Subset maximal_meet_antichain(const Lattice& lattice, const Subset& a,
                              Element b);

// True iff the Moebius inverse of phi vanishes outside the down-set V.
// Decided both from the inverse and from nabla_V^b = 0 for b outside V.
// Throws Error(NotADownSet).
bool support_check(const LatticeFn& phi, const Subset& down_set);

// phi* = 1 - phi on L*. Throws Error(NotACapacity).
LatticeFn dual_capacity(const LatticeFn& phi);

// Dual successive difference: nabla on L* (joins replace meets).
Rational delta(const LatticeFn& phi, const Subset& b_set, Element b);

}  // namespace caplat
