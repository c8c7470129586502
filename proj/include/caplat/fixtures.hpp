#pragma once

#include <string>
#include <vector>

#include "caplat/capacity.hpp"
#include "caplat/ideal_lattice.hpp"
#include "caplat/lattice.hpp"
#include "caplat/rational.hpp"
#include "caplat/stochastic.hpp"

// Worked examples on the Boolean lattices B3 and B4, shared by the tests,
// the acceptance binary and `caplat paper-examples`.
namespace caplat::fixtures {

LatticePtr b3();
LatticePtr b4();

// 1 at 123, c at 12, 13, 23, 0 elsewhere.
LatticeFn phi_c(const LatticePtr& b3, const Rational& c);

// The B4 capacity with 1/2 at 123, 124, 234 and 1/3 at 134, 13, 23.
LatticeFn phi4(const LatticePtr& b4);

// cdf of Y with pmf 12: 1/6, 34: 1/6, 234: 1/3, 124: 1/3.
LatticeFn psi4(const LatticePtr& b4);

// Joint pmf of (up-set, Y) whose marginals are phi4 and psi4.
JointPmf gamma4(const IdealLatticePtr& ideals4);

// The 19 up-sets of B3 as listed with the example, in that order.
const std::vector<std::string>& b3_upset_listing();

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Re-derives every example value; one entry per example or table.
std::vector<Check> worked_examples();

}  // namespace caplat::fixtures
