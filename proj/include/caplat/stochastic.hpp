#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "caplat/capacity.hpp"
#include "caplat/ideal_lattice.hpp"
#include "caplat/lattice.hpp"
#include "caplat/rational.hpp"

namespace caplat {

// Throws Error(NotACdf) unless f >= 0 everywhere and the total mass is 1.
void require_cdf(const LatticeFn& cdf, const char* what);

struct AntichainCertificate {
  bool holds = true;
  // First violating antichain in enumeration order, with both sides.
  std::optional<Subset> violation;
  Rational lhs;
  Rational rhs;
};

// nabla_A phi(1) <= nabla_A psi(1) for every antichain A. Cross-checked
// against P(X in U) <= P(Y in U) over all up-sets.
AntichainCertificate norberg_dominance(const LatticeFn& phi_cdf,
                                       const LatticeFn& psi_cdf);

struct PairAtom {
  Element lower;
  Element upper;
  Rational mass;
};

// Joint pmf of (X, Y) supported on x <= y with the given marginals, or
// nullopt when none exists.
std::optional<std::vector<PairAtom>> dominance_coupling(
    const LatticeFn& phi_cdf, const LatticeFn& psi_cdf);

struct PathCertificate {
  bool holds = true;
  // Every violating monotone path of the shortest violating length, sorted
  // by element positions; `violation` is the first of them.
  std::vector<std::vector<Element>> violations;
  std::optional<std::vector<Element>> violation;
  Rational lhs;
  Rational rhs;
  std::size_t states_visited = 0;
};

// Lambda_{a_1..a_k} phi(1) <= nabla_{a_1..a_k} psi(1) for every monotone
// path. Throws NotMonotone / NegativeValue / NotACdf.
PathCertificate comp_condition(const LatticeFn& phi, const LatticeFn& psi_cdf);

struct JointAtom {
  NodeId upset;
  Element y;
  Rational mass;
};

// Joint pmf on (up-set, element) pairs; atoms sorted by (upset, y).
struct JointPmf {
  IdealLatticePtr ideals;
  std::vector<JointAtom> atoms;
};

// Atom masses against phi(x) = P(x in V) and the cdf psi of Y, plus
// y in V on every atom.
bool replay_membership(const JointPmf& joint, const LatticeFn& phi,
                       const LatticeFn& psi_cdf);

std::optional<JointPmf> membership_coupling(IdealLatticePtr ideals,
                                            const LatticeFn& phi,
                                            const LatticeFn& psi_cdf);

// w on ideal-lattice x L, indexed node * |L| + y.
using JointFn = std::vector<Rational>;

// w_1(V, y) = [y in V].
JointFn membership_indicator(const IdealLattice& ideals);

// max E[w(X, Y)] over joint pmfs with the given marginals. Throws
// Error(Infeasible) when the marginals admit no joint law.
Rational joint_frechet(const IdealLattice& ideals, const LatticeFn& phi,
                       const LatticeFn& psi_cdf, const JointFn& w);

// min psi(h) - sum_x r_x phi(x) subject to h(y) - r(V) >= w(V, y), i.e.
// the dual program with g(V) = r(V). Solved as its own program.
Rational joint_dual(const IdealLattice& ideals, const LatticeFn& phi,
                    const LatticeFn& psi_cdf, const JointFn& w);

// Dual value at w_1 through the reduced program over monotone h in [0, 1]:
// min psi(h) - S^phi(h~) + phi(1), h~(V) = min_{y in V} h(y).
Rational joint_dual_reduced(const IdealLattice& ideals, const LatticeFn& phi,
                            const LatticeFn& psi_cdf);

struct MonotonePair {
  LatticeFn h;
  IdealFn g;
};

// h'(y) = max_V (w_1(V, y) + g(V)), g'(V) = min_y (h'(y) - w_1(V, y)).
MonotonePair monotone_rewrite(const IdealLattice& ideals, const IdealFn& g);

}  // namespace caplat
