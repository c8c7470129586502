#pragma once

#include <utility>
#include <vector>

#include "caplat/capacity.hpp"
#include "caplat/ideal_lattice.hpp"
#include "caplat/lattice.hpp"
#include "caplat/rational.hpp"

namespace caplat {

// A tree on a vertex set of L.
struct TreeGraph {
  Subset vertices;
  std::vector<std::pair<Element, Element>> edges;

  // The path a_1 - a_2 - ... - a_n.
  static TreeGraph path(const std::vector<Element>& seq);
};

// Throws Error(NotATree) unless connected, acyclic and over its vertices.
void validate_tree(const TreeGraph& tree);

// sum_{a in G} phi(a) - sum_{{a,b} in E(G)} phi(a v b).
Rational tree_value(const LatticeFn& phi, const TreeGraph& tree);

// sum over edges (x, parent y) of the tree rooted at `root` of
// phi(x v y) - phi(x). Throws NotATree / RootNotInTree.
Rational rooted_value(const LatticeFn& phi, const TreeGraph& tree,
                      Element root);

// lambda(phi; a, x) for every x, by shortest paths from a with edge weight
// w(u -> v) = phi(u v v) - phi(u). Throws Error(NotMonotone).
LatticeFn lambda_row(const LatticeFn& phi, Element a);

// max phi(H) over paths H from a to b.
Rational lambda_bound(const LatticeFn& phi, Element a, Element b);

// A maximizing path from a to b. Among equal distances the predecessor with
// the smallest position wins.
std::vector<Element> lambda_path(const LatticeFn& phi, Element a, Element b);

// Lambda_a phi(x) = phi(x) - lambda(phi; a, x).
LatticeFn lambda_diff(const LatticeFn& phi, Element a);

// Lambda_{a_1,...,a_n} phi, applied in the given order.
LatticeFn successive_lambda(const LatticeFn& phi,
                            const std::vector<Element>& seq);

// g_U(V) = [V precedes U], the indicator whose expectation is Phi(U).
IdealFn upset_indicator(const IdealLattice& ideals, NodeId u);

// min Phi(g) over extensions projecting onto phi. Throws
// Error(Infeasible) when phi admits no extension, DimensionMismatch when g
// has the wrong size.
Rational frechet_bound(const IdealLattice& ideals, const LatticeFn& phi,
                       const IdealFn& g);

struct DualBound {
  Rational value;
  // Coefficients r_x with sum_{x in V} r_x <= g(V) for all V.
  LatticeFn coefficients;
};

// max sum_x r_x phi(x) subject to sum_{x in V} r_x <= g(V), solved as its
// own program.
DualBound dual_bound(const IdealLattice& ideals, const LatticeFn& phi,
                     const IdealFn& g);

// True iff sum_{x in V} r_x <= g(V) for every node V.
bool dual_feasible(const IdealLattice& ideals, const LatticeFn& r,
                   const IdealFn& g);

// Phi = sum_i Psi_i with Psi_i the greedy extension of
// lambda(phi_i; a_{i+1}, .) and Psi_n the greedy extension of phi_n.
// Throws NotMonotonePath / NotMonotone / NegativeValue.
Extension construct_extension_along_path(IdealLatticePtr ideals,
                                         const LatticeFn& phi,
                                         const std::vector<Element>& seq);

// Sum of pmf over V with x in V and V disjoint from `avoid`.
Rational evaluate_indicator(const Extension& ext, Element x,
                            const Subset& avoid);

}  // namespace caplat
