#include "caplat/frechet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "caplat/error.hpp"
#include "caplat/rational_lp.hpp"

namespace caplat {

TreeGraph TreeGraph::path(const std::vector<Element>& seq) {
  TreeGraph g;
  g.vertices = Subset(seq);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    g.edges.emplace_back(seq[i], seq[i + 1]);
  }
  return g;
}

void validate_tree(const TreeGraph& tree) {
  const auto& vs = tree.vertices;
  if (vs.empty()) throw Error(Errc::NotATree, "no vertices");
  if (tree.edges.size() + 1 != vs.size()) {
    throw Error(Errc::NotATree, "edge count must be vertex count - 1");
  }
  // Union-find over vertex positions in the subset.
  std::map<Element, Element> parent;
  for (Element v : vs) parent[v] = v;
  std::function<Element(Element)> root = [&](Element v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [a, b] : tree.edges) {
    if (!vs.contains(a) || !vs.contains(b) || a == b) {
      throw Error(Errc::NotATree, "edge outside the vertex set");
    }
    const Element ra = root(a);
    const Element rb = root(b);
    if (ra == rb) throw Error(Errc::NotATree, "cycle");
    parent[ra] = rb;
  }
}

Rational tree_value(const LatticeFn& phi, const TreeGraph& tree) {
  validate_tree(tree);
  const Lattice& L = phi.lattice();
  Rational sum;
  for (Element v : tree.vertices) sum += phi[v];
  for (const auto& [a, b] : tree.edges) sum -= phi[L.join(a, b)];
  return sum;
}

Rational rooted_value(const LatticeFn& phi, const TreeGraph& tree,
                      Element root) {
  validate_tree(tree);
  if (!tree.vertices.contains(root)) {
    throw Error(Errc::RootNotInTree, phi.lattice().name(root));
  }
  const Lattice& L = phi.lattice();
  std::map<Element, std::vector<Element>> adjacent;
  for (const auto& [a, b] : tree.edges) {
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  Rational sum;
  std::vector<std::pair<Element, Element>> stack{{root, root}};
  while (!stack.empty()) {
    const auto [node, from] = stack.back();
    stack.pop_back();
    for (Element child : adjacent[node]) {
      if (child == from) continue;
      sum += phi[L.join(child, node)] - phi[child];
      stack.emplace_back(child, node);
    }
  }
  return sum;
}

namespace {

struct ShortestPaths {
  std::vector<Rational> dist;
  std::vector<std::optional<Element>> pred;
};

ShortestPaths dijkstra(const LatticeFn& phi, Element source) {
  if (!is_monotone(phi)) {
    throw Error(Errc::NotMonotone, "lambda needs a monotone function");
  }
  const Lattice& L = phi.lattice();
  const std::size_t n = L.size();
  ShortestPaths sp;
  sp.dist.resize(n);
  sp.pred.resize(n);
  std::vector<bool> reached(n, false);
  std::vector<bool> settled(n, false);
  reached[source] = true;
  for (;;) {
    std::optional<Element> u;
    for (Element v = 0; v < n; ++v) {
      if (reached[v] && !settled[v] && (!u || sp.dist[v] < sp.dist[*u])) u = v;
    }
    if (!u) break;
    settled[*u] = true;
    for (Element v = 0; v < n; ++v) {
      if (settled[v]) continue;
      const Rational cand = sp.dist[*u] + phi[L.join(*u, v)] - phi[*u];
      if (!reached[v] || cand < sp.dist[v] ||
          (cand == sp.dist[v] && sp.pred[v] && *u < *sp.pred[v])) {
        reached[v] = true;
        sp.dist[v] = cand;
        sp.pred[v] = *u;
      }
    }
  }
  return sp;
}

void require_m1(const LatticeFn& phi, const char* what) {
  if (!is_monotone(phi)) throw Error(Errc::NotMonotone, what);
  if (!is_nonnegative(phi)) throw Error(Errc::NegativeValue, what);
}

}  // namespace

LatticeFn lambda_row(const LatticeFn& phi, Element a) {
  const ShortestPaths sp = dijkstra(phi, a);
  LatticeFn out(phi.lattice_ptr());
  for (Element x = 0; x < out.size(); ++x) out[x] = phi[x] - sp.dist[x];
  return out;
}

Rational lambda_bound(const LatticeFn& phi, Element a, Element b) {
  return lambda_row(phi, a)[b];
}

std::vector<Element> lambda_path(const LatticeFn& phi, Element a, Element b) {
  const ShortestPaths sp = dijkstra(phi, a);
  std::vector<Element> path{b};
  while (path.back() != a) path.push_back(*sp.pred[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

LatticeFn lambda_diff(const LatticeFn& phi, Element a) {
  return phi - lambda_row(phi, a);
}

LatticeFn successive_lambda(const LatticeFn& phi,
                            const std::vector<Element>& seq) {
  LatticeFn current = phi;
  for (Element a : seq) current = lambda_diff(current, a);
  return current;
}

IdealFn upset_indicator(const IdealLattice& ideals, NodeId u) {
  IdealFn g(ideals.size());
  for (NodeId v = 0; v < g.size(); ++v) g[v] = ideals.precedes(v, u) ? 1 : 0;
  return g;
}

namespace {

void require_size(const IdealLattice& ideals, const IdealFn& g) {
  if (g.size() != ideals.size()) {
    throw Error(Errc::DimensionMismatch,
                "objective has " + std::to_string(g.size()) +
                    " entries for " + std::to_string(ideals.size()) +
                    " up-sets");
  }
}

}  // namespace

Rational frechet_bound(const IdealLattice& ideals, const LatticeFn& phi,
                       const IdealFn& g) {
  require_size(ideals, g);
  const Lattice& L = phi.lattice();
  lp::LinearProgram program(ideals.size(), lp::Direction::Minimize);
  program.objective = g;
  for (Element x = 0; x < L.size(); ++x) {
    std::vector<Rational> row(ideals.size());
    for (NodeId v = 0; v < ideals.size(); ++v) {
      if (ideals.contains(v, x)) row[v] = 1;
    }
    program.add_row(std::move(row), lp::Sense::Equal, phi[x]);
  }
  const lp::Outcome out = lp::solve(program);
  if (out.status != lp::Status::Optimal) {
    throw Error(Errc::Infeasible, "no extension projects onto phi");
  }
  return out.value;
}

DualBound dual_bound(const IdealLattice& ideals, const LatticeFn& phi,
                     const IdealFn& g) {
  require_size(ideals, g);
  const Lattice& L = phi.lattice();
  lp::LinearProgram program(L.size(), lp::Direction::Maximize);
  program.objective = phi.values();
  for (Element x = 0; x < L.size(); ++x) program.set_free(x);
  for (NodeId v = 0; v < ideals.size(); ++v) {
    std::vector<Rational> row(L.size());
    for (Element x : ideals.node(v).members) row[x] = 1;
    program.add_row(std::move(row), lp::Sense::LessEqual, g[v]);
  }
  const lp::Outcome out = lp::solve(program);
  if (out.status != lp::Status::Optimal) {
    throw Error(Errc::Infeasible, "dual bound is unbounded");
  }
  return DualBound{out.value, LatticeFn(phi.lattice_ptr(), out.primal)};
}

bool dual_feasible(const IdealLattice& ideals, const LatticeFn& r,
                   const IdealFn& g) {
  require_size(ideals, g);
  for (NodeId v = 0; v < ideals.size(); ++v) {
    Rational sum;
    for (Element x : ideals.node(v).members) sum += r[x];
    if (sum > g[v]) return false;
  }
  return true;
}

Extension construct_extension_along_path(IdealLatticePtr ideals,
                                         const LatticeFn& phi,
                                         const std::vector<Element>& seq) {
  const Lattice& L = phi.lattice();
  if (Subset(seq).size() != seq.size() || !L.is_monotone_path(seq)) {
    throw Error(Errc::NotMonotonePath, "construct extension");
  }
  require_m1(phi, "construct extension");
  Extension total(ideals, {});
  LatticeFn current = phi;
  for (Element a : seq) {
    const LatticeFn lam = lambda_row(current, a);
    total += greedy_extension(ideals, lam);
    current -= lam;
  }
  total += greedy_extension(ideals, current);
  return total;
}

Rational evaluate_indicator(const Extension& ext, Element x,
                            const Subset& avoid) {
  const IdealLattice& ideals = ext.ideals();
  Rational sum;
  for (const auto& [v, mass] : ext.pmf()) {
    if (!ideals.contains(v, x)) continue;
    const bool clear = std::none_of(avoid.begin(), avoid.end(), [&](Element a) {
      return ideals.contains(v, a);
    });
    if (clear) sum += mass;
  }
  return sum;
}

}  // namespace caplat
