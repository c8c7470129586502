#include "caplat/ideal_lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "caplat/error.hpp"

namespace caplat {

UpSet up_set(const Lattice& L, const Subset& generators) {
  if (generators.empty()) {
    throw Error(Errc::EmptyGenerator, "up-set of an empty generator");
  }
  UpSet u;
  u.generators = L.minimal(generators);
  u.members = L.up_closure(u.generators);
  return u;
}

IdealLattice IdealLattice::build(LatticePtr base, std::size_t cap) {
  const Lattice& L = *base;
  const std::size_t n = L.size();
  IdealLattice out;
  out.base_ = std::move(base);

  std::vector<Element> chain;
  std::function<void(Element)> extend = [&](Element from) {
    for (Element e = from; e < n; ++e) {
      const bool free = std::none_of(chain.begin(), chain.end(), [&](Element c) {
        return L.comparable(c, e);
      });
      if (!free) continue;
      chain.push_back(e);
      if (out.nodes_.size() >= cap) {
        throw Error(Errc::CapExceeded,
                    "ideal lattice exceeds " + std::to_string(cap) +
                        " nodes (reached " + std::to_string(out.nodes_.size()) +
                        ")");
      }
      out.nodes_.push_back(up_set(L, Subset(chain)));
      extend(e + 1);
      chain.pop_back();
    }
  };
  extend(0);

  std::stable_sort(out.nodes_.begin(), out.nodes_.end(),
                   [](const UpSet& a, const UpSet& b) {
                     if (a.members.size() != b.members.size()) {
                       return a.members.size() > b.members.size();
                     }
                     return a.generators < b.generators;
                   });
  out.member_.assign(out.nodes_.size(), std::vector<bool>(n, false));
  out.principal_.assign(n, 0);
  for (NodeId id = 0; id < out.nodes_.size(); ++id) {
    const UpSet& u = out.nodes_[id];
    for (Element x : u.members) out.member_[id][x] = true;
    out.by_generators_.emplace(u.generators, id);
    if (u.generators.size() == 1) out.principal_[u.generators.items()[0]] = id;
  }
  return out;
}

bool IdealLattice::precedes(NodeId v, NodeId u) const {
  for (Element x : nodes_[u].members) {
    if (!member_[v][x]) return false;
  }
  return true;
}

NodeId IdealLattice::find(const Subset& generators) const {
  auto it = by_generators_.find(base_->minimal(generators));
  if (generators.empty() || it == by_generators_.end()) {
    throw Error(Errc::UnknownElement,
                "no up-set generated by {" + base_->format(generators) + "}");
  }
  return it->second;
}

NodeId IdealLattice::find_upset(const std::string& text) const {
  return find(Subset(base_->parse_list(text)));
}

std::string IdealLattice::label(NodeId id) const {
  return "\xE2\x9F\xA8" + base_->format(nodes_.at(id).generators) +
         "\xE2\x9F\xA9*";
}

Lattice IdealLattice::as_lattice(std::size_t cap) const {
  const std::size_t m = size();
  std::vector<std::string> names;
  names.reserve(m);
  for (NodeId id = 0; id < m; ++id) names.push_back(label(id));
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
  for (NodeId v = 0; v < m; ++v) {
    for (NodeId u = 0; u < m; ++u) leq[v][u] = precedes(v, u);
  }
  return Lattice::from_order(std::move(names), std::move(leq), cap);
}

IdealLattice build_down_set_lattice(const Lattice& base, std::size_t cap) {
  return IdealLattice::build(share(base.dual()), cap);
}

Extension::Extension(IdealLatticePtr ideals, std::map<NodeId, Rational> pmf)
    : ideals_(std::move(ideals)) {
  for (auto& [id, mass] : pmf) {
    if (id >= ideals_->size()) {
      throw Error(Errc::DimensionMismatch, "pmf atom outside the lattice");
    }
    if (!is_zero(mass)) pmf_.emplace(id, std::move(mass));
  }
}

Rational Extension::total_mass() const {
  Rational sum;
  for (const auto& [id, mass] : pmf_) sum += mass;
  return sum;
}

Rational Extension::evaluate(NodeId u) const {
  Rational sum;
  for (const auto& [v, mass] : pmf_) {
    if (ideals_->precedes(v, u)) sum += mass;
  }
  return sum;
}

Rational Extension::expectation(const IdealFn& g) const {
  if (g.size() != ideals_->size()) {
    throw Error(Errc::DimensionMismatch, "function size differs from 𝓛");
  }
  Rational sum;
  for (const auto& [v, mass] : pmf_) sum += mass * g[v];
  return sum;
}

IdealFn Extension::values() const {
  IdealFn out(ideals_->size());
  for (NodeId u = 0; u < out.size(); ++u) out[u] = evaluate(u);
  return out;
}

Extension& Extension::operator+=(const Extension& other) {
  for (const auto& [id, mass] : other.pmf_) {
    Rational& slot = pmf_[id];
    slot += mass;
    if (is_zero(slot)) pmf_.erase(id);
  }
  return *this;
}

LatticeFn project(const Extension& ext) {
  const IdealLattice& ideals = ext.ideals();
  LatticeFn phi(ideals.base_ptr());
  for (const auto& [v, mass] : ext.pmf()) {
    for (Element x : ideals.node(v).members) phi[x] += mass;
  }
  return phi;
}

Extension greedy_extension(IdealLatticePtr ideals, const LatticeFn& phi) {
  if (!is_monotone(phi)) throw Error(Errc::NotMonotone, "greedy extension");
  if (!is_nonnegative(phi)) {
    throw Error(Errc::NegativeValue, "greedy extension");
  }
  const Lattice& L = phi.lattice();
  std::set<Rational> levels(phi.values().begin(), phi.values().end());
  levels.insert(Rational(0));
  std::map<NodeId, Rational> pmf;
  Rational previous(0);
  for (const Rational& r : levels) {
    if (r == 0) continue;
    std::vector<Element> above;
    for (Element a = 0; a < L.size(); ++a) {
      if (phi[a] > previous) above.push_back(a);
    }
    pmf[ideals->find(Subset(std::move(above)))] += r - previous;
    previous = r;
  }
  return Extension(std::move(ideals), std::move(pmf));
}

Extension mobius_extension(IdealLatticePtr ideals, const LatticeFn& phi) {
  const LatticeFn f = mobius_inverse(phi);
  std::map<NodeId, Rational> pmf;
  for (Element x = 0; x < f.size(); ++x) {
    if (sgn(f[x]) < 0) {
      throw Error(Errc::NotCompletelyMonotone,
                  "Moebius inverse is " + to_string(f[x]) + " at " +
                      phi.lattice().name(x));
    }
    if (!is_zero(f[x])) pmf.emplace(ideals->principal(x), f[x]);
  }
  return Extension(std::move(ideals), std::move(pmf));
}

bool is_mobius_extension(const Extension& ext, const LatticeFn& phi) {
  if (!(project(ext).values() == phi.values())) {
    throw Error(Errc::MarginalMismatch, "extension does not project onto phi");
  }
  const IdealLattice& ideals = ext.ideals();
  const Lattice& L = phi.lattice();
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = a + 1; b < L.size(); ++b) {
      if (ext.evaluate(ideals.find({a, b})) != phi[L.meet(a, b)]) return false;
    }
  }
  return true;
}

Extension dual_mobius_extension(IdealLatticePtr ideals, const LatticeFn& phi) {
  if (!is_capacity(phi)) {
    throw Error(Errc::NotACapacity, "dual Moebius extension");
  }
  if (!classify(phi).is_completely_alternating) {
    throw Error(Errc::NotCompletelyAlternating, "dual Moebius extension");
  }
  const Lattice& L = phi.lattice();
  std::map<NodeId, Rational> pmf;
  // Mass of the complement of the principal down-set <d> equals the
  // Moebius inverse of 1 - phi on L* at d.
  for (Element d = 0; d < L.size(); ++d) {
    Rational mass;
    for (Element y = 0; y < L.size(); ++y) {
      if (L.leq(d, y)) mass += (1 - phi[y]) * L.mobius(d, y);
    }
    if (is_zero(mass)) continue;
    std::vector<Element> rest;
    for (Element x = 0; x < L.size(); ++x) {
      if (!L.leq(x, d)) rest.push_back(x);
    }
    if (rest.empty()) {
      throw std::logic_error("dual Moebius extension: mass on the empty set");
    }
    pmf[ideals->find(Subset(std::move(rest)))] += mass;
  }
  return Extension(std::move(ideals), std::move(pmf));
}

bool satisfies_dual_pair_formula(const Extension& ext, const LatticeFn& phi) {
  const IdealLattice& ideals = ext.ideals();
  const Lattice& L = phi.lattice();
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = a + 1; b < L.size(); ++b) {
      if (ext.evaluate(ideals.find({a, b})) !=
          phi[a] + phi[b] - phi[L.join(a, b)]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace caplat
