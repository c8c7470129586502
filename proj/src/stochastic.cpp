#include "caplat/stochastic.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>

#include "caplat/error.hpp"
#include "caplat/frechet.hpp"
#include "caplat/rational_lp.hpp"

namespace caplat {

void require_cdf(const LatticeFn& cdf, const char* what) {
  const LatticeFn f = mobius_inverse(cdf);
  for (Element x = 0; x < f.size(); ++x) {
    if (sgn(f[x]) < 0) {
      throw Error(Errc::NotACdf, std::string(what) + ": negative mass at " +
                                     cdf.lattice().name(x));
    }
  }
  if (cdf[cdf.lattice().top()] != 1) {
    throw Error(Errc::NotACdf, std::string(what) + ": total mass is not 1");
  }
}

namespace {

void for_each_antichain(const Lattice& L,
                        const std::function<void(const Subset&)>& visit) {
  std::vector<Element> chain;
  std::function<void(Element)> extend = [&](Element from) {
    for (Element e = from; e < L.size(); ++e) {
      const bool free = std::none_of(chain.begin(), chain.end(), [&](Element c) {
        return L.comparable(c, e);
      });
      if (!free) continue;
      chain.push_back(e);
      visit(Subset(chain));
      extend(e + 1);
      chain.pop_back();
    }
  };
  extend(0);
}

Rational mass_in(const LatticeFn& mass, const Subset& s) {
  Rational sum;
  for (Element x : s) sum += mass[x];
  return sum;
}

}  // namespace

AntichainCertificate norberg_dominance(const LatticeFn& phi_cdf,
                                       const LatticeFn& psi_cdf) {
  require_cdf(phi_cdf, "norberg_dominance phi");
  require_cdf(psi_cdf, "norberg_dominance psi");
  const Lattice& L = phi_cdf.lattice();
  const Element top = L.top();
  AntichainCertificate cert;
  for_each_antichain(L, [&](const Subset& a) {
    if (!cert.holds) return;
    const Rational lhs = nabla(phi_cdf, a, top);
    const Rational rhs = nabla(psi_cdf, a, top);
    if (lhs > rhs) {
      cert.holds = false;
      cert.violation = a;
      cert.lhs = lhs;
      cert.rhs = rhs;
    }
  });

  // P(X in U) <= P(Y in U) over all nonempty up-sets.
  const LatticeFn fx = mobius_inverse(phi_cdf);
  const LatticeFn fy = mobius_inverse(psi_cdf);
  bool by_upsets = true;
  for_each_antichain(L, [&](const Subset& a) {
    const Subset u = L.up_closure(a);
    if (mass_in(fx, u) > mass_in(fy, u)) by_upsets = false;
  });
  if (by_upsets != cert.holds) {
    throw std::logic_error("norberg_dominance: antichain and up-set tests differ");
  }
  return cert;
}

std::optional<std::vector<PairAtom>> dominance_coupling(
    const LatticeFn& phi_cdf, const LatticeFn& psi_cdf) {
  require_cdf(phi_cdf, "dominance_coupling phi");
  require_cdf(psi_cdf, "dominance_coupling psi");
  const Lattice& L = phi_cdf.lattice();
  const LatticeFn fx = mobius_inverse(phi_cdf);
  const LatticeFn fy = mobius_inverse(psi_cdf);
  std::vector<std::pair<Element, Element>> vars;
  for (Element x = 0; x < L.size(); ++x) {
    for (Element y = 0; y < L.size(); ++y) {
      if (L.leq(x, y)) vars.emplace_back(x, y);
    }
  }
  lp::LinearProgram program(vars.size());
  for (Element x = 0; x < L.size(); ++x) {
    std::vector<Rational> row(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (vars[k].first == x) row[k] = 1;
    }
    program.add_row(std::move(row), lp::Sense::Equal, fx[x]);
  }
  for (Element y = 0; y < L.size(); ++y) {
    std::vector<Rational> row(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (vars[k].second == y) row[k] = 1;
    }
    program.add_row(std::move(row), lp::Sense::Equal, fy[y]);
  }
  const lp::Feasibility result = lp::feasible(program);
  const bool dominated = norberg_dominance(phi_cdf, psi_cdf).holds;
  if (result.feasible != dominated) {
    throw std::logic_error("dominance_coupling: LP and antichain test differ");
  }
  if (!result.feasible) return std::nullopt;
  std::vector<PairAtom> atoms;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!is_zero(result.witness[k])) {
      atoms.push_back({vars[k].first, vars[k].second, result.witness[k]});
    }
  }
  return atoms;
}

PathCertificate comp_condition(const LatticeFn& phi, const LatticeFn& psi_cdf) {
  if (!is_monotone(phi)) throw Error(Errc::NotMonotone, "comp_condition");
  if (!is_nonnegative(phi)) throw Error(Errc::NegativeValue, "comp_condition");
  require_cdf(psi_cdf, "comp_condition psi");
  const Lattice& L = phi.lattice();
  const std::size_t n = L.size();
  if (n > 64) throw Error(Errc::CapExceeded, "comp_condition needs |L| <= 64");
  const Element top = L.top();
  const LatticeFn fy = mobius_inverse(psi_cdf);

  using Mask = std::uint64_t;
  auto bit = [](Element e) { return Mask{1} << e; };
  // nabla_S psi(1) = P(Y not below any element of S).
  auto rhs_of = [&](Mask s) {
    Rational sum;
    for (Element y = 0; y < n; ++y) {
      bool below = false;
      for (Element a = 0; a < n && !below; ++a) {
        if ((s & bit(a)) && L.leq(y, a)) below = true;
      }
      if (!below) sum += fy[y];
    }
    return sum;
  };
  // Elements that may still follow: unused and not strictly below a used one.
  auto allowed = [&](Mask s) {
    Mask out = 0;
    for (Element e = 0; e < n; ++e) {
      if (s & bit(e)) continue;
      bool blocked = false;
      for (Element a = 0; a < n && !blocked; ++a) {
        if ((s & bit(a)) && L.less(e, a)) blocked = true;
      }
      if (!blocked) out |= bit(e);
    }
    return out;
  };

  // Breadth-first by path length. Paths reaching the same (used set,
  // function) share a state; all of them are kept so that every shortest
  // violation is reported.
  struct State {
    Mask used;
    LatticeFn fn;
    std::vector<std::vector<Element>> paths;
  };
  PathCertificate cert;
  std::vector<State> level{{0, phi, {{}}}};
  while (!level.empty() && cert.holds) {
    std::vector<State> next_level;
    std::map<std::pair<Mask, std::vector<Rational>>, std::size_t> index;
    for (const State& state : level) {
      ++cert.states_visited;
      const Mask next = allowed(state.used);
      for (Element a = 0; a < n; ++a) {
        if (!(next & bit(a))) continue;
        const Mask used = state.used | bit(a);
        LatticeFn fn = lambda_diff(state.fn, a);
        const Rational lhs = fn[top];
        const Rational rhs = rhs_of(used);
        if (lhs > rhs) {
          for (auto path : state.paths) {
            path.push_back(a);
            cert.violations.push_back(std::move(path));
          }
          if (cert.holds) {
            cert.holds = false;
            cert.lhs = lhs;
            cert.rhs = rhs;
          }
          continue;
        }
        // Descendants only lower the left side; their right side is at least
        // nabla over every element that can still be appended (the top
        // aside, which zeroes the left side).
        const Mask reach = (used | allowed(used)) & ~bit(top);
        if (lhs <= rhs_of(reach)) continue;
        auto [it, fresh] = index.emplace(std::pair(used, fn.values()),
                                         next_level.size());
        if (fresh) next_level.push_back({used, std::move(fn), {}});
        for (auto path : state.paths) {
          path.push_back(a);
          next_level[it->second].paths.push_back(std::move(path));
        }
      }
    }
    level = std::move(next_level);
  }
  if (!cert.holds) {
    std::sort(cert.violations.begin(), cert.violations.end());
    cert.violation = cert.violations.front();
    const LatticeFn fn = successive_lambda(phi, *cert.violation);
    cert.lhs = fn[top];
    cert.rhs = nabla(psi_cdf, Subset(*cert.violation), top);
  }
  return cert;
}

bool replay_membership(const JointPmf& joint, const LatticeFn& phi,
                       const LatticeFn& psi_cdf) {
  const IdealLattice& ideals = *joint.ideals;
  const Lattice& L = phi.lattice();
  LatticeFn phi_seen(phi.lattice_ptr());
  LatticeFn y_mass(phi.lattice_ptr());
  for (const auto& atom : joint.atoms) {
    if (sgn(atom.mass) < 0 || !ideals.contains(atom.upset, atom.y)) {
      return false;
    }
    for (Element x : ideals.node(atom.upset).members) {
      phi_seen[x] += atom.mass;
    }
    y_mass[atom.y] += atom.mass;
  }
  (void)L;
  return phi_seen.values() == phi.values() &&
         cdf_from_mass(y_mass).values() == psi_cdf.values();
}

namespace {

// Rows: phi(x) = sum_{V contains x} sum_y G(V, y); f_Y(y) = sum_V G(V, y).
// Columns follow `vars`.
lp::LinearProgram joint_program(
    const IdealLattice& ideals, const LatticeFn& phi, const LatticeFn& fy,
    const std::vector<std::pair<NodeId, Element>>& vars) {
  const std::size_t n = phi.size();
  lp::LinearProgram program(vars.size());
  for (Element x = 0; x < n; ++x) {
    std::vector<Rational> row(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (ideals.contains(vars[k].first, x)) row[k] = 1;
    }
    program.add_row(std::move(row), lp::Sense::Equal, phi[x]);
  }
  for (Element y = 0; y < n; ++y) {
    std::vector<Rational> row(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (vars[k].second == y) row[k] = 1;
    }
    program.add_row(std::move(row), lp::Sense::Equal, fy[y]);
  }
  return program;
}

void require_joint_inputs(const LatticeFn& phi, const LatticeFn& psi_cdf,
                          const char* what) {
  if (!is_monotone(phi)) throw Error(Errc::NotMonotone, what);
  if (!is_nonnegative(phi)) throw Error(Errc::NegativeValue, what);
  require_cdf(psi_cdf, what);
}

}  // namespace

std::optional<JointPmf> membership_coupling(IdealLatticePtr ideals,
                                            const LatticeFn& phi,
                                            const LatticeFn& psi_cdf) {
  require_joint_inputs(phi, psi_cdf, "membership_coupling");
  const std::size_t n = phi.size();
  std::vector<std::pair<NodeId, Element>> vars;
  for (NodeId v = 0; v < ideals->size(); ++v) {
    for (Element y = 0; y < n; ++y) {
      if (ideals->contains(v, y)) vars.emplace_back(v, y);
    }
  }
  const lp::LinearProgram program =
      joint_program(*ideals, phi, mobius_inverse(psi_cdf), vars);
  const lp::Feasibility result = lp::feasible(program);
  if (!result.feasible) return std::nullopt;
  JointPmf joint{std::move(ideals), {}};
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!is_zero(result.witness[k])) {
      joint.atoms.push_back({vars[k].first, vars[k].second, result.witness[k]});
    }
  }
  return joint;
}

JointFn membership_indicator(const IdealLattice& ideals) {
  const std::size_t n = ideals.base().size();
  JointFn w(ideals.size() * n);
  for (NodeId v = 0; v < ideals.size(); ++v) {
    for (Element y = 0; y < n; ++y) w[v * n + y] = ideals.contains(v, y) ? 1 : 0;
  }
  return w;
}

namespace {

void require_joint_size(const IdealLattice& ideals, const JointFn& w) {
  if (w.size() != ideals.size() * ideals.base().size()) {
    throw Error(Errc::DimensionMismatch, "joint objective size");
  }
}

}  // namespace

Rational joint_frechet(const IdealLattice& ideals, const LatticeFn& phi,
                       const LatticeFn& psi_cdf, const JointFn& w) {
  require_joint_inputs(phi, psi_cdf, "joint_frechet");
  require_joint_size(ideals, w);
  const std::size_t n = phi.size();
  std::vector<std::pair<NodeId, Element>> vars;
  for (NodeId v = 0; v < ideals.size(); ++v) {
    for (Element y = 0; y < n; ++y) vars.emplace_back(v, y);
  }
  lp::LinearProgram program =
      joint_program(ideals, phi, mobius_inverse(psi_cdf), vars);
  program.direction = lp::Direction::Maximize;
  program.objective = w;
  const lp::Outcome out = lp::solve(program);
  if (out.status != lp::Status::Optimal) {
    throw Error(Errc::Infeasible, "marginals admit no joint law");
  }
  return out.value;
}

Rational joint_dual(const IdealLattice& ideals, const LatticeFn& phi,
                    const LatticeFn& psi_cdf, const JointFn& w) {
  require_joint_inputs(phi, psi_cdf, "joint_dual");
  require_joint_size(ideals, w);
  const std::size_t n = phi.size();
  const LatticeFn fy = mobius_inverse(psi_cdf);
  // Variables: h_0..h_{n-1}, r_0..r_{n-1}, all free.
  lp::LinearProgram program(2 * n, lp::Direction::Minimize);
  for (Element y = 0; y < n; ++y) program.objective[y] = fy[y];
  for (Element x = 0; x < n; ++x) program.objective[n + x] = -phi[x];
  for (std::size_t j = 0; j < 2 * n; ++j) program.set_free(j);
  for (NodeId v = 0; v < ideals.size(); ++v) {
    for (Element y = 0; y < n; ++y) {
      std::vector<Rational> row(2 * n);
      row[y] = 1;
      for (Element x : ideals.node(v).members) row[n + x] = -1;
      program.add_row(std::move(row), lp::Sense::GreaterEqual, w[v * n + y]);
    }
  }
  const lp::Outcome out = lp::solve(program);
  if (out.status != lp::Status::Optimal) {
    throw Error(Errc::Infeasible, "joint dual is unbounded");
  }
  return out.value;
}

Rational joint_dual_reduced(const IdealLattice& ideals, const LatticeFn& phi,
                            const LatticeFn& psi_cdf) {
  require_joint_inputs(phi, psi_cdf, "joint_dual_reduced");
  const Lattice& L = phi.lattice();
  const std::size_t n = L.size();
  if (phi[L.top()] != psi_cdf[L.top()]) {
    throw Error(Errc::Infeasible, "marginals differ in total mass");
  }
  const LatticeFn fy = mobius_inverse(psi_cdf);
  // Variables: h_0..h_{n-1} in [0, 1], r_0..r_{n-1} free.
  lp::LinearProgram program(2 * n, lp::Direction::Minimize);
  for (Element y = 0; y < n; ++y) program.objective[y] = fy[y];
  for (Element x = 0; x < n; ++x) {
    program.objective[n + x] = -phi[x];
    program.set_free(n + x);
  }
  for (Element y = 0; y < n; ++y) {
    std::vector<Rational> row(2 * n);
    row[y] = 1;
    program.add_row(std::move(row), lp::Sense::LessEqual, Rational(1));
  }
  for (const auto& [lo, hi] : L.covers()) {
    std::vector<Rational> row(2 * n);
    row[lo] = 1;
    row[hi] = -1;
    program.add_row(std::move(row), lp::Sense::LessEqual, Rational(0));
  }
  // r(V) <= h~(V); for monotone h the minimum over V sits on a generator.
  for (NodeId v = 0; v < ideals.size(); ++v) {
    for (Element y : ideals.node(v).generators) {
      std::vector<Rational> row(2 * n);
      row[y] = -1;
      for (Element x : ideals.node(v).members) row[n + x] = 1;
      program.add_row(std::move(row), lp::Sense::LessEqual, Rational(0));
    }
  }
  const lp::Outcome out = lp::solve(program);
  if (out.status != lp::Status::Optimal) {
    throw Error(Errc::Infeasible, "reduced joint dual failed");
  }
  return out.value + phi[L.top()];
}

MonotonePair monotone_rewrite(const IdealLattice& ideals, const IdealFn& g) {
  if (g.size() != ideals.size()) {
    throw Error(Errc::DimensionMismatch, "monotone_rewrite");
  }
  const std::size_t n = ideals.base().size();
  LatticeFn h(ideals.base_ptr());
  for (Element y = 0; y < n; ++y) {
    std::optional<Rational> best;
    for (NodeId v = 0; v < ideals.size(); ++v) {
      Rational value = g[v] + (ideals.contains(v, y) ? 1 : 0);
      if (!best || value > *best) best = value;
    }
    h[y] = *best;
  }
  IdealFn g2(ideals.size());
  for (NodeId v = 0; v < ideals.size(); ++v) {
    std::optional<Rational> best;
    for (Element y = 0; y < n; ++y) {
      Rational value = h[y] - (ideals.contains(v, y) ? 1 : 0);
      if (!best || value < *best) best = value;
    }
    g2[v] = *best;
  }
  return {std::move(h), std::move(g2)};
}

}  // namespace caplat
