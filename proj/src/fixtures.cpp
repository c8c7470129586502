#include "caplat/fixtures.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include "caplat/frechet.hpp"

namespace caplat::fixtures {

LatticePtr b3() { return share(boolean_lattice(3)); }
LatticePtr b4() { return share(boolean_lattice(4)); }

LatticeFn phi_c(const LatticePtr& b3, const Rational& c) {
  return LatticeFn::from_map(b3, {{"123", 1}, {"12", c}, {"13", c}, {"23", c}});
}

LatticeFn phi4(const LatticePtr& b4) {
  const Rational half(1, 2), third(1, 3), sixth(1, 6);
  return LatticeFn::from_map(b4, {{"1234", 1},
                                  {"123", half},
                                  {"124", half},
                                  {"234", half},
                                  {"134", third},
                                  {"13", third},
                                  {"23", third},
                                  {"12", sixth},
                                  {"34", sixth}});
}

LatticeFn psi4(const LatticePtr& b4) {
  const Rational third(1, 3), sixth(1, 6);
  return cdf_from_mass(LatticeFn::from_map(
      b4, {{"12", sixth}, {"34", sixth}, {"234", third}, {"124", third}}));
}

JointPmf gamma4(const IdealLatticePtr& ideals4) {
  const Lattice& L = ideals4->base();
  const Rational third(1, 3), sixth(1, 6);
  auto atom = [&](const std::string& gens, const std::string& y,
                  const Rational& mass) {
    return JointAtom{ideals4->find_upset(gens), L.index(y), mass};
  };
  JointPmf joint{ideals4,
                 {atom("12", "12", sixth), atom("13,23,34", "34", sixth),
                  atom("13,23", "234", sixth), atom("234", "234", sixth),
                  atom("124", "124", third)}};
  std::sort(joint.atoms.begin(), joint.atoms.end(),
            [](const JointAtom& a, const JointAtom& b) {
              return std::pair(a.upset, a.y) < std::pair(b.upset, b.y);
            });
  return joint;
}

const std::vector<std::string>& b3_upset_listing() {
  static const std::vector<std::string> listing = {
      "⟨∅⟩*",     "⟨1,2,3⟩*",    "⟨1,2⟩*",   "⟨1,3⟩*",   "⟨2,3⟩*",
      "⟨1,23⟩*",  "⟨2,13⟩*",     "⟨3,12⟩*",  "⟨1⟩*",     "⟨2⟩*",
      "⟨3⟩*",     "⟨12,13,23⟩*", "⟨12,13⟩*", "⟨12,23⟩*", "⟨13,23⟩*",
      "⟨12⟩*",    "⟨13⟩*",       "⟨23⟩*",    "⟨123⟩*"};
  return listing;
}

namespace {

std::string show(const Rational& got, const Rational& want) {
  return "got " + to_string(got) + ", want " + to_string(want);
}

// Collects mismatches; the check passes when none were recorded.
struct Tally {
  std::vector<std::string> misses;
  void expect(bool ok, const std::string& what) {
    if (!ok) misses.push_back(what);
  }
  void equal(const Rational& got, const Rational& want, const std::string& at) {
    if (got != want) misses.push_back(at + ": " + show(got, want));
  }
  Check finish(std::string name, std::string ok_detail) const {
    if (misses.empty()) return {std::move(name), true, std::move(ok_detail)};
    std::ostringstream out;
    for (std::size_t i = 0; i < misses.size() && i < 5; ++i) {
      out << (i ? "; " : "") << misses[i];
    }
    return {std::move(name), false, out.str()};
  }
};

bool upset_within(const IdealLattice& ideals, NodeId u, const Subset& allowed) {
  for (Element x : ideals.node(u).members) {
    if (!allowed.contains(x)) return false;
  }
  return true;
}

// B_phi(U) on every node.
IdealFn bound_table(const IdealLattice& ideals, const LatticeFn& phi) {
  IdealFn table(ideals.size());
  for (NodeId u = 0; u < ideals.size(); ++u) {
    table[u] = frechet_bound(ideals, phi, upset_indicator(ideals, u));
  }
  return table;
}

bool table_is_cm(const IdealLattice& ideals, const IdealFn& table) {
  const LatticePtr as = share(ideals.as_lattice());
  return classify(LatticeFn(as, table)).is_completely_monotone;
}

// Second enumerator: every subset of L closed upward along covers.
std::size_t count_upsets_by_subsets(const Lattice& L) {
  std::size_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << L.size()); ++mask) {
    bool closed = true;
    for (const auto& [lo, hi] : L.covers()) {
      if ((mask >> lo & 1) && !(mask >> hi & 1)) {
        closed = false;
        break;
      }
    }
    count += closed;
  }
  return count;
}

Check check_upsets() {
  const LatticePtr L3 = b3();
  const IdealLattice ideals = IdealLattice::build(L3);
  Tally t;
  const auto& want = b3_upset_listing();
  t.expect(ideals.size() == want.size(),
           "B3 count " + std::to_string(ideals.size()));
  for (NodeId u = 0; u < ideals.size() && u < want.size(); ++u) {
    t.expect(ideals.label(u) == want[u], ideals.label(u) + " vs " + want[u]);
  }
  const LatticePtr L4 = b4();
  const std::size_t n4 = IdealLattice::build(L4).size();
  t.expect(n4 == 167, "B4 count " + std::to_string(n4));
  const std::size_t brute4 = count_upsets_by_subsets(*L4);
  t.expect(brute4 == 167, "B4 subset count " + std::to_string(brute4));
  return t.finish("b3-upsets",
                  "19 up-sets of B3 in listed order; 167 of B4 by both enumerators");
}

Check check_greedy() {
  const LatticePtr L = b3();
  auto ideals = std::make_shared<const IdealLattice>(IdealLattice::build(L));
  const Subset upper{L->index("12"), L->index("13"), L->index("23"),
                     L->index("123")};
  const NodeId top = ideals->principal(L->top());
  Tally t;
  for (const Rational& c :
       {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
    const Extension ext = greedy_extension(ideals, phi_c(L, c));
    for (NodeId u = 0; u < ideals->size(); ++u) {
      Rational want = 0;
      if (u == top) {
        want = 1;
      } else if (upset_within(*ideals, u, upper)) {
        want = c;
      }
      t.equal(ext.evaluate(u), want,
              "c=" + to_string(c) + " at " + ideals->label(u));
    }
  }
  return t.finish("greedy-tables", "greedy tables for c = 1/4, 1/3, 1/2, 2/3");
}

Check check_mobius() {
  const LatticePtr L = b3();
  auto ideals = std::make_shared<const IdealLattice>(IdealLattice::build(L));
  const LatticeFn phi = phi_c(L, Rational(1, 3));
  const Extension ext = mobius_extension(ideals, phi);
  Tally t;
  std::map<NodeId, Rational> want;
  for (const char* name : {"12", "13", "23"}) {
    want[ideals->principal(L->index(name))] = Rational(1, 3);
  }
  t.expect(ext.pmf() == want, "pmf differs from 1/3 on <12>*, <13>*, <23>*");
  t.expect(is_mobius_extension(ext, phi), "pair condition");
  return t.finish("mobius-extension", "pmf 1/3 on <12>*, <13>*, <23>*; 28 pairs hold");
}

Check check_bounds() {
  const LatticePtr L = b3();
  const IdealLattice ideals = IdealLattice::build(L);
  Tally t;
  auto node = [&](const char* gens) { return ideals.find_upset(gens); };

  const IdealFn two_thirds = bound_table(ideals, phi_c(L, Rational(2, 3)));
  std::map<NodeId, Rational> want23 = {
      {node("123"), 1},          {node("12"), Rational(2, 3)},
      {node("13"), Rational(2, 3)}, {node("23"), Rational(2, 3)},
      {node("12,13"), Rational(1, 3)}, {node("12,23"), Rational(1, 3)},
      {node("13,23"), Rational(1, 3)}};
  for (NodeId u = 0; u < ideals.size(); ++u) {
    t.equal(two_thirds[u], want23.count(u) ? want23[u] : Rational(0),
            "B_2/3 at " + ideals.label(u));
  }
  t.expect(table_is_cm(ideals, two_thirds), "B_2/3 should be completely monotone");

  const IdealFn half = bound_table(ideals, phi_c(L, Rational(1, 2)));
  std::map<NodeId, Rational> want12 = {{node("123"), 1},
                                       {node("12"), Rational(1, 2)},
                                       {node("13"), Rational(1, 2)},
                                       {node("23"), Rational(1, 2)}};
  for (NodeId u = 0; u < ideals.size(); ++u) {
    t.equal(half[u], want12.count(u) ? want12[u] : Rational(0),
            "B_1/2 at " + ideals.label(u));
  }
  t.expect(!table_is_cm(ideals, half), "B_1/2 should not be completely monotone");
  return t.finish("lower-bound-tables",
                  "B_2/3 completely monotone, B_1/2 not");
}

Check check_lattice4() {
  const LatticePtr L = b4();
  const LatticeFn phi = phi4(L);
  const Element a12 = L->index("12"), a34 = L->index("34");
  const LatticeFn first = successive_lambda(phi, {a12, a34});
  const LatticeFn second = successive_lambda(phi, {a34, a12});
  const Element x234 = L->index("234");
  Tally t;
  t.equal(first[x234], Rational(1, 3), "Lambda_{12,34} at 234");
  t.equal(second[x234], Rational(1, 6), "Lambda_{34,12} at 234");
  const LatticeFn shared = LatticeFn::from_map(
      L, {{"1234", Rational(2, 3)},
          {"124", Rational(1, 3)},
          {"13", Rational(1, 6)},
          {"23", Rational(1, 6)},
          {"123", Rational(1, 6)},
          {"134", Rational(1, 6)}});
  for (Element x = 0; x < L->size(); ++x) {
    if (x == x234) continue;
    t.equal(first[x], shared[x], "Lambda_{12,34} at " + L->name(x));
    t.equal(second[x], shared[x], "Lambda_{34,12} at " + L->name(x));
  }
  return t.finish("b4-lambda-orders", "1/3 vs 1/6 at 234, shared table elsewhere");
}

Check check_final() {
  const LatticePtr L = b4();
  auto ideals = std::make_shared<const IdealLattice>(IdealLattice::build(L));
  const LatticeFn phi = phi4(L);
  const LatticeFn psi = psi4(L);
  const std::vector<Element> path = L->parse_list("34,12,234");
  Tally t;
  t.equal(successive_lambda(phi, path)[L->top()], Rational(1, 2),
          "Lambda_{34,12,234} at top");
  t.equal(nabla(psi, Subset(path), L->top()), Rational(1, 3),
          "nabla_{34,12,234} psi at top");
  const PathCertificate cert = comp_condition(phi, psi);
  t.expect(!cert.holds, "comparison condition should fail");
  t.expect(std::find(cert.violations.begin(), cert.violations.end(), path) !=
               cert.violations.end(),
           "34,12,234 should be a shortest violating path");
  const auto joint = membership_coupling(ideals, phi, psi);
  t.expect(joint.has_value(), "membership coupling should exist");
  if (joint) t.expect(replay_membership(*joint, phi, psi), "LP coupling replay");
  t.expect(replay_membership(gamma4(ideals), phi, psi), "Gamma replay");
  return t.finish("b4-coupling",
                  "(34,12,234) violates 1/2 > 1/3; coupling exists; Gamma replays");
}

}  // namespace

std::vector<Check> worked_examples() {
  return {check_upsets(), check_greedy(),   check_mobius(),
          check_bounds(), check_lattice4(), check_final()};
}

}  // namespace caplat::fixtures
