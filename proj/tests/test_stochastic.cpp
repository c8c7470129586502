#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caplat/error.hpp"
#include "caplat/fixtures.hpp"
#include "caplat/frechet.hpp"
#include "caplat/stochastic.hpp"
#include "support.hpp"

using namespace caplat;
using test::code_of;
using test::ideals_of;
using test::q;
using test::seq;
using test::subset;

namespace {

LatticeFn point_cdf(const LatticePtr& L, Element at) {
  LatticeFn f(L);
  for (Element x = 0; x < L->size(); ++x) f[x] = L->leq(at, x) ? 1 : 0;
  return f;
}

bool upset_masses_dominate(const LatticeFn& phi_cdf, const LatticeFn& psi_cdf,
                           const IdealLattice& I) {
  const LatticeFn fx = mobius_inverse(phi_cdf);
  const LatticeFn fy = mobius_inverse(psi_cdf);
  for (NodeId u = 0; u < I.size(); ++u) {
    Rational px, py;
    for (Element x : I.node(u).members) {
      px += fx[x];
      py += fy[x];
    }
    if (px > py) return false;
  }
  return true;
}

void check_pair_coupling(const std::vector<PairAtom>& atoms, const LatticeFn& phi_cdf,
                         const LatticeFn& psi_cdf) {
  const Lattice& L = phi_cdf.lattice();
  LatticeFn fx(phi_cdf.lattice_ptr());
  LatticeFn fy(phi_cdf.lattice_ptr());
  for (const PairAtom& a : atoms) {
    CHECK(L.leq(a.lower, a.upper));
    CHECK(sgn(a.mass) > 0);
    fx[a.lower] += a.mass;
    fy[a.upper] += a.mass;
  }
  CHECK(fx == mobius_inverse(phi_cdf));
  CHECK(fy == mobius_inverse(psi_cdf));
}

// psi with its mass moved a fraction t of the way to the bottom element.
LatticeFn shift_down(const LatticeFn& psi_cdf, const Rational& t) {
  const LatticeFn f = mobius_inverse(psi_cdf);
  const Lattice& L = psi_cdf.lattice();
  LatticeFn g(psi_cdf.lattice_ptr());
  for (Element x = 0; x < L.size(); ++x) {
    g[x] += (1 - t) * f[x];
    g[L.bottom()] += t * f[x];
  }
  return cdf_from_mass(g);
}

JointFn random_joint_fn(const IdealLattice& I) {
  JointFn w(I.size() * I.base().size());
  for (auto& v : w) v = ratio(test::uniform(-2, 3), test::uniform(1, 3));
  return w;
}

}  // namespace

TEST_CASE("cdf checks") {
  const LatticePtr L = fixtures::b3();
  CHECK_NOTHROW(require_cdf(point_cdf(L, L->bottom()), "x"));
  CHECK(code_of([&] { require_cdf(fixtures::phi_c(L, q("1/2")), "x"); }) == Errc::NotACdf);
  CHECK(code_of([&] { require_cdf(LatticeFn(L), "x"); }) == Errc::NotACdf);
}

TEST_CASE("dominance examples") {
  const LatticePtr L = fixtures::b3();
  const LatticeFn low = point_cdf(L, L->bottom());
  const LatticeFn high = point_cdf(L, L->top());
  CHECK(norberg_dominance(low, low).holds);
  CHECK(norberg_dominance(low, high).holds);
  const AntichainCertificate rev = norberg_dominance(high, low);
  CHECK(!rev.holds);
  REQUIRE(rev.violation);
  CHECK(rev.lhs > rev.rhs);
  CHECK(nabla(high, *rev.violation, L->top()) == rev.lhs);
  CHECK(nabla(low, *rev.violation, L->top()) == rev.rhs);
  CHECK(!dominance_coupling(high, low));

  const std::optional<std::vector<PairAtom>> same = dominance_coupling(low, low);
  REQUIRE(same);
  check_pair_coupling(*same, low, low);

  // X uniform on {1, 2}, Y uniform on {12, 23}.
  const LatticeFn x = cdf_from_mass(LatticeFn::from_map(L, {{"1", q("1/2")}, {"2", q("1/2")}}));
  const LatticeFn y = cdf_from_mass(LatticeFn::from_map(L, {{"12", q("1/2")}, {"23", q("1/2")}}));
  const auto c = dominance_coupling(x, y);
  REQUIRE(c);
  check_pair_coupling(*c, x, y);
  CHECK(code_of([&] { norberg_dominance(fixtures::phi_c(L, q("1/2")), low); }) ==
        Errc::NotACdf);
}

TEST_CASE("dominance criteria agree on small lattices") {
  for (int round = 0; round < 120; ++round) {
    const LatticePtr L = test::random_lattice(5);
    const IdealLatticePtr I = ideals_of(L);
    const LatticeFn phi = test::random_cdf(L);
    // phi itself and the point mass at the top always dominate.
    const int pick = test::uniform(0, 2);
    const LatticeFn up = pick == 0 ? test::random_cdf(L)
                         : pick == 1 ? phi
                                     : point_cdf(L, L->top());
    const AntichainCertificate cert = norberg_dominance(phi, up);
    CHECK(cert.holds == upset_masses_dominate(phi, up, *I));
    const auto coupling = dominance_coupling(phi, up);
    CHECK(cert.holds == coupling.has_value());
    if (coupling) check_pair_coupling(*coupling, phi, up);
    if (!cert.holds) {
      REQUIRE(cert.violation);
      CHECK(L->is_antichain(*cert.violation));
      CHECK(nabla(phi, *cert.violation, L->top()) == cert.lhs);
      CHECK(nabla(up, *cert.violation, L->top()) == cert.rhs);
      CHECK(cert.lhs > cert.rhs);
    }
  }
}

TEST_CASE("path condition on the B4 example") {
  const LatticePtr L = fixtures::b4();
  const LatticeFn phi = fixtures::phi4(L);
  const LatticeFn psi = fixtures::psi4(L);
  const PathCertificate cert = comp_condition(phi, psi);
  CHECK(!cert.holds);
  REQUIRE(cert.violation);
  CHECK(cert.violation->size() == 3);
  const std::vector<Element> named = seq(*L, "34,12,234");
  CHECK(std::find(cert.violations.begin(), cert.violations.end(), named) !=
        cert.violations.end());
  CHECK(std::is_sorted(cert.violations.begin(), cert.violations.end()));
  for (const auto& path : cert.violations) {
    CHECK(L->is_monotone_path(path));
    CHECK(successive_lambda(phi, path)[L->top()] > nabla(psi, Subset(path), L->top()));
  }
  CHECK(successive_lambda(phi, named)[L->top()] == q("1/2"));
  CHECK(nabla(psi, Subset(named), L->top()) == q("1/3"));
  CHECK(cert.lhs == successive_lambda(phi, *cert.violation)[L->top()]);
  CHECK(cert.rhs == nabla(psi, Subset(*cert.violation), L->top()));
}

TEST_CASE("path condition easy cases") {
  const LatticePtr L = fixtures::b3();
  const LatticeFn top_mass = point_cdf(L, L->top());
  for (const char* c : {"1/4", "1/3", "1/2", "2/3"}) {
    CHECK(comp_condition(fixtures::phi_c(L, q(c)), top_mass).holds);
  }
  for (int round = 0; round < 20; ++round) {
    const LatticePtr R = test::random_lattice(6);
    const LatticeFn cdf = test::random_cdf(R);
    CHECK(comp_condition(cdf, cdf).holds);
  }
  LatticeFn bad = fixtures::phi_c(L, q("1/2"));
  bad[L->index("1")] = 1;
  CHECK(code_of([&] { comp_condition(bad, top_mass); }) == Errc::NotMonotone);
  CHECK(code_of([&] { comp_condition(fixtures::phi_c(L, q("1/2")), fixtures::phi_c(L, q("1/2"))); }) ==
        Errc::NotACdf);
}

TEST_CASE("path condition matches brute force over monotone paths") {
  for (int round = 0; round < 40; ++round) {
    const LatticePtr L = test::random_lattice(5);
    const LatticeFn phi = test::random_capacity(L);
    const LatticeFn psi = test::random_cdf(L);
    // Every ordering of every subset, kept when monotone.
    bool holds = true;
    std::size_t shortest = L->size() + 1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << L->size()); ++mask) {
      std::vector<Element> path;
      for (Element x = 0; x < L->size(); ++x) {
        if (mask >> x & 1) path.push_back(x);
      }
      do {
        if (!L->is_monotone_path(path)) continue;
        if (successive_lambda(phi, path)[L->top()] > nabla(psi, Subset(path), L->top())) {
          holds = false;
          shortest = std::min(shortest, path.size());
        }
      } while (std::next_permutation(path.begin(), path.end()));
    }
    const PathCertificate cert = comp_condition(phi, psi);
    CHECK(cert.holds == holds);
    if (!holds) {
      REQUIRE(cert.violation);
      CHECK(cert.violation->size() == shortest);
    }
  }
}

TEST_CASE("membership coupling on the B4 example") {
  const LatticePtr L = fixtures::b4();
  const IdealLatticePtr I = ideals_of(L);
  const LatticeFn phi = fixtures::phi4(L);
  const LatticeFn psi = fixtures::psi4(L);
  const JointPmf gamma = fixtures::gamma4(I);
  CHECK(gamma.atoms.size() == 5);
  CHECK(replay_membership(gamma, phi, psi));
  const std::optional<JointPmf> found = membership_coupling(I, phi, psi);
  REQUIRE(found);
  CHECK(replay_membership(*found, phi, psi));
  CHECK(joint_frechet(*I, phi, psi, membership_indicator(*I)) == 1);
  CHECK(joint_dual_reduced(*I, phi, psi) == 1);
}

TEST_CASE("membership coupling small cases") {
  const LatticePtr B2 = share(boolean_lattice(2));
  const IdealLatticePtr I = ideals_of(B2);
  const LatticeFn low = point_cdf(B2, B2->bottom());
  LatticeFn cap(B2);
  cap[B2->index("1")] = q("1/2");
  cap[B2->index("2")] = q("1/2");
  cap[B2->top()] = 1;
  CHECK(!membership_coupling(I, cap, low));
  const JointFn w1 = membership_indicator(*I);
  CHECK(joint_frechet(*I, cap, low, w1) == 0);
  CHECK(joint_dual(*I, cap, low, w1) == 0);
  CHECK(joint_dual_reduced(*I, cap, low) == 0);
  CHECK(joint_frechet(*I, cap, low, JointFn(w1.size())) == 0);

  // Indicator capacity of <1>* against a point mass at 1.
  const Element a = B2->index("1");
  const LatticeFn ind = point_cdf(B2, a);
  const std::optional<JointPmf> one = membership_coupling(I, ind, point_cdf(B2, a));
  REQUIRE(one);
  REQUIRE(one->atoms.size() == 1);
  CHECK(one->atoms[0].upset == I->principal(a));
  CHECK(one->atoms[0].y == a);
  CHECK(one->atoms[0].mass == 1);

  LatticeFn half = cap;
  half[B2->top()] = q("1/2");
  CHECK(code_of([&] { joint_frechet(*I, half, low, w1); }) == Errc::Infeasible);
  CHECK(code_of([&] { joint_frechet(*I, cap, low, JointFn(3)); }) == Errc::DimensionMismatch);
}

TEST_CASE("path condition implies a membership coupling") {
  int held = 0;
  for (int round = 0; round < 60; ++round) {
    const LatticePtr L = test::random_lattice(5);
    // A one-point capacity is identically zero and cannot match a cdf.
    if (L->size() == 1) continue;
    const IdealLatticePtr I = ideals_of(L);
    const LatticeFn phi = test::random_capacity(L);
    const LatticeFn psi = test::uniform(0, 2) ? point_cdf(L, L->top()) : test::random_cdf(L);
    const PathCertificate cert = comp_condition(phi, psi);
    const std::optional<JointPmf> joint = membership_coupling(I, phi, psi);
    if (joint) CHECK(replay_membership(*joint, phi, psi));
    if (cert.holds) {
      ++held;
      CHECK(joint.has_value());
    }
    CHECK(joint.has_value() == (joint_frechet(*I, phi, psi, membership_indicator(*I)) == 1));
  }
  CHECK(held > 0);
}

TEST_CASE("joint bound and its duals") {
  for (int round = 0; round < 25; ++round) {
    const LatticePtr L = test::random_lattice(4);
    // A one-point capacity is identically zero and cannot match a cdf.
    if (L->size() == 1) continue;
    const IdealLatticePtr I = ideals_of(L);
    const LatticeFn phi = test::random_capacity(L);
    const LatticeFn psi = test::random_cdf(L);
    const JointFn w = random_joint_fn(*I);
    CHECK(joint_frechet(*I, phi, psi, w) == joint_dual(*I, phi, psi, w));
    const JointFn w1 = membership_indicator(*I);
    const Rational value = joint_frechet(*I, phi, psi, w1);
    CHECK(joint_dual(*I, phi, psi, w1) == value);
    CHECK(joint_dual_reduced(*I, phi, psi) == value);
    CHECK(joint_frechet(*I, phi, psi, JointFn(w1.size())) == 0);
  }
  for (int round = 0; round < 25; ++round) {
    const LatticePtr L = test::random_lattice(6);
    const IdealLatticePtr I = ideals_of(L);
    const LatticeFn cdf = test::random_cdf(L);
    CHECK(joint_dual_reduced(*I, cdf, cdf) == 1);
    CHECK(joint_frechet(*I, cdf, cdf, membership_indicator(*I)) == 1);
  }
}

TEST_CASE("moving psi toward the bottom breaks the coupling on B4") {
  const LatticePtr L = fixtures::b4();
  const IdealLatticePtr I = ideals_of(L);
  const LatticeFn phi = fixtures::phi4(L);
  const LatticeFn psi = shift_down(fixtures::psi4(L), q("1/2"));
  const Rational reduced = joint_dual_reduced(*I, phi, psi);
  CHECK(reduced < 1);
  CHECK(joint_frechet(*I, phi, psi, membership_indicator(*I)) == reduced);
  CHECK(!comp_condition(phi, psi).holds);
  CHECK(!membership_coupling(I, phi, psi));
}

TEST_CASE("monotone rewriting") {
  for (int round = 0; round < 40; ++round) {
    const LatticePtr L = test::random_lattice(6);
    const IdealLatticePtr I = ideals_of(L);
    IdealFn g(I->size());
    for (auto& v : g) v = ratio(test::uniform(-4, 4), test::uniform(1, 3));
    const MonotonePair p = monotone_rewrite(*I, g);
    CHECK(classify(p.h).is_monotone);
    for (NodeId v = 0; v < I->size(); ++v) {
      CHECK(p.g[v] >= g[v]);
      for (NodeId u = 0; u < I->size(); ++u) {
        if (I->precedes(v, u)) CHECK(p.g[v] <= p.g[u]);
      }
      for (Element y = 0; y < L->size(); ++y) {
        CHECK(p.h[y] - p.g[v] >= (I->contains(v, y) ? 1 : 0));
      }
    }
  }
  const IdealLatticePtr I = ideals_of(fixtures::b3());
  CHECK(code_of([&] { monotone_rewrite(*I, IdealFn(2)); }) == Errc::DimensionMismatch);
}
