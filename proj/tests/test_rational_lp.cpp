#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "caplat/error.hpp"
#include "caplat/rational_lp.hpp"
#include "support.hpp"

using namespace caplat;
using namespace caplat::lp;
using test::q;

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dual_value(const LinearProgram& p, const Outcome& out) {
  return dot(p.rhs, out.dual);
}

// Solve A x = b for square A by Gauss-Jordan; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Best vertex of {x >= 0, rows} by trying every choice of n tight
// constraints. Only used on bounded programs with <= and >= rows.
std::optional<Rational> vertex_oracle(const LinearProgram& p) {
  const std::size_t n = p.num_variables();
  std::vector<std::vector<Rational>> all = p.rows;
  std::vector<Rational> rhs = p.rhs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> unit(n);
    unit[i] = 1;
    all.push_back(unit);
    rhs.push_back(0);
  }
  const std::size_t m = all.size();
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n) continue;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        a.push_back(all[i]);
        b.push_back(rhs[i]);
      }
    }
    const auto x = solve_square(a, b);
    if (!x || !satisfies(p, *x)) continue;
    const Rational v = dot(p.objective, *x);
    if (!best || (p.direction == Direction::Minimize ? v < *best : v > *best)) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("small optimum with duals") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3.
  LinearProgram p(2, Direction::Maximize);
  p.objective = {3, 2};
  p.add_row({1, 1}, Sense::LessEqual, 4);
  p.add_row({1, 3}, Sense::LessEqual, 6);
  p.add_row({1, 0}, Sense::LessEqual, 3);
  const Outcome out = solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(out.value == 11);
  CHECK(out.primal == std::vector<Rational>{3, 1});
  CHECK(dual_value(p, out) == 11);
}

TEST_CASE("equality and greater-equal rows") {
  // min x + 2y + 3z, x + y + z = 1, y + z >= 1/2.
  LinearProgram p(3);
  p.objective = {1, 2, 3};
  p.add_row({1, 1, 1}, Sense::Equal, 1);
  p.add_row({0, 1, 1}, Sense::GreaterEqual, q("1/2"));
  const Outcome out = solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(out.value == q("3/2"));
  CHECK(satisfies(p, out.primal));
  CHECK(dual_value(p, out) == out.value);
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram empty(2);
  empty.objective = {1, 1};
  empty.add_row({1, 1}, Sense::LessEqual, 1);
  empty.add_row({1, 1}, Sense::GreaterEqual, 2);
  CHECK(solve(empty).status == Status::Infeasible);
  CHECK(!feasible(empty).feasible);

  LinearProgram ray(2, Direction::Maximize);
  ray.objective = {1, 0};
  ray.add_row({1, -1}, Sense::LessEqual, 1);
  CHECK(solve(ray).status == Status::Unbounded);
  const Feasibility f = feasible(ray);
  CHECK(f.feasible);
  CHECK(satisfies(ray, f.witness));
}

TEST_CASE("free variables") {
  // min x subject to x >= -5 with x free.
  LinearProgram p(1);
  p.objective = {1};
  p.set_free(0);
  p.add_row({1}, Sense::GreaterEqual, -5);
  const Outcome out = solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(out.value == -5);
  CHECK(out.primal[0] == -5);

  LinearProgram open(1);
  open.objective = {1};
  open.set_free(0);
  open.add_row({1}, Sense::LessEqual, 3);
  CHECK(solve(open).status == Status::Unbounded);

  // Without the flag the same program stops at zero.
  LinearProgram bounded(1);
  bounded.objective = {1};
  bounded.add_row({1}, Sense::LessEqual, 3);
  CHECK(solve(bounded).value == 0);
}

TEST_CASE("negative right-hand sides") {
  LinearProgram p(2);
  p.objective = {1, 1};
  p.add_row({-1, -1}, Sense::LessEqual, -3);
  p.add_row({1, -1}, Sense::Equal, -1);
  const Outcome out = solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(out.value == 3);
  CHECK(out.primal == std::vector<Rational>{1, 2});
}

TEST_CASE("degenerate cycling example terminates") {
  LinearProgram p(4);
  p.objective = {q("-3/4"), 150, q("-1/50"), 6};
  p.add_row({q("1/4"), -60, q("-1/25"), 9}, Sense::LessEqual, 0);
  p.add_row({q("1/2"), -90, q("-1/50"), 3}, Sense::LessEqual, 0);
  p.add_row({0, 0, 1, 0}, Sense::LessEqual, 1);
  const Outcome out = solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(out.value == q("-1/20"));
  CHECK(dual_value(p, out) == q("-1/20"));
}

TEST_CASE("redundant equality rows") {
  LinearProgram p(2, Direction::Maximize);
  p.objective = {1, 2};
  p.add_row({1, 1}, Sense::Equal, 1);
  p.add_row({2, 2}, Sense::Equal, 2);
  const Outcome out = solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(out.value == 2);
}

TEST_CASE("malformed programs") {
  LinearProgram p(2);
  p.rows.push_back({1});
  p.senses.push_back(Sense::LessEqual);
  p.rhs.push_back(1);
  try {
    solve(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("random bounded programs match the vertex oracle") {
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = static_cast<std::size_t>(test::uniform(1, 3));
    const std::size_t m = static_cast<std::size_t>(test::uniform(1, 4));
    LinearProgram p(n, test::uniform(0, 1) ? Direction::Maximize : Direction::Minimize);
    for (auto& c : p.objective) c = ratio(test::uniform(-4, 4), test::uniform(1, 3));
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row(n);
      for (auto& c : row) c = ratio(test::uniform(-3, 3), test::uniform(1, 2));
      p.add_row(row, test::uniform(0, 2) ? Sense::LessEqual : Sense::GreaterEqual,
                ratio(test::uniform(-2, 6), test::uniform(1, 3)));
    }
    // A box keeps every program bounded.
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row(n);
      row[i] = 1;
      p.add_row(row, Sense::LessEqual, 5);
    }
    const Outcome out = solve(p);
    const std::optional<Rational> best = vertex_oracle(p);
    if (!best) {
      CHECK(out.status == Status::Infeasible);
      continue;
    }
    REQUIRE(out.status == Status::Optimal);
    CHECK(out.value == *best);
    CHECK(satisfies(p, out.primal));
    CHECK(dot(p.objective, out.primal) == out.value);
    CHECK(dual_value(p, out) == out.value);
  }
}
