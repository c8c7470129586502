#pragma once

#include <cstddef>
#include <vector>

#include "caplat/rational.hpp"

namespace caplat::lp {

enum class Sense { Equal, LessEqual, GreaterEqual };
enum class Direction { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

// Dense LP. Variables are nonnegative unless flagged free.
struct LinearProgram {
  Direction direction = Direction::Minimize;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Sense> senses;
  std::vector<Rational> rhs;
  // Empty means every variable is nonnegative.
  std::vector<bool> free;

  explicit LinearProgram(std::size_t num_variables = 0,
                         Direction dir = Direction::Minimize)
      : direction(dir), objective(num_variables) {}

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
  void add_row(std::vector<Rational> coefficients, Sense sense, Rational rhs);
  void set_free(std::size_t var);
  bool is_free(std::size_t var) const { return !free.empty() && free[var]; }
};

struct Outcome {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> primal;
  // One multiplier per row with value = sum rhs[i] * dual[i]; signs follow
  // the program's own direction.
  std::vector<Rational> dual;
};

// Two-phase primal simplex over exact rationals. Dantzig pricing, falling
// back to Bland's rule after a long run of degenerate pivots. Optimal
// outcomes are replayed internally (primal feasibility, dual feasibility,
// equal objective values); a failed replay throws std::logic_error.
// Throws Error(DimensionMismatch) for malformed programs.
Outcome solve(const LinearProgram& program);

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;
};

// Phase one only; the objective is ignored.
Feasibility feasible(const LinearProgram& program);

// Exact replay of a point against the constraints and variable signs.
bool satisfies(const LinearProgram& program, const std::vector<Rational>& x);

}  // namespace caplat::lp
