#include "caplat/rational_lp.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "caplat/error.hpp"

namespace caplat::lp {

void LinearProgram::add_row(std::vector<Rational> coefficients, Sense sense,
                            Rational value) {
  rows.push_back(std::move(coefficients));
  senses.push_back(sense);
  rhs.push_back(std::move(value));
}

void LinearProgram::set_free(std::size_t var) {
  if (free.empty()) free.assign(num_variables(), false);
  free.at(var) = true;
}

namespace {

void validate(const LinearProgram& p) {
  const std::size_t n = p.num_variables();
  if (p.senses.size() != p.rows.size() || p.rhs.size() != p.rows.size()) {
    throw Error(Errc::DimensionMismatch, "row metadata count differs");
  }
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (p.rows[i].size() != n) {
      throw Error(Errc::DimensionMismatch,
                  "row " + std::to_string(i) + " has " +
                      std::to_string(p.rows[i].size()) + " coefficients, " +
                      "expected " + std::to_string(n));
    }
  }
  if (!p.free.empty() && p.free.size() != n) {
    throw Error(Errc::DimensionMismatch, "free-variable mask size");
  }
}

Rational row_activity(const std::vector<Rational>& row,
                      const std::vector<Rational>& x) {
  Rational sum;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!is_zero(row[j]) && !is_zero(x[j])) sum += row[j] * x[j];
  }
  return sum;
}

bool holds(const Rational& lhs, Sense sense, const Rational& rhs) {
  switch (sense) {
    case Sense::Equal: return lhs == rhs;
    case Sense::LessEqual: return lhs <= rhs;
    case Sense::GreaterEqual: return lhs >= rhs;
  }
  return false;
}

// Standard-form tableau: rows are B^{-1}[A | b] and the cost row holds reduced
// costs of the active objective. Each row starts with a unit column (slack or
// artificial), so those columns carry B^{-1} for dual recovery.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& p) : program_(p) { setup(); }

  bool trivially_infeasible() const { return trivially_infeasible_; }

  // Phase one; false means infeasible.
  bool phase_one() {
    std::vector<Rational> cost(columns_, Rational(0));
    for (std::size_t j : artificial_) cost[j] = 1;
    load_costs(cost);
    run(/*allow_artificial=*/true);
    if (sgn(objective_value(cost)) > 0) return false;
    evict_artificials();
    return true;
  }

  // Phase two; false means unbounded.
  bool phase_two() {
    load_costs(cost_);
    return run(/*allow_artificial=*/false);
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> std_x(columns_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std_x[basis_[i]] = tab_[i][rhs_col()];
    }
    std::vector<Rational> x(program_.num_variables());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = std_x[pos_[j]];
      if (neg_[j]) x[j] -= std_x[*neg_[j]];
    }
    return x;
  }

  // Multipliers of the minimization form, mapped to original rows.
  std::vector<Rational> dual_min_form() const {
    std::vector<Rational> y(program_.num_rows());
    for (std::size_t r = 0; r < kept_rows_.size(); ++r) {
      Rational sum;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Rational& cb = cost_[basis_[i]];
        if (!is_zero(cb)) sum += cb * tab_[i][start_[r]];
      }
      y[kept_rows_[r]] = flip_[r] ? Rational(-sum) : sum;
    }
    return y;
  }

  const std::vector<Rational>& min_costs() const { return min_cost_orig_; }

 private:
  std::size_t rhs_col() const { return columns_; }

  void setup() {
    const LinearProgram& p = program_;
    const std::size_t n = p.num_variables();
    const bool maximize = p.direction == Direction::Maximize;

    pos_.resize(n);
    neg_.resize(n);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      pos_[j] = col++;
      if (p.is_free(j)) neg_[j] = col++;
    }
    min_cost_orig_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      min_cost_orig_[j] = maximize ? Rational(-p.objective[j]) : p.objective[j];
    }

    // Drop identically-zero rows; an unsatisfiable one means infeasible.
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
      const bool zero = std::all_of(p.rows[i].begin(), p.rows[i].end(),
                                    [](const Rational& v) { return is_zero(v); });
      if (!zero) {
        kept_rows_.push_back(i);
      } else if (!holds(Rational(0), p.senses[i], p.rhs[i])) {
        trivially_infeasible_ = true;
      }
    }
    const std::size_t m = kept_rows_.size();
    std::vector<std::optional<std::size_t>> slack(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (p.senses[kept_rows_[r]] != Sense::Equal) slack[r] = col++;
    }
    flip_.assign(m, false);
    std::vector<std::optional<std::size_t>> start(m);
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t i = kept_rows_[r];
      flip_[r] = sgn(p.rhs[i]) < 0;
      const int slack_sign = p.senses[i] == Sense::LessEqual     ? 1
                             : p.senses[i] == Sense::GreaterEqual ? -1
                                                                  : 0;
      if (slack[r] && (flip_[r] ? -slack_sign : slack_sign) == 1) {
        start[r] = slack[r];
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (!start[r]) {
        start[r] = col;
        artificial_.push_back(col);
        is_artificial_.resize(col + 1, false);
        is_artificial_[col] = true;
        ++col;
      }
    }
    columns_ = col;
    is_artificial_.resize(columns_, false);

    tab_.assign(m, std::vector<Rational>(columns_ + 1));
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t i = kept_rows_[r];
      const Rational sign = flip_[r] ? -1 : 1;
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& a = p.rows[i][j];
        if (is_zero(a)) continue;
        tab_[r][pos_[j]] = sign * a;
        if (neg_[j]) tab_[r][*neg_[j]] = -sign * a;
      }
      if (slack[r]) {
        tab_[r][*slack[r]] =
            sign * (p.senses[i] == Sense::LessEqual ? 1 : -1);
      }
      if (is_artificial_[*start[r]]) tab_[r][*start[r]] = 1;
      tab_[r][rhs_col()] = sign * p.rhs[i];
    }
    basis_.resize(m);
    start_.resize(m);
    for (std::size_t r = 0; r < m; ++r) basis_[r] = start_[r] = *start[r];

    cost_.assign(columns_, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      cost_[pos_[j]] = min_cost_orig_[j];
      if (neg_[j]) cost_[*neg_[j]] = -min_cost_orig_[j];
    }
  }

  void load_costs(const std::vector<Rational>& cost) {
    reduced_.assign(columns_ + 1, Rational(0));
    for (std::size_t j = 0; j < columns_; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (!is_zero(tab_[i][j])) reduced_[j] -= cb * tab_[i][j];
      }
    }
  }

  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational sum;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      sum += cost[basis_[i]] * tab_[i][rhs_col()];
    }
    return sum;
  }

  void pivot(std::size_t row, std::size_t col) {
    std::vector<Rational>& pr = tab_[row];
    const Rational inv = 1 / pr[col];
    for (auto& v : pr) {
      if (!is_zero(v)) v *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < pr.size(); ++j) {
      if (!is_zero(pr[j])) nz.push_back(j);
    }
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (i == row || is_zero(tab_[i][col])) continue;
      const Rational factor = tab_[i][col];
      for (std::size_t j : nz) tab_[i][j] -= factor * pr[j];
    }
    if (!is_zero(reduced_[col])) {
      const Rational factor = reduced_[col];
      for (std::size_t j : nz) {
        if (j < columns_) reduced_[j] -= factor * pr[j];
      }
    }
    basis_[row] = col;
  }

  // Most negative reduced cost; after a run of degenerate pivots, Bland's
  // rule until the objective moves again. Returns false when the objective
  // is unbounded below.
  bool run(bool allow_artificial) {
    const std::size_t patience = 2 * tab_.size() + 10;
    std::size_t degenerate = 0;
    for (;;) {
      const bool bland = degenerate > patience;
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (!allow_artificial && is_artificial_[j]) continue;
        if (sgn(reduced_[j]) >= 0) continue;
        if (!enter || reduced_[j] < reduced_[*enter]) enter = j;
        if (bland) break;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        const Rational& a = tab_[i][*enter];
        if (sgn(a) <= 0) continue;
        const Rational ratio = tab_[i][rhs_col()] / a;
        if (!leave || ratio < best ||
            (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      degenerate = is_zero(best) ? degenerate + 1 : 0;
      pivot(*leave, *enter);
    }
  }

  void evict_artificials() {
    for (std::size_t i = 0; i < basis_.size();) {
      if (!is_artificial_[basis_[i]]) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (!is_artificial_[j] && !is_zero(tab_[i][j])) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        // Redundant row.
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const LinearProgram& program_;
  std::vector<std::size_t> pos_;
  std::vector<std::optional<std::size_t>> neg_;
  std::vector<std::size_t> kept_rows_;
  std::vector<bool> flip_;
  std::vector<std::size_t> artificial_;
  std::vector<bool> is_artificial_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> start_;
  std::vector<Rational> cost_;
  std::vector<Rational> min_cost_orig_;
  std::vector<Rational> reduced_;
  std::size_t columns_ = 0;
  bool trivially_infeasible_ = false;
};

void replay_optimum(const LinearProgram& p, const std::vector<Rational>& cost,
                    const std::vector<Rational>& x,
                    const std::vector<Rational>& y) {
  if (!satisfies(p, x)) {
    throw std::logic_error("simplex: primal solution violates constraints");
  }
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    const int s = sgn(y[i]);
    if ((p.senses[i] == Sense::LessEqual && s > 0) ||
        (p.senses[i] == Sense::GreaterEqual && s < 0)) {
      throw std::logic_error("simplex: dual multiplier has the wrong sign");
    }
  }
  Rational primal_value;
  for (std::size_t j = 0; j < x.size(); ++j) primal_value += cost[j] * x[j];
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    Rational reduced = cost[j];
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
      if (!is_zero(y[i])) reduced -= y[i] * p.rows[i][j];
    }
    if ((p.is_free(j) && !is_zero(reduced)) || sgn(reduced) < 0) {
      throw std::logic_error("simplex: dual solution infeasible");
    }
  }
  Rational dual_value;
  for (std::size_t i = 0; i < p.num_rows(); ++i) dual_value += p.rhs[i] * y[i];
  if (dual_value != primal_value) {
    throw std::logic_error("simplex: primal and dual values differ");
  }
}

}  // namespace

bool satisfies(const LinearProgram& p, const std::vector<Rational>& x) {
  if (x.size() != p.num_variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!p.is_free(j) && sgn(x[j]) < 0) return false;
  }
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    if (!holds(row_activity(p.rows[i], x), p.senses[i], p.rhs[i])) return false;
  }
  return true;
}

Outcome solve(const LinearProgram& program) {
  validate(program);
  Outcome out;
  Simplex simplex(program);
  if (simplex.trivially_infeasible() || !simplex.phase_one()) {
    out.status = Status::Infeasible;
    return out;
  }
  if (!simplex.phase_two()) {
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.primal = simplex.primal();
  std::vector<Rational> y = simplex.dual_min_form();
  replay_optimum(program, simplex.min_costs(), out.primal, y);
  Rational value;
  for (std::size_t j = 0; j < out.primal.size(); ++j) {
    value += program.objective[j] * out.primal[j];
  }
  out.value = value;
  if (program.direction == Direction::Maximize) {
    for (auto& v : y) v = -v;
  }
  out.dual = std::move(y);
  return out;
}

Feasibility feasible(const LinearProgram& program) {
  validate(program);
  Feasibility out;
  Simplex simplex(program);
  if (simplex.trivially_infeasible() || !simplex.phase_one()) return out;
  out.witness = simplex.primal();
  if (!satisfies(program, out.witness)) {
    throw std::logic_error("simplex: phase-one witness violates constraints");
  }
  out.feasible = true;
  return out;
}

}  // namespace caplat::lp
