#pragma once

#include <algorithm>
#include <vector>

#include "lexia/errors.hpp"
#include "lexia/rational.hpp"

namespace lexia {

enum class Sense { le, eq, ge };

struct LinearConstraint {
  std::vector<Rational> coeff;
  Sense sense = Sense::le;
  Rational rhs;
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  std::vector<Rational> x;
  Rational value;
};

namespace detail {

// Dense simplex tableau over exact rationals. The objective row stores
// reduced costs, with -z in the rhs slot so pivoting updates it like any
// other row.
struct Tableau {
  int cols = 0;
  std::vector<std::vector<Rational>> row;  // m x (cols+1), last column = rhs
  std::vector<Rational> obj;               // cols+1
  std::vector<int> basis;                  // basic column of each row
  std::vector<char> allowed;               // columns eligible to enter

  // factor is taken by value: callers pass target[c] itself, which the loop
  // overwrites.
  void eliminate(std::vector<Rational>& target, const std::vector<Rational>& pivot_row,
                 Rational factor) const {
    if (factor.is_zero()) return;
    for (int j = 0; j <= cols; ++j) target[j] -= factor * pivot_row[j];
  }

  void pivot(int r, int c) {
    Rational p = row[r][c];
    for (Rational& v : row[r]) v /= p;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (static_cast<int>(i) != r) eliminate(row[i], row[r], row[i][c]);
    eliminate(obj, row[r], obj[c]);
    basis[r] = c;
  }

  // Bland's rule on both ends: lowest eligible column enters, and ratio
  // ties leave by the lowest basic column. Finite by the standard argument.
  // Returns false exactly when the objective is unbounded.
  bool maximize() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && obj[j].sign() > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i][enter].sign() <= 0) continue;
        Rational ratio = row[i][cols] / row[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace detail

// Maximizes objective . x subject to the constraints and x >= 0, by
// two-phase primal simplex. Everything stays exact; ties on weak
// inequalities are decided correctly, which is the whole point here.
inline LPResult solve_lp(const std::vector<Rational>& objective,
                         const std::vector<LinearConstraint>& constraints) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(constraints.size());

  std::vector<std::vector<Rational>> a(m);
  std::vector<Rational> rhs(m);
  std::vector<Sense> sense(m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(constraints[i].coeff.size()) != n)
      throw ContractError("solve_lp: constraint arity does not match the objective");
    a[i] = constraints[i].coeff;
    rhs[i] = constraints[i].rhs;
    sense[i] = constraints[i].sense;
    if (rhs[i].sign() < 0) {
      for (Rational& v : a[i]) v = -v;
      rhs[i] = -rhs[i];
      if (sense[i] == Sense::le)
        sense[i] = Sense::ge;
      else if (sense[i] == Sense::ge)
        sense[i] = Sense::le;
    }
  }

  int slacks = 0, artificials = 0;
  for (int i = 0; i < m; ++i) {
    if (sense[i] != Sense::eq) ++slacks;
    if (sense[i] != Sense::le) ++artificials;
  }

  detail::Tableau t;
  t.cols = n + slacks + artificials;
  t.row.assign(m, std::vector<Rational>(t.cols + 1, Rational(0)));
  t.obj.assign(t.cols + 1, Rational(0));
  t.basis.assign(m, -1);
  t.allowed.assign(t.cols, 1);

  const int first_art = n + slacks;
  int next_slack = n, next_art = first_art;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.row[i][j] = a[i][j];
    t.row[i][t.cols] = rhs[i];
    if (sense[i] == Sense::le) {
      t.row[i][next_slack] = Rational(1);
      t.basis[i] = next_slack++;
    } else if (sense[i] == Sense::ge) {
      t.row[i][next_slack++] = Rational(-1);
      t.row[i][next_art] = Rational(1);
      t.basis[i] = next_art++;
    } else {
      t.row[i][next_art] = Rational(1);
      t.basis[i] = next_art++;
    }
  }

  if (artificials > 0) {
    // Phase 1: drive the artificial total to zero.
    for (int j = first_art; j < t.cols; ++j) t.obj[j] = Rational(-1);
    // Price out the starting basis so basic columns read zero reduced cost.
    for (int i = 0; i < m; ++i) t.eliminate(t.obj, t.row[i], t.obj[t.basis[i]]);
    if (!t.maximize()) throw InternalError("solve_lp: phase 1 cannot be unbounded");
    if (!t.obj[t.cols].is_zero()) return {LPStatus::infeasible, {}, Rational(0)};
    for (int j = first_art; j < t.cols; ++j) t.allowed[j] = 0;
    // Any artificial still basic sits at value zero: pivot it out where the
    // row allows, otherwise the row is redundant and stays inert.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < first_art) continue;
      for (int j = 0; j < first_art; ++j)
        if (!t.row[i][j].is_zero()) {
          t.pivot(i, j);
          break;
        }
    }
  }

  std::fill(t.obj.begin(), t.obj.end(), Rational(0));
  for (int j = 0; j < n; ++j) t.obj[j] = objective[j];
  for (int i = 0; i < m; ++i) {
    Rational f = t.obj[t.basis[i]];
    if (!f.is_zero()) t.eliminate(t.obj, t.row[i], f);
  }
  if (!t.maximize()) return {LPStatus::unbounded, {}, Rational(0)};

  LPResult res;
  res.status = LPStatus::optimal;
  res.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] = t.row[i][t.cols];
  res.value = -t.obj[t.cols];
  return res;
}

}  // namespace lexia
