#pragma once

// Dense exact-rational two-phase simplex for
//
//     minimize c·x  subject to  A x = b,  x >= 0
//
// using Bland's rule (lowest-index entering column, lowest-index leaving
// basic variable on ratio ties), so it terminates on degenerate problems.

#include "ptakkit/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ptakkit::lp {

struct Problem {
  std::vector<std::vector<Rational>> a;  // rows x cols
  std::vector<Rational> b;               // one per row
  std::vector<Rational> c;               // one per column
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> x;
  long pivots = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_(rows, std::vector<Rational>(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<Rational>& cost, Rational& value) {
    const Rational inv = 1 / t_[pr][pc];
    for (auto& v : t_[pr]) v *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || t_[r][pc] == 0) continue;
      const Rational f = t_[r][pc];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (t_[pr][c] != 0) t_[r][c] -= f * t_[pr][c];
      }
    }
    if (cost[pc] != 0) {
      const Rational f = cost[pc];
      for (std::size_t c = 0; c < cols_; ++c) {
        if (t_[pr][c] != 0) cost[c] -= f * t_[pr][c];
      }
      value += f * t_[pr][cols_];
    }
    basis_[pr] = pc;
  }

  // Minimizes with reduced costs `cost` over columns < allowed_cols.
  // Returns false when unbounded.
  bool optimize(std::vector<Rational>& cost, Rational& value, std::size_t allowed_cols, long& pivots) {
    while (true) {
      std::size_t enter = allowed_cols;
      for (std::size_t c = 0; c < allowed_cols; ++c) {
        if (cost[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter == allowed_cols) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (t_[r][enter] <= 0) continue;
        Rational ratio = t_[r][cols_] / t_[r][enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter, cost, value);
      ++pivots;
    }
  }

  std::size_t rows() const { return rows_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Solution solve(const Problem& p) {
  const std::size_t m = p.a.size();
  const std::size_t n = p.c.size();
  if (p.b.size() != m) throw std::invalid_argument("lp::solve: b has wrong length");
  for (const auto& row : p.a) {
    if (row.size() != n) throw std::invalid_argument("lp::solve: ragged constraint matrix");
  }

  // Columns: original 0..n-1, artificial n..n+m-1.
  detail::Tableau tab(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = p.b[r] < 0;
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = flip ? Rational(-p.a[r][c]) : p.a[r][c];
    tab.rhs(r) = flip ? Rational(-p.b[r]) : p.b[r];
    tab.at(r, n + r) = 1;
    tab.basic(r) = n + r;
  }

  Solution sol;
  // Phase 1: minimize the sum of artificials.
  std::vector<Rational> cost(n + m);
  Rational value;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) cost[c] -= tab.at(r, c);
    value += tab.rhs(r);
  }
  tab.optimize(cost, value, n + m, sol.pivots);
  if (value != 0) {
    sol.status = Status::infeasible;
    return sol;
  }
  // Drive remaining (zero-level) artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (tab.at(r, c) != 0) {
        std::vector<Rational> dummy(n + m);
        Rational dummy_value;
        tab.pivot(r, c, dummy, dummy_value);
        ++sol.pivots;
        break;
      }
    }
  }

  // Phase 2 over original columns; rows still holding an artificial are redundant.
  std::vector<Rational> cost2(n + m);
  Rational value2;
  for (std::size_t c = 0; c < n; ++c) cost2[c] = p.c[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = tab.basic(r);
    if (bc >= n || cost2[bc] == 0) continue;
    const Rational f = cost2[bc];
    for (std::size_t c = 0; c < n + m; ++c) {
      if (tab.at(r, c) != 0) cost2[c] -= f * tab.at(r, c);
    }
    value2 += f * tab.rhs(r);
  }
  for (std::size_t c = n; c < n + m; ++c) cost2[c] = 0;
  if (!tab.optimize(cost2, value2, n, sol.pivots)) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) sol.x[tab.basic(r)] = tab.rhs(r);
  }
  sol.value = 0;
  for (std::size_t c = 0; c < n; ++c) sol.value += p.c[c] * sol.x[c];
  return sol;
}

}  // namespace ptakkit::lp
