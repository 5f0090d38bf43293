#pragma once

// Independent approximation oracle for δ: Brown–Robinson fictitious play on
// the covering game. Play counts are integers, so the empirical strategies
// are exact rationals and every reported bound is rigorous:
//
//   upper = max_F λ̄(F)            for the empirical mean λ̄ of the minimizer,
//   lower = min_s Σ_{F∋s} μ̄(F)    for the empirical cover μ̄ of the maximizer.
//
// Plain fictitious play closes the gap slowly, so at checkpoints the supports
// played since the previous checkpoint are used to solve the equalizing
// linear systems exactly (Gaussian elimination). Any nonnegative solution is
// a feasible strategy and therefore yields a valid bound; infeasible guesses
// are discarded.

#include "ptakkit/family.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace ptakkit {

struct FictitiousPlayResult {
  Rational lower;
  Rational upper;
  long iterations = 0;
  bool converged = false;
  int polished_lower = 0;  // checkpoints whose exact solve improved a bound
  int polished_upper = 0;

  Rational width() const { return upper - lower; }
  Rational midpoint() const { return (upper + lower) / 2; }
  bool contains(const Rational& v) const { return lower <= v && v <= upper; }
};

namespace detail {

// Reduced row echelon form of [M | rhs] keeping only independent rows.
// Returns nullopt when the system is inconsistent.
struct ReducedSystem {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> pivot_cols;
};

inline std::optional<ReducedSystem> row_reduce(std::vector<std::vector<Rational>> mat, std::vector<Rational> rhs) {
  const std::size_t rows = mat.size();
  const std::size_t cols = rows == 0 ? 0 : mat[0].size();
  ReducedSystem out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && mat[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(mat[p], mat[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = 1 / mat[r][c];
    for (auto& v : mat[r]) {
      if (v != 0) v *= inv;
    }
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || mat[i][c] == 0) continue;
      const Rational f = mat[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (mat[r][j] != 0) mat[i][j] -= f * mat[r][j];
      }
      rhs[i] -= f * rhs[r];
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (rhs[i] != 0) return std::nullopt;
  }
  mat.resize(r);
  rhs.resize(r);
  out.rows = std::move(mat);
  out.rhs = std::move(rhs);
  return out;
}

// Some solution of M z = rhs (free variables zero), or nullopt.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> mat,
                                                         std::vector<Rational> rhs) {
  const std::size_t cols = mat.empty() ? 0 : mat[0].size();
  auto reduced = row_reduce(std::move(mat), std::move(rhs));
  if (!reduced) return std::nullopt;
  std::vector<Rational> z(cols);
  for (std::size_t i = 0; i < reduced->pivot_cols.size(); ++i) z[reduced->pivot_cols[i]] = reduced->rhs[i];
  return z;
}

// Point of the affine space {z : M z = rhs} nearest to `target`
// (z = target + Rᵀy with R Rᵀ y = rhs' − R target over the independent rows R).
inline std::optional<std::vector<Rational>> nearest_solution(std::vector<std::vector<Rational>> mat,
                                                             std::vector<Rational> rhs,
                                                             const std::vector<Rational>& target) {
  auto reduced = row_reduce(std::move(mat), std::move(rhs));
  if (!reduced) return std::nullopt;
  const auto& rows_r = reduced->rows;
  const std::size_t rows = rows_r.size();
  const std::size_t cols = target.size();
  std::vector<std::vector<Rational>> gram(rows, std::vector<Rational>(rows));
  std::vector<Rational> residual(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    residual[i] = reduced->rhs[i];
    for (std::size_t k = 0; k < cols; ++k) {
      if (rows_r[i][k] != 0) residual[i] -= rows_r[i][k] * target[k];
    }
    for (std::size_t j = i; j < rows; ++j) {
      Rational dot;
      for (std::size_t k = 0; k < cols; ++k) {
        if (rows_r[i][k] != 0 && rows_r[j][k] != 0) dot += rows_r[i][k] * rows_r[j][k];
      }
      gram[i][j] = dot;
      gram[j][i] = dot;
    }
  }
  auto y = solve_linear(std::move(gram), std::move(residual));
  if (!y) return std::nullopt;
  std::vector<Rational> z = target;
  for (std::size_t i = 0; i < rows; ++i) {
    if ((*y)[i] == 0) continue;
    for (std::size_t k = 0; k < cols; ++k) {
      if (rows_r[i][k] != 0) z[k] += rows_r[i][k] * (*y)[i];
    }
  }
  return z;
}

// Equalizing system for one player. Unknowns are the weights on `own`
// (indices into that player's strategies) plus the common value; each
// opponent strategy in `against` must receive exactly the value, and the
// weights sum to 1. `incidence(own, against)` says whether the pair meets.
// Returns full-length nonnegative weights, or nullopt.
template <class Incidence>
std::optional<std::vector<Rational>> equalize(const std::vector<std::size_t>& own,
                                              const std::vector<std::size_t>& against, std::size_t own_total,
                                              const std::vector<Rational>& target, Incidence incidence) {
  const std::size_t k = own.size();
  std::vector<std::vector<Rational>> mat;
  std::vector<Rational> rhs;
  for (std::size_t a : against) {
    std::vector<Rational> row(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      if (incidence(own[j], a)) row[j] = 1;
    }
    row[k] = -1;
    mat.push_back(std::move(row));
    rhs.emplace_back(0);
  }
  std::vector<Rational> sum_row(k + 1, Rational(1));
  sum_row[k] = 0;
  mat.push_back(std::move(sum_row));
  rhs.emplace_back(1);

  std::optional<std::vector<Rational>> z;
  if (target.empty()) {
    z = solve_linear(std::move(mat), std::move(rhs));
  } else {
    std::vector<Rational> local(k + 1);
    for (std::size_t j = 0; j < k; ++j) local[j] = target[own[j]];
    z = nearest_solution(std::move(mat), std::move(rhs), local);
  }
  if (!z) return std::nullopt;
  std::vector<Rational> weights(own_total);
  for (std::size_t j = 0; j < k; ++j) {
    if ((*z)[j] < 0) return std::nullopt;
    weights[own[j]] = (*z)[j];
  }
  return weights;
}

// Checkpoints at 2^k and 3·2^(k-1); each one's window is the second half of
// play so far, whose start is itself an earlier checkpoint.
inline bool is_checkpoint(long t) {
  if (t < 4) return false;
  if ((t & (t - 1)) == 0) return true;
  return t % 3 == 0 && ((t / 3) & (t / 3 - 1)) == 0;
}

}  // namespace detail

inline FictitiousPlayResult fictitious_play(const HereditaryFamily& fam, long max_iters, const Rational& epsilon) {
  if (max_iters < 1) throw std::invalid_argument("fictitious_play: max_iters must be >= 1");
  if (epsilon <= 0) throw std::invalid_argument("fictitious_play: epsilon must be positive");

  FictitiousPlayResult out;
  const auto& sets = fam.maximal();
  const std::size_t n = static_cast<std::size_t>(fam.n());
  const std::size_t m = sets.size();
  if (m == 0) {
    out.iterations = 1;
    out.converged = true;
    return out;  // [0, 0]
  }

  std::vector<std::vector<std::size_t>> sets_of(n);
  for (std::size_t i = 0; i < m; ++i) {
    sets[i].for_each([&](int s) { sets_of[static_cast<std::size_t>(s)].push_back(i); });
  }

  std::vector<std::int64_t> label_plays(n), set_plays(m);
  std::vector<std::int64_t> label_cover(n);  // Σ_{F∋s} set_plays[F]
  std::vector<std::int64_t> set_weight(m);   // Σ_{s∈F} label_plays[s]
  std::int64_t max_set_weight = 0;

  // Best bounds so far as exact fractions.
  out.upper = 1;
  out.lower = 0;

  struct Snapshot {
    long t;
    std::vector<std::int64_t> label_plays;
    std::vector<std::int64_t> set_plays;
  };
  std::vector<Snapshot> snapshots;

  for (long t = 1; t <= max_iters; ++t) {
    // Simultaneous best responses to the opponent's empirical play so far.
    std::size_t s = 0;
    for (std::size_t j = 1; j < n; ++j) {
      if (label_cover[j] < label_cover[s]) s = j;
    }
    std::size_t f = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (set_weight[i] > set_weight[f]) f = i;
    }

    ++label_plays[s];
    for (std::size_t i : sets_of[s]) max_set_weight = std::max(max_set_weight, ++set_weight[i]);
    ++set_plays[f];
    sets[f].for_each([&](int e) { ++label_cover[static_cast<std::size_t>(e)]; });

    const std::int64_t min_cover = *std::min_element(label_cover.begin(), label_cover.end());
    bool improved = false;
    // max_set_weight / t < upper  and  min_cover / t > lower, compared exactly.
    if (Rational candidate = fraction(max_set_weight, t); candidate < out.upper) {
      out.upper = candidate;
      improved = true;
    }
    if (Rational candidate = fraction(min_cover, t); candidate > out.lower) {
      out.lower = candidate;
      improved = true;
    }

    if (detail::is_checkpoint(t)) {
      snapshots.push_back({t, label_plays, set_plays});
      const auto start = std::find_if(snapshots.begin(), snapshots.end(),
                                      [t](const Snapshot& sn) { return sn.t >= t / 2; });
      std::vector<std::int64_t> label_window(n), set_window(m);
      for (std::size_t j = 0; j < n; ++j) label_window[j] = label_plays[j] - start->label_plays[j];
      for (std::size_t i = 0; i < m; ++i) set_window[i] = set_plays[i] - start->set_plays[i];
      if (start == std::prev(snapshots.end())) {
        label_window = label_plays;
        set_window = set_plays;
      }
      while (snapshots.size() > 4) snapshots.erase(snapshots.begin());

      // Candidate supports: strategies played at least a fraction of the
      // most-played one during the window.
      auto supports = [](const std::vector<std::int64_t>& window) {
        const std::int64_t top = *std::max_element(window.begin(), window.end());
        std::vector<std::vector<std::size_t>> out;
        for (std::int64_t divisor : {0, 100, 20, 5, 2}) {
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < window.size(); ++i) {
            if (window[i] > 0 && (divisor == 0 || window[i] * divisor >= top)) keep.push_back(i);
          }
          if (std::find(out.begin(), out.end(), keep) == out.end()) out.push_back(std::move(keep));
        }
        return out;
      };
      // Opponent strategies that are (nearly) best responses to the window
      // average: complementary slackness says the equalizing constraints
      // belong to exactly these. Selection is heuristic; results are exact.
      auto tight = [](const std::vector<double>& payoff, bool maximize) {
        const double best = maximize ? *std::max_element(payoff.begin(), payoff.end())
                                     : *std::min_element(payoff.begin(), payoff.end());
        std::vector<std::vector<std::size_t>> out;
        for (double tol : {1e-4, 1e-3, 1e-2, 5e-2}) {
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < payoff.size(); ++i) {
            if (std::abs(payoff[i] - best) <= tol) keep.push_back(i);
          }
          if (std::find(out.begin(), out.end(), keep) == out.end()) out.push_back(std::move(keep));
        }
        return out;
      };
      const double label_total = static_cast<double>(
          std::accumulate(label_window.begin(), label_window.end(), std::int64_t{0}));
      const double set_total =
          static_cast<double>(std::accumulate(set_window.begin(), set_window.end(), std::int64_t{0}));
      std::vector<double> set_payoff(m, 0.0), label_payoff(n, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        sets[i].for_each([&](int e) {
          set_payoff[i] += static_cast<double>(label_window[static_cast<std::size_t>(e)]) / label_total;
          label_payoff[static_cast<std::size_t>(e)] += static_cast<double>(set_window[i]) / set_total;
        });
      }

      const auto label_supports = supports(label_window);
      const auto set_supports = supports(set_window);
      auto merged = [](std::vector<std::vector<std::size_t>> a, const std::vector<std::vector<std::size_t>>& b) {
        for (const auto& x : b) {
          if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
        }
        return a;
      };
      std::vector<double> set_payoff_all(m), label_payoff_all(n);
      for (std::size_t i = 0; i < m; ++i) set_payoff_all[i] = static_cast<double>(set_weight[i]) / static_cast<double>(t);
      for (std::size_t j = 0; j < n; ++j) label_payoff_all[j] = static_cast<double>(label_cover[j]) / static_cast<double>(t);
      const auto tight_sets =
          merged(merged(set_supports, tight(set_payoff, true)), tight(set_payoff_all, true));
      const auto tight_labels =
          merged(merged(label_supports, tight(label_payoff, false)), tight(label_payoff_all, false));

      auto normalized = [](const std::vector<std::int64_t>& window) {
        const std::int64_t total = std::accumulate(window.begin(), window.end(), std::int64_t{0});
        std::vector<Rational> w;
        w.reserve(window.size());
        for (std::int64_t c : window) w.push_back(fraction(c, total));
        return w;
      };
      const std::vector<Rational> label_target = normalized(label_window);
      const std::vector<Rational> set_target = normalized(set_window);
      auto label_in_set = [&](std::size_t label, std::size_t set) { return sets[set].contains(static_cast<int>(label)); };
      auto set_has_label = [&](std::size_t set, std::size_t label) { return sets[set].contains(static_cast<int>(label)); };

      const std::vector<Rational> none;
      for (const auto& labels : label_supports) {
        for (const auto& against : tight_sets) {
          for (const auto* target : {&label_target, &none}) {
            auto mean = detail::equalize(labels, against, n, *target, label_in_set);
            if (!mean) continue;
            Rational v = evaluate_mean(fam, ConvexMean::from_weights(std::move(*mean)));
            if (v < out.upper) {
              out.upper = v;
              ++out.polished_upper;
              improved = true;
            }
          }
        }
      }
      for (const auto& active : set_supports) {
        for (const auto& against : tight_labels) {
          for (const auto* target : {&set_target, &none}) {
            auto cover = detail::equalize(active, against, m, *target, set_has_label);
            if (!cover) continue;
            Rational v = min_coverage(fam, *cover);
            if (v > out.lower) {
              out.lower = v;
              ++out.polished_lower;
              improved = true;
            }
          }
        }
      }
    }

    out.iterations = t;
    if ((improved || t == 1) && out.upper - out.lower <= epsilon) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace ptakkit
