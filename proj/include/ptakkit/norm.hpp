#pragma once

// The family norm ‖x‖ = sup_{F member} |Σ_{s∈F} x(s)| and its equivalence
// with ‖x‖₁:  (δ/2)‖x‖₁ ≤ ‖x‖ ≤ ‖x‖₁, and δ‖x‖₁ ≤ ‖x‖ for x ≥ 0.

#include "ptakkit/family.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/rational.hpp"
#include "ptakkit/simplex.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace ptakkit {

// Dense vector indexed by the ground set.
struct FamilyVector {
  std::vector<Rational> coords;

  int n() const { return static_cast<int>(coords.size()); }

  static FamilyVector unit(int n, int s) {
    FamilyVector v{std::vector<Rational>(static_cast<std::size_t>(n))};
    v.coords.at(static_cast<std::size_t>(s)) = 1;
    return v;
  }

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c >= 0; });
  }
};

inline Rational l1_norm(const FamilyVector& x) {
  Rational sum;
  for (const auto& c : x.coords) sum += abs(c);
  return sum;
}

// For each maximal F the best member below it is either F ∩ {x > 0} or
// F ∩ {x < 0}, so only the maximal sets need to be scanned.
inline Rational f_norm(const HereditaryFamily& fam, const FamilyVector& x) {
  require_same_ground(fam, x.n());
  Rational best;
  for (ElementSet f : fam.maximal()) {
    Rational pos, neg;
    f.for_each([&](int s) {
      const Rational& c = x.coords[static_cast<std::size_t>(s)];
      if (c > 0) pos += c;
      else if (c < 0) neg -= c;
    });
    if (pos > best) best = pos;
    if (neg > best) best = neg;
  }
  return best;
}

struct EquivalenceReport {
  Rational l1;
  Rational fnorm;
  Rational delta;
  bool lower_ok = false;    // (δ/2)‖x‖₁ ≤ ‖x‖
  bool upper_ok = false;    // ‖x‖ ≤ ‖x‖₁
  bool nonnegative = false;
  bool nonneg_ok = true;    // δ‖x‖₁ ≤ ‖x‖, checked only when x ≥ 0

  bool ok() const { return lower_ok && upper_ok && nonneg_ok; }
};

inline EquivalenceReport check_equivalence(const HereditaryFamily& fam, const FamilyVector& x,
                                           const Rational& delta) {
  if (x.is_zero()) throw std::invalid_argument("check_equivalence: zero vector");
  EquivalenceReport r;
  r.l1 = l1_norm(x);
  r.fnorm = f_norm(fam, x);
  r.delta = delta;
  r.lower_ok = delta / 2 * r.l1 <= r.fnorm;
  r.upper_ok = r.fnorm <= r.l1;
  r.nonnegative = x.is_nonnegative();
  if (r.nonnegative) r.nonneg_ok = delta * r.l1 <= r.fnorm;
  return r;
}

inline EquivalenceReport check_equivalence(const HereditaryFamily& fam, const FamilyVector& x) {
  return check_equivalence(fam, x, delta_exact(fam).delta);
}

// min over nonzero x ≥ 0 of ‖x‖/‖x‖₁. By homogeneity this is
//   minimize t  s.t.  Σ_{s∈F} λ_s ≤ t (F maximal),  Σ λ_s = 1,  λ ≥ 0,
// solved here with the general two-phase simplex rather than the game solver.
inline Rational min_ratio_nonneg(const HereditaryFamily& fam) {
  const std::size_t n = static_cast<std::size_t>(fam.n());
  const std::size_t m = fam.maximal().size();
  // Columns: λ_0..λ_{n-1}, t, slack_0..slack_{m-1}.
  const std::size_t cols = n + 1 + m;
  lp::Problem p;
  p.c.assign(cols, Rational(0));
  p.c[n] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row(cols);
    fam.maximal()[i].for_each([&](int s) { row[static_cast<std::size_t>(s)] = 1; });
    row[n] = -1;
    row[n + 1 + i] = 1;
    p.a.push_back(std::move(row));
    p.b.emplace_back(0);
  }
  std::vector<Rational> sum_row(cols);
  for (std::size_t s = 0; s < n; ++s) sum_row[s] = 1;
  p.a.push_back(std::move(sum_row));
  p.b.emplace_back(1);

  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::optimal) throw std::logic_error("min_ratio_nonneg: LP not optimal");
  return sol.value;
}

struct SignedRatioProbe {
  Rational ratio;
  std::vector<int> argmin;  // grid numerators; the vector is argmin / grid
};

inline constexpr int kMaxBruteForceGround = 12;
inline constexpr std::uint64_t kMaxGridPoints = 50'000'000;

// Exhaustive min of ‖x‖/‖x‖₁ over nonzero x with coordinates in
// {-1, ..., -1/g, 0, 1/g, ..., 1}. A grid probe, not the exact constant.
inline SignedRatioProbe min_ratio_signed_bruteforce(const HereditaryFamily& fam, int grid) {
  if (grid < 1) throw std::invalid_argument("min_ratio_signed_bruteforce: grid must be positive");
  const int n = fam.n();
  std::uint64_t points = 1;
  for (int i = 0; i < n; ++i) {
    points *= static_cast<std::uint64_t>(2 * grid + 1);
    if (n > kMaxBruteForceGround || points > kMaxGridPoints) {
      throw std::length_error("min_ratio_signed_bruteforce: scale exceeded (n=" + std::to_string(n) +
                              ", grid=" + std::to_string(grid) + ")");
    }
  }

  // Scale invariance lets the grid numerators stand in for x.
  std::vector<int> x(static_cast<std::size_t>(n), -grid);
  std::int64_t best_num = 1, best_den = 0;  // best_num/best_den, den 0 = unset
  std::vector<int> best_x;
  const auto& sets = fam.maximal();
  while (true) {
    // First nonzero coordinate positive: x and -x give the same ratio.
    auto first = std::find_if(x.begin(), x.end(), [](int v) { return v != 0; });
    if (first != x.end() && *first > 0) {
      std::int64_t l1 = 0;
      for (int v : x) l1 += std::abs(v);
      std::int64_t norm = 0;
      for (ElementSet f : sets) {
        std::int64_t pos = 0, neg = 0;
        f.for_each([&](int s) {
          const int v = x[static_cast<std::size_t>(s)];
          if (v > 0) pos += v;
          else neg -= v;
        });
        norm = std::max({norm, pos, neg});
      }
      if (best_den == 0 || norm * best_den < best_num * l1) {
        best_num = norm;
        best_den = l1;
        best_x = x;
      }
    }
    std::size_t i = 0;
    while (i < x.size() && x[i] == grid) x[i++] = -grid;
    if (i == x.size()) break;
    ++x[i];
  }
  return {fraction(best_num, best_den), best_x};
}

// ‖e_s‖ for every label: 1 when {s} is a member, else 0.
inline std::vector<Rational> basis_vector_norms(const HereditaryFamily& fam) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(fam.n()));
  for (int s = 0; s < fam.n(); ++s) out.push_back(f_norm(fam, FamilyVector::unit(fam.n(), s)));
  return out;
}

}  // namespace ptakkit
