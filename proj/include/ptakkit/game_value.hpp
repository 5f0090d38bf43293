#pragma once

// The covering game behind condition (†): the minimizer picks a convex mean λ
// on the ground set, the maximizer picks a member F, and the payoff is λ(F).
// Its value δ = min_λ max_F λ(F) is computed exactly together with an
// optimal mean and an optimal fractional cover of the maximal sets.

#include "ptakkit/family.hpp"
#include "ptakkit/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptakkit {

// A probability weighting of ground-set labels, dense over 0..n-1.
class ConvexMean {
 public:
  static ConvexMean from_weights(std::vector<Rational> weights) {
    if (weights.empty()) throw std::invalid_argument("convex mean over an empty ground set");
    Rational total;
    for (const auto& w : weights) {
      if (w < 0) throw std::invalid_argument("convex mean has a negative weight " + to_string(w));
      total += w;
    }
    if (total != 1) throw std::invalid_argument("convex mean weights sum to " + to_string(total) + ", not 1");
    return ConvexMean(std::move(weights));
  }

  static ConvexMean uniform(int n) {
    return ConvexMean(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)));
  }

  static ConvexMean point_mass(int n, int s) {
    std::vector<Rational> w(static_cast<std::size_t>(n));
    w.at(static_cast<std::size_t>(s)) = 1;
    return ConvexMean(std::move(w));
  }

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& operator[](int s) const { return weights_[static_cast<std::size_t>(s)]; }

  ElementSet support() const {
    ElementSet out;
    for (int s = 0; s < n(); ++s) {
      if (weights_[static_cast<std::size_t>(s)] != 0) out.insert(s);
    }
    return out;
  }

  Rational weight_of(ElementSet f) const {
    Rational sum;
    f.for_each([&](int s) { sum += weights_.at(static_cast<std::size_t>(s)); });
    return sum;
  }

 private:
  explicit ConvexMean(std::vector<Rational> w) : weights_(std::move(w)) {}
  std::vector<Rational> weights_;
};

// δ with both optimality certificates. `primal` is a mean over labels,
// `dual` a probability weighting of fam.maximal() (empty when the antichain is).
struct GameValueResult {
  Rational delta;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  long pivots = 0;
};

inline void require_same_ground(const HereditaryFamily& fam, int n) {
  if (n != fam.n()) {
    throw std::invalid_argument("mean/vector has " + std::to_string(n) + " coordinates, ground set has " +
                                std::to_string(fam.n()));
  }
}

// max over maximal F of λ(F); 0 for the family {∅}.
inline Rational evaluate_mean(const HereditaryFamily& fam, const ConvexMean& mean) {
  require_same_ground(fam, mean.n());
  Rational best;
  for (ElementSet f : fam.maximal()) {
    Rational w = mean.weight_of(f);
    if (w > best) best = w;
  }
  return best;
}

// A maximal set of largest weight, lexicographically first on ties; ∅ for the
// empty antichain. Accepts any nonnegative weights (normalization is irrelevant).
inline ElementSet best_response(const HereditaryFamily& fam, std::span<const Rational> weights) {
  require_same_ground(fam, static_cast<int>(weights.size()));
  ElementSet best;
  Rational best_weight;
  bool found = false;
  for (ElementSet f : fam.maximal()) {
    Rational w;
    f.for_each([&](int s) { w += weights[static_cast<std::size_t>(s)]; });
    if (!found || w > best_weight) {
      best = f;
      best_weight = w;
      found = true;
    }
  }
  return best;
}

inline ElementSet best_response(const HereditaryFamily& fam, const ConvexMean& mean) {
  return best_response(fam, std::span<const Rational>(mean.weights()));
}

// Σ_{maximal F ∋ s} cover(F) for every label s.
inline std::vector<Rational> coverage(const HereditaryFamily& fam, std::span<const Rational> cover) {
  std::vector<Rational> cov(static_cast<std::size_t>(fam.n()));
  for (std::size_t i = 0; i < fam.maximal().size(); ++i) {
    if (cover[i] == 0) continue;
    fam.maximal()[i].for_each([&](int s) { cov[static_cast<std::size_t>(s)] += cover[i]; });
  }
  return cov;
}

inline Rational min_coverage(const HereditaryFamily& fam, std::span<const Rational> cover) {
  auto cov = coverage(fam, cover);
  return *std::min_element(cov.begin(), cov.end());
}

namespace detail {

// Packing LP  max Σ y  s.t.  Σ_{s∈F} y_s ≤ 1 (F maximal), y ≥ 0.
// Requires every label covered; then the optimum is 1/δ, y·δ is an optimal
// mean and the slack duals times δ form an optimal cover.
inline GameValueResult solve_covered_game(const HereditaryFamily& fam) {
  const std::size_t n = static_cast<std::size_t>(fam.n());
  const std::size_t m = fam.maximal().size();
  const std::size_t cols = n + m;

  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    fam.maximal()[i].for_each([&](int s) { rows[i][static_cast<std::size_t>(s)] = 1; });
    rows[i][n + i] = 1;
    rows[i][cols] = 1;
    basis[i] = n + i;
  }
  // Reduced costs of the maximization objective; positive means improving.
  std::vector<Rational> reduced(cols);
  for (std::size_t j = 0; j < n; ++j) reduced[j] = 1;
  Rational value;
  long pivots = 0;

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i][enter] <= 0) continue;
      Rational ratio = rows[i][cols] / rows[i][enter];
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (!leave) throw std::logic_error("covering game LP unbounded; an uncovered label slipped through");

    auto& prow = rows[*leave];
    const Rational inv = 1 / prow[enter];
    for (auto& v : prow) {
      if (v != 0) v *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols; ++j) {
      if (prow[j] != 0) nz.push_back(j);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == *leave || rows[i][enter] == 0) continue;
      const Rational f = rows[i][enter];
      for (std::size_t j : nz) rows[i][j] -= f * prow[j];
    }
    const Rational f = reduced[enter];
    for (std::size_t j : nz) {
      if (j < cols) reduced[j] -= f * prow[j];
    }
    value += f * prow[cols];
    basis[*leave] = enter;
    ++pivots;
  }

  GameValueResult res;
  res.delta = 1 / value;
  res.primal.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) res.primal[basis[i]] = rows[i][cols] * res.delta;
  }
  res.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) res.dual[i] = -reduced[n + i] * res.delta;
  res.pivots = pivots;
  return res;
}

}  // namespace detail

inline GameValueResult delta_exact(const HereditaryFamily& fam) {
  const int n = fam.n();
  const std::size_t m = fam.maximal().size();
  if (m == 0) {
    return {Rational(0), ConvexMean::point_mass(n, 0).weights(), {}, 0};
  }
  if (ElementSet free = fam.uncovered(); !free.empty()) {
    // A point mass on an uncovered label has value 0; any cover leaves it at 0.
    std::vector<Rational> dual(m);
    dual[0] = 1;
    return {Rational(0), ConvexMean::point_mass(n, free.labels().front()).weights(), std::move(dual), 0};
  }
  return detail::solve_covered_game(fam);
}

enum class CertificateIssue {
  none,
  primal_shape,
  primal_negative,
  primal_sum,
  primal_value,
  dual_shape,
  dual_negative,
  dual_sum,
  dual_value,
};

inline const char* describe(CertificateIssue issue) {
  switch (issue) {
    case CertificateIssue::none: return "ok";
    case CertificateIssue::primal_shape: return "primal has the wrong number of coordinates";
    case CertificateIssue::primal_negative: return "primal has a negative weight";
    case CertificateIssue::primal_sum: return "primal weights do not sum to 1";
    case CertificateIssue::primal_value: return "primal value differs from delta";
    case CertificateIssue::dual_shape: return "dual has the wrong number of entries";
    case CertificateIssue::dual_negative: return "dual has a negative weight";
    case CertificateIssue::dual_sum: return "dual weights do not sum to 1";
    case CertificateIssue::dual_value: return "dual minimum coverage differs from delta";
  }
  return "unknown";
}

struct CertificateCheck {
  bool ok = false;
  CertificateIssue issue = CertificateIssue::none;
  explicit operator bool() const { return ok; }
};

// Exact check that `res.primal` attains delta and `res.dual` covers every
// label at least delta with equality at the minimum.
inline CertificateCheck verify_certificate(const HereditaryFamily& fam, const GameValueResult& res) {
  auto fail = [](CertificateIssue i) { return CertificateCheck{false, i}; };
  const std::size_t n = static_cast<std::size_t>(fam.n());
  const std::size_t m = fam.maximal().size();

  if (res.primal.size() != n) return fail(CertificateIssue::primal_shape);
  Rational total;
  for (const auto& w : res.primal) {
    if (w < 0) return fail(CertificateIssue::primal_negative);
    total += w;
  }
  if (total != 1) return fail(CertificateIssue::primal_sum);
  if (evaluate_mean(fam, ConvexMean::from_weights(res.primal)) != res.delta) {
    return fail(CertificateIssue::primal_value);
  }

  if (res.dual.size() != m) return fail(CertificateIssue::dual_shape);
  Rational dual_total;
  for (const auto& w : res.dual) {
    if (w < 0) return fail(CertificateIssue::dual_negative);
    dual_total += w;
  }
  // The family {∅} has no maximal sets to weight; its cover is empty and covers nothing.
  if (m != 0 && dual_total != 1) return fail(CertificateIssue::dual_sum);
  if (min_coverage(fam, res.dual) != res.delta) return fail(CertificateIssue::dual_value);
  return {true, CertificateIssue::none};
}

}  // namespace ptakkit
