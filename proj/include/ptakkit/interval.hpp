#pragma once

// Families generated by interval systems: each label s carries a finite union
// C_s of closed rational intervals in [0,1], and A is a member iff the sets
// {C_s : s ∈ A} have a common point.

#include "ptakkit/family.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/graph.hpp"
#include "ptakkit/rational.hpp"
#include "ptakkit/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptakkit {

struct Interval {
  Rational lo;
  Rational hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Canonical finite union of closed intervals in [0,1]: pieces sorted,
// pairwise disjoint and non-touching.
class IntervalSet {
 public:
  IntervalSet() = default;

  // Sorts and merges overlapping or touching pieces.
  static IntervalSet normalized(std::vector<Interval> pieces) {
    for (const auto& p : pieces) validate_piece(p);
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; });
    IntervalSet out;
    for (auto& p : pieces) {
      if (!out.pieces_.empty() && p.lo <= out.pieces_.back().hi) {
        if (p.hi > out.pieces_.back().hi) out.pieces_.back().hi = p.hi;
      } else {
        out.pieces_.push_back(std::move(p));
      }
    }
    return out;
  }

  // Accepts only input that is already canonical.
  static IntervalSet checked(std::vector<Interval> pieces) {
    for (const auto& p : pieces) validate_piece(p);
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i].lo <= pieces[i - 1].hi) {
        throw std::invalid_argument("interval set is not canonical: piece " + std::to_string(i) +
                                    " overlaps, touches or precedes its predecessor");
      }
    }
    IntervalSet out;
    out.pieces_ = std::move(pieces);
    return out;
  }

  static IntervalSet unit() { return checked({{Rational(0), Rational(1)}}); }

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  Rational measure() const {
    Rational total;
    for (const auto& p : pieces_) total += p.hi - p.lo;
    return total;
  }

  bool contains(const Rational& x) const {
    // Pieces are sorted; the first piece with hi >= x is the only candidate.
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Interval& p, const Rational& v) { return p.hi < v; });
    return it != pieces_.end() && it->lo <= x;
  }

  friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.pieces_.size() && j < b.pieces_.size()) {
      const auto& p = a.pieces_[i];
      const auto& q = b.pieces_[j];
      const Rational& lo = p.lo > q.lo ? p.lo : q.lo;
      const Rational& hi = p.hi < q.hi ? p.hi : q.hi;
      if (lo <= hi) out.pieces_.push_back({lo, hi});
      if (p.hi < q.hi) ++i;
      else ++j;
    }
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  static void validate_piece(const Interval& p) {
    if (p.lo < 0 || p.hi > 1 || p.lo > p.hi) {
      throw std::invalid_argument("interval [" + to_string(p.lo) + ", " + to_string(p.hi) +
                                  "] is not a closed subinterval of [0,1]");
    }
  }

  std::vector<Interval> pieces_;
};

inline Rational measure(const IntervalSet& c) { return c.measure(); }

// One interval set per ground-set label.
struct IntervalSystem {
  std::vector<IntervalSet> sets;

  int n() const { return static_cast<int>(sets.size()); }
  GroundSet ground() const { return GroundSet(n()); }
};

// Labels whose set contains x.
inline ElementSet stabilizer(const IntervalSystem& sys, const Rational& x) {
  ElementSet out;
  for (int s = 0; s < sys.n(); ++s) {
    if (sys.sets[static_cast<std::size_t>(s)].contains(x)) out.insert(s);
  }
  return out;
}

// Sweep over the elementary regions cut out by all endpoints. Any non-empty
// intersection of the C_s is a union of closed intervals, each of which is
// either a single endpoint or contains the midpoint of some elementary gap,
// so the stabilizers of endpoints and gap midpoints are all the maximal
// candidates.
inline HereditaryFamily trace_family(const IntervalSystem& sys) {
  GroundSet ground = sys.ground();
  std::vector<Rational> endpoints;
  for (const auto& c : sys.sets) {
    for (const auto& p : c.pieces()) {
      endpoints.push_back(p.lo);
      endpoints.push_back(p.hi);
    }
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

  std::vector<ElementSet> stabilizers;
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    stabilizers.push_back(stabilizer(sys, endpoints[i]));
    if (i + 1 < endpoints.size()) {
      stabilizers.push_back(stabilizer(sys, (endpoints[i] + endpoints[i + 1]) / 2));
    }
  }
  return HereditaryFamily::closure(std::move(stabilizers), ground);
}

// Direct test: do the sets indexed by `a` share a point? ∅ trivially does.
inline bool common_point(const IntervalSystem& sys, ElementSet a) {
  if (a.empty()) return true;
  IntervalSet acc = IntervalSet::unit();
  bool nonempty = true;
  a.for_each([&](int s) {
    if (!nonempty) return;
    acc = intersect(acc, sys.sets.at(static_cast<std::size_t>(s)));
    nonempty = !acc.empty();
  });
  return nonempty;
}

struct MeasureBoundReport {
  Rational bound;  // min_s measure(C_s)
  Rational delta;
  bool ok = false;
};

// For any mean λ, ∫ Σ_s λ(s)·1[C_s] = Σ_s λ(s)·measure(C_s) ≥ bound, so some
// point's stabilizer F has λ(F) ≥ bound; hence δ ≥ bound.
inline MeasureBoundReport measure_lower_bound(const IntervalSystem& sys) {
  MeasureBoundReport r;
  r.bound = sys.sets.front().measure();
  for (const auto& c : sys.sets) {
    if (Rational m = c.measure(); m < r.bound) r.bound = m;
  }
  r.delta = delta_exact(trace_family(sys)).delta;
  r.ok = r.delta >= r.bound;
  return r;
}

// Helly in dimension one: for single-interval systems, pairwise intersection
// implies a common point. Returns whether the trace family is exactly the
// clique family of the pairwise-intersection graph.
inline bool helly_check(const IntervalSystem& sys) {
  for (const auto& c : sys.sets) {
    if (c.pieces().size() != 1) {
      throw std::domain_error("helly_check: not applicable to sets with " + std::to_string(c.pieces().size()) +
                              " pieces (need exactly one)");
    }
  }
  const int n = sys.n();
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!intersect(sys.sets[static_cast<std::size_t>(u)], sys.sets[static_cast<std::size_t>(v)]).empty()) {
        edges.emplace_back(u, v);
      }
    }
  }
  HereditaryFamily fam = trace_family(sys);
  HereditaryFamily cliques = HereditaryFamily::closure(Graph(n, edges).maximal_cliques(), sys.ground());
  return fam == cliques;
}

// Deterministic generator: every set gets at most `pieces_per_set` pieces on
// the grid (1/D)ℤ, D a multiple of min_measure's denominator and at least 64,
// with measure ≥ min_measure.
inline IntervalSystem random_system(std::uint64_t seed, int n, int pieces_per_set, const Rational& min_measure) {
  if (n < 1 || n > kMaxGroundSize) throw std::invalid_argument("random_system: n out of range");
  if (pieces_per_set < 1) throw std::invalid_argument("random_system: pieces_per_set must be >= 1");
  if (min_measure < 0 || min_measure > 1) throw std::invalid_argument("random_system: min_measure outside [0,1]");

  const Integer q = min_measure.get_den();
  if (q > 1'000'000) throw std::invalid_argument("random_system: min_measure denominator too large");
  const long qd = q.get_si();
  const long grid = qd * ((64 + qd - 1) / qd);
  const Rational scaled = min_measure * grid;
  const long required = std::max(1L, ceil(scaled).get_si());

  Rng rng(seed);
  IntervalSystem sys;
  sys.sets.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const long length = rng.between(required, grid);
    const long k = std::min<long>(pieces_per_set, length);
    // Piece lengths: k positive parts of `length` via k-1 distinct cut points.
    std::vector<long> cuts;
    while (static_cast<long>(cuts.size()) < k - 1) {
      long c = rng.between(1, length - 1);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(length);
    // Free space spread over the k+1 gaps.
    std::vector<long> gaps(static_cast<std::size_t>(k + 1), 0);
    for (long u = 0; u < grid - length; ++u) ++gaps[rng.below(static_cast<std::uint64_t>(k + 1))];

    std::vector<Interval> pieces;
    long pos = 0;
    for (long i = 0; i < k; ++i) {
      pos += gaps[static_cast<std::size_t>(i)];
      const long len = cuts[static_cast<std::size_t>(i + 1)] - cuts[static_cast<std::size_t>(i)];
      pieces.push_back({fraction(pos, grid), fraction(pos + len, grid)});
      pos += len;
    }
    sys.sets.push_back(IntervalSet::normalized(std::move(pieces)));
  }
  return sys;
}

}  // namespace ptakkit
