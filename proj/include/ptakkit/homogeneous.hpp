#pragma once

// Maximum homogeneous sets. For a finite set M and a hereditary family,
// "every finite subset of M is a member" is the same as "M is a member", so
// this is maximum-cardinality member search.

#include "ptakkit/family.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ptakkit {

struct SearchResult {
  ElementSet best;
  int size = 0;
  long nodes_explored = 0;
  bool optimal = false;
};

namespace detail {

class MemberSearch {
 public:
  MemberSearch(const HereditaryFamily& fam, long budget) : fam_(fam), budget_(budget) {}

  SearchResult run() {
    result_.best = ElementSet{};
    result_.size = 0;
    complete_ = true;
    visit(ElementSet{}, 0);
    result_.optimal = complete_;
    return result_;
  }

 private:
  // Largest maximal set containing `current`; an exact upper bound on any
  // member extending it.
  int bound(ElementSet current) const {
    int best = 0;
    for (ElementSet f : fam_.maximal()) {
      if (current.subset_of(f)) best = std::max(best, f.size());
    }
    return best;
  }

  void visit(ElementSet current, int next_label) {
    if (result_.nodes_explored >= budget_) {
      complete_ = false;
      return;
    }
    ++result_.nodes_explored;
    if (current.size() > result_.size) {
      result_.best = current;
      result_.size = current.size();
    }
    if (bound(current) <= result_.size) return;
    for (int s = next_label; s < fam_.n(); ++s) {
      ElementSet extended = current;
      extended.insert(s);
      if (!fam_.contains(extended)) continue;
      visit(extended, s + 1);
      if (!complete_) return;
    }
  }

  const HereditaryFamily& fam_;
  long budget_;
  bool complete_ = true;
  SearchResult result_;
};

}  // namespace detail

// Depth-first branch and bound in lexicographic order with a node budget.
// `optimal` is false when the budget ran out before the search completed.
inline SearchResult max_member(const HereditaryFamily& fam, long budget = 1'000'000) {
  if (budget < 1) throw std::invalid_argument("max_member: budget must be positive");
  return detail::MemberSearch(fam, budget).run();
}

// Adds labels in the given order whenever the accumulated set stays a member.
inline ElementSet greedy_member(const HereditaryFamily& fam, std::span<const int> order) {
  const int n = fam.n();
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("greedy_member: order is not a permutation");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : order) {
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)]) {
      throw std::invalid_argument("greedy_member: order is not a permutation");
    }
    seen[static_cast<std::size_t>(s)] = true;
  }
  ElementSet acc;
  for (int s : order) {
    ElementSet next = acc;
    next.insert(s);
    if (fam.contains(next)) acc = next;
  }
  return acc;
}

struct PtakBoundReport {
  Rational delta;
  int n = 0;
  Integer bound;  // ⌈δ·n⌉
  int achieved = 0;
  bool optimal = false;
  bool ok = false;
  ElementSet witness;  // best response to the uniform mean
};

// A member of size ≥ ⌈δ·n⌉ must exist: at the uniform mean some member has
// weight ≥ δ, i.e. cardinality ≥ δ·n.
inline PtakBoundReport ptak_bound_check(const HereditaryFamily& fam, const Rational& delta,
                                        long budget = 1'000'000) {
  PtakBoundReport r;
  r.delta = delta;
  r.n = fam.n();
  r.bound = ceil(delta * r.n);
  SearchResult search = max_member(fam, budget);
  r.achieved = search.size;
  r.optimal = search.optimal;
  r.ok = r.bound <= r.achieved;
  r.witness = best_response(fam, ConvexMean::uniform(fam.n()));
  return r;
}

inline PtakBoundReport ptak_bound_check(const HereditaryFamily& fam, long budget = 1'000'000) {
  return ptak_bound_check(fam, delta_exact(fam).delta, budget);
}

}  // namespace ptakkit
