#pragma once

// Hereditary (downward-closed) families on a finite ground set, stored as the
// antichain of their inclusion-maximal members. The empty set is always a
// member; the empty antichain is the family {∅}.

#include "ptakkit/element_set.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptakkit {

class HereditaryFamily {
 public:
  // Downward closure of `sets` (plus ∅). Throws std::out_of_range on a label
  // outside the ground set.
  static HereditaryFamily closure(std::vector<ElementSet> sets, GroundSet ground) {
    for (ElementSet s : sets) require_within(s, ground);
    std::sort(sets.begin(), sets.end(),
              [](ElementSet a, ElementSet b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    std::vector<ElementSet> kept;
    for (ElementSet s : sets) {
      if (s.empty()) continue;
      const bool dominated =
          std::any_of(kept.begin(), kept.end(), [s](ElementSet k) { return s.subset_of(k); });
      if (!dominated) kept.push_back(s);
    }
    std::sort(kept.begin(), kept.end());
    return HereditaryFamily(ground, std::move(kept));
  }

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }
  const std::vector<ElementSet>& maximal() const { return maximal_; }

  bool contains(ElementSet a) const {
    require_within(a, ground_);
    if (a.empty()) return true;
    return std::any_of(maximal_.begin(), maximal_.end(), [a](ElementSet f) { return a.subset_of(f); });
  }

  bool is_maximal(ElementSet a) const {
    return std::binary_search(maximal_.begin(), maximal_.end(), a) || (a.empty() && maximal_.empty());
  }

  // Largest member cardinality (the longest chain ∅ ⊊ B1 ⊊ ... has this many steps).
  int max_member_size() const {
    int best = 0;
    for (ElementSet f : maximal_) best = std::max(best, f.size());
    return best;
  }

  // Labels lying in no member.
  ElementSet uncovered() const {
    ElementSet covered;
    for (ElementSet f : maximal_) covered = covered | f;
    return ElementSet::full(n()).minus(covered);
  }

  friend bool operator==(const HereditaryFamily&, const HereditaryFamily&) = default;

 private:
  HereditaryFamily(GroundSet ground, std::vector<ElementSet> maximal)
      : ground_(ground), maximal_(std::move(maximal)) {}

  GroundSet ground_;
  std::vector<ElementSet> maximal_;
};

inline HereditaryFamily hereditary_closure(std::vector<ElementSet> sets, GroundSet ground) {
  return HereditaryFamily::closure(std::move(sets), ground);
}

inline bool membership(const HereditaryFamily& fam, ElementSet a) { return fam.contains(a); }

// Family {F ∩ H : F ∈ fam} on the dense ground set 0..|H|-1.
struct TraceResult {
  HereditaryFamily family;
  std::vector<int> labels;  // new label i corresponds to original labels[i]
};

// Maps a set inside `h` to dense labels 0..|h|-1 in increasing order.
inline ElementSet compress(ElementSet a, ElementSet h) {
  ElementSet out;
  int next = 0;
  h.for_each([&](int s) {
    if (a.contains(s)) out.insert(next);
    ++next;
  });
  return out;
}

inline ElementSet expand(ElementSet a, const std::vector<int>& labels) {
  ElementSet out;
  a.for_each([&](int i) { out.insert(labels.at(static_cast<std::size_t>(i))); });
  return out;
}

inline TraceResult trace(const HereditaryFamily& fam, ElementSet h) {
  require_within(h, fam.ground());
  if (h.empty()) throw std::invalid_argument("trace: empty restriction set");
  std::vector<ElementSet> pieces;
  pieces.reserve(fam.maximal().size());
  for (ElementSet f : fam.maximal()) pieces.push_back(compress(f & h, h));
  return {HereditaryFamily::closure(std::move(pieces), GroundSet(h.size())), h.labels()};
}

// Every member B with M ⊆ B, sorted lexicographically.
inline std::vector<ElementSet> maximal_up_set(const HereditaryFamily& fam, ElementSet m) {
  if (!fam.contains(m)) throw std::invalid_argument("maximal_up_set: " + m.str() + " is not a member");
  std::vector<ElementSet> out;
  if (fam.maximal().empty()) return {m};
  for (ElementSet f : fam.maximal()) {
    if (!m.subset_of(f)) continue;
    const std::uint64_t free = f.minus(m).mask();
    // Walk all subsets of `free`.
    std::uint64_t sub = free;
    while (true) {
      out.push_back(m | ElementSet::from_mask(sub));
      if (sub == 0) break;
      sub = (sub - 1) & free;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_full_powerset(const HereditaryFamily& fam) {
  return fam.maximal().size() == 1 && fam.maximal().front() == ElementSet::full(fam.n());
}

// Every member, lexicographically sorted. Exponential; for oracles and small n.
inline std::vector<ElementSet> enumerate_members(const HereditaryFamily& fam) {
  if (fam.n() > 24) throw std::length_error("enumerate_members: ground set too large");
  std::vector<ElementSet> out;
  const std::uint64_t total = std::uint64_t{1} << fam.n();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ElementSet a = ElementSet::from_mask(mask);
    if (fam.contains(a)) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ptakkit
