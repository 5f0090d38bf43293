#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptakkit {

inline constexpr int kMaxGroundSize = 64;

// Finite ground set {0, ..., size-1}.
class GroundSet {
 public:
  explicit GroundSet(int size) : size_(size) {
    if (size < 1 || size > kMaxGroundSize) {
      throw std::invalid_argument("ground set size must be in [1, " + std::to_string(kMaxGroundSize) +
                                  "], got " + std::to_string(size));
    }
  }

  int size() const { return size_; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int size_;
};

// A subset of a ground set, stored as a bitmask over labels 0..63.
class ElementSet {
 public:
  constexpr ElementSet() = default;

  ElementSet(std::initializer_list<int> labels) {
    for (int s : labels) insert(s);
  }

  static constexpr ElementSet from_mask(std::uint64_t mask) {
    ElementSet e;
    e.mask_ = mask;
    return e;
  }

  static ElementSet from_labels(std::span<const int> labels) {
    ElementSet e;
    for (int s : labels) e.insert(s);
    return e;
  }

  // {0, ..., n-1}
  static constexpr ElementSet full(int n) {
    return from_mask(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  void insert(int s) {
    if (s < 0 || s >= kMaxGroundSize) throw std::out_of_range("label out of range: " + std::to_string(s));
    mask_ |= std::uint64_t{1} << s;
  }
  void erase(int s) {
    if (s >= 0 && s < kMaxGroundSize) mask_ &= ~(std::uint64_t{1} << s);
  }

  constexpr bool contains(int s) const {
    return s >= 0 && s < kMaxGroundSize && ((mask_ >> s) & 1U) != 0;
  }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr std::uint64_t mask() const { return mask_; }

  // One past the largest label, 0 when empty.
  constexpr int bound() const { return mask_ == 0 ? 0 : 64 - std::countl_zero(mask_); }

  constexpr bool subset_of(ElementSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool fits(int n) const { return (mask_ & ~full(n).mask_) == 0; }

  constexpr ElementSet operator&(ElementSet o) const { return from_mask(mask_ & o.mask_); }
  constexpr ElementSet operator|(ElementSet o) const { return from_mask(mask_ | o.mask_); }
  constexpr ElementSet minus(ElementSet o) const { return from_mask(mask_ & ~o.mask_); }

  std::vector<int> labels() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) fn(std::countr_zero(m));
  }

  friend constexpr bool operator==(ElementSet, ElementSet) = default;

  // Lexicographic order of the ascending label sequences:
  // {} < {0} < {0,1} < {0,1,2} < {0,2} < {1} < ...
  friend constexpr bool operator<(ElementSet a, ElementSet b) {
    const std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return false;
    const int first = std::countr_zero(diff);
    const std::uint64_t above = first >= 63 ? 0 : ~std::uint64_t{0} << (first + 1);
    if (a.contains(first)) {
      // b continues with something larger than `first`, or ends here.
      return (b.mask_ & above) != 0;
    }
    return (a.mask_ & above) == 0;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for_each([&](int s) {
      if (!first) out += ",";
      out += std::to_string(s);
      first = false;
    });
    return out + "}";
  }

 private:
  std::uint64_t mask_ = 0;
};

inline void require_within(ElementSet a, const GroundSet& ground) {
  if (!a.fits(ground.size())) {
    throw std::out_of_range("set " + a.str() + " has a label outside ground set of size " +
                            std::to_string(ground.size()));
  }
}

}  // namespace ptakkit
