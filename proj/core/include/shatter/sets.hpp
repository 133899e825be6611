#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace shatter {

// Subsets of a ground set {0, ..., n-1} with n <= 64 are stored as bitmasks:
// bit i set  <=>  element i present.
using SetMask = std::uint64_t;

inline constexpr int kMaxGroundSize = 64;

constexpr SetMask ground_mask(int n) {
  return n >= kMaxGroundSize ? ~SetMask{0} : (SetMask{1} << n) - 1;
}

constexpr int popcount(SetMask m) { return std::popcount(m); }

// Index of the lowest set bit; undefined for m == 0.
constexpr int lowest_element(SetMask m) { return std::countr_zero(m); }

// Next mask with the same popcount, in ascending numeric order (Gosper's
// hack).  Returns 0 once the counting overflows past `limit` bits.
constexpr SetMask next_same_popcount(SetMask m, int limit) {
  SetMask low = m & -m;
  SetMask ripple = m + low;
  SetMask ones = ((m ^ ripple) >> 2) / low;
  SetMask next = ripple | ones;
  return (ripple == 0 || next > ground_mask(limit)) ? 0 : next;
}

// Re-indexes the elements of `value & window` by their rank inside `window`
// (ascending).  Equivalent to x86 PEXT; the portable loop is used when BMI2
// is unavailable at compile time.
inline SetMask compress_bits(SetMask value, SetMask window) {
#if defined(__BMI2__)
  return _pext_u64(value, window);
#else
  SetMask out = 0;
  int idx = 0;
  while (window != 0) {
    SetMask low = window & -window;
    if (value & low) out |= SetMask{1} << idx;
    ++idx;
    window &= window - 1;
  }
  return out;
#endif
}

// A subset of a fixed ground set {0, ..., n-1}.  Wraps a SetMask together
// with the ground-set size so that complements are well defined.
class ElementSet {
 public:
  ElementSet(int ground_size, SetMask bits) : n_(ground_size), bits_(bits) {
    if (ground_size < 0 || ground_size > kMaxGroundSize)
      throw std::invalid_argument("ElementSet: ground size must be in [0, 64]");
    if (bits & ~ground_mask(ground_size))
      throw std::invalid_argument("ElementSet: element out of range");
  }

  ElementSet(int ground_size, std::initializer_list<int> elems)
      : ElementSet(ground_size, mask_of(ground_size, elems.begin(), elems.end())) {}

  static ElementSet empty(int ground_size) { return {ground_size, SetMask{0}}; }
  static ElementSet full(int ground_size) { return {ground_size, ground_mask(ground_size)}; }

  template <typename It>
  static ElementSet from_elements(int ground_size, It first, It last) {
    return {ground_size, mask_of(ground_size, first, last)};
  }
  static ElementSet from_elements(int ground_size, const std::vector<int>& elems) {
    return from_elements(ground_size, elems.begin(), elems.end());
  }

  int ground_size() const { return n_; }
  SetMask bits() const { return bits_; }
  int size() const { return popcount(bits_); }
  bool contains(int element) const {
    return element >= 0 && element < n_ && (bits_ >> element & 1);
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (SetMask m = bits_; m != 0; m &= m - 1) out.push_back(lowest_element(m));
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  // "{0 2 5}" / "{}" -- used in diagnostics and text reports.
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (SetMask m = bits_; m != 0; m &= m - 1) {
      if (!first) out += ' ';
      out += std::to_string(lowest_element(m));
      first = false;
    }
    out += '}';
    return out;
  }

 private:
  template <typename It>
  static SetMask mask_of(int ground_size, It first, It last) {
    SetMask bits = 0;
    for (It it = first; it != last; ++it) {
      int e = static_cast<int>(*it);
      if (e < 0 || e >= ground_size)
        throw std::invalid_argument("ElementSet: element out of range");
      bits |= SetMask{1} << e;
    }
    return bits;
  }

  int n_;
  SetMask bits_;
};

inline ElementSet complement(const ElementSet& s) {
  return {s.ground_size(), s.bits() ^ ground_mask(s.ground_size())};
}

}  // namespace shatter
