#pragma once

#include <cstdint>
#include <stdexcept>

namespace shatter {

namespace detail {
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 wide = static_cast<unsigned __int128>(a) * b;
  if (wide > ~std::uint64_t{0}) throw std::overflow_error("64-bit overflow");
  return static_cast<std::uint64_t>(wide);
}
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s < a) throw std::overflow_error("64-bit overflow");
  return s;
}
}  // namespace detail

// C(n, k), exact; throws std::overflow_error if the value needs > 64 bits.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) is divisible by i at every step.
    r = detail::checked_mul(r, static_cast<std::uint64_t>(n - k + i)) /
        static_cast<std::uint64_t>(i);
  }
  return r;
}

// C(n, 0) + C(n, 1) + ... + C(n, k), overflow-checked.
inline std::uint64_t sum_binomials(int n, int k) {
  std::uint64_t total = 0;
  for (int i = 0; i <= k && i <= n; ++i) total = detail::checked_add(total, binomial(n, i));
  return total;
}

// Number of matchings with k pairs on n labelled points, counted as
// unordered sets of unordered pairs:
//   C(n, 2k) * (2k-1)!!  ==  n! / ((n-2k)! * k! * 2^k)
inline std::uint64_t matching_count(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("matching_count: negative argument");
  if (2 * k > n) return 0;
  std::uint64_t r = binomial(n, 2 * k);
  for (int i = 1; i < 2 * k; i += 2)
    r = detail::checked_mul(r, static_cast<std::uint64_t>(i));
  return r;
}

}  // namespace shatter
