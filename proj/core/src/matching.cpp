#include "shatter/matching.hpp"

#include <algorithm>

#include "shatter/numeric.hpp"

namespace shatter {

Matching::Matching(int ground_size, std::vector<std::pair<int, int>> pairs)
    : n_(ground_size), pairs_(std::move(pairs)) {
  if (ground_size < 0 || ground_size > kMaxGroundSize)
    throw std::invalid_argument("Matching: ground size must be in [0, 64]");
  for (auto& [a, b] : pairs_) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n_) throw std::invalid_argument("Matching: element out of range");
    if (a == b) throw std::invalid_argument("Matching: pair with equal endpoints");
    SetMask bits = (SetMask{1} << a) | (SetMask{1} << b);
    if (support_ & bits) throw std::invalid_argument("Matching: pairs overlap");
    support_ |= bits;
  }
  if (pairs_.size() > 32) throw std::invalid_argument("Matching: more than 32 pairs");
}

Matching Matching::canonical_form() const {
  std::vector<std::pair<int, int>> sorted = pairs_;
  std::sort(sorted.begin(), sorted.end());
  return {n_, std::move(sorted)};
}

Matching Matching::prefix(int k) const {
  if (k < 0 || k > size()) throw std::invalid_argument("Matching: bad prefix length");
  return {n_, {pairs_.begin(), pairs_.begin() + k}};
}

Matching Matching::suffix_from(int k) const {
  if (k < 0 || k > size()) throw std::invalid_argument("Matching: bad suffix start");
  return {n_, {pairs_.begin() + k, pairs_.end()}};
}

bool operator==(const Matching& a, const Matching& b) {
  if (a.n_ != b.n_ || a.support_ != b.support_) return false;
  return a.canonical_form().pairs_ == b.canonical_form().pairs_;
}

std::string Matching::to_string() const {
  std::string out;
  for (const auto& [a, b] : pairs_) {
    if (!out.empty()) out += ',';
    out += std::to_string(a);
    out += '-';
    out += std::to_string(b);
  }
  return out;
}

std::vector<Snake> snakes(const Matching& m) {
  const int k = m.size();
  if (k > 24) throw std::invalid_argument("snakes: matching too large to materialize");
  std::vector<Snake> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint32_t c = 0; c < (std::uint32_t{1} << k); ++c) {
    SetMask bits = 0;
    for (int i = 0; i < k; ++i) {
      const auto& [a, b] = m.pairs()[i];
      bits |= SetMask{1} << ((c >> i & 1) ? b : a);
    }
    out.push_back(Snake{c, ElementSet(m.ground_size(), bits)});
  }
  return out;
}

namespace {

struct Enumerator {
  int n, k;
  const std::function<bool(std::uint64_t, const Matching&)>* visit;
  std::vector<std::pair<int, int>> pairs;
  SetMask used = 0;
  std::uint64_t rank = 0;

  bool rec(int min_a) {
    if (static_cast<int>(pairs.size()) == k)
      return (*visit)(rank++, Matching(n, pairs));
    const int depth = static_cast<int>(pairs.size());
    for (int a = min_a; a <= n - 2 * (k - depth); ++a) {
      if (used >> a & 1) continue;
      for (int b = a + 1; b < n; ++b) {
        if (used >> b & 1) continue;
        // Remaining pairs all need smaller endpoints above a; make sure
        // enough free elements are left.
        if (popcount(~used & ~ground_mask(a + 1) & ground_mask(n)) <
            2 * (k - depth) - 1)
          break;
        pairs.emplace_back(a, b);
        used |= (SetMask{1} << a) | (SetMask{1} << b);
        bool keep_going = rec(a + 1);
        used &= ~((SetMask{1} << a) | (SetMask{1} << b));
        pairs.pop_back();
        if (!keep_going) return false;
      }
    }
    return true;
  }
};

}  // namespace

bool enumerate_matchings(
    int n, int k,
    const std::function<bool(std::uint64_t, const Matching&)>& visit) {
  if (n < 0 || n > kMaxGroundSize || k < 0)
    throw std::invalid_argument("enumerate_matchings: bad arguments");
  if (2 * k > n) return true;  // nothing to visit
  if (k == 0) return visit(0, Matching(n, {}));
  Enumerator e{n, k, &visit, {}, 0, 0};
  e.pairs.reserve(static_cast<std::size_t>(k));
  return e.rec(0);
}

Matching matching_at_rank(int n, int k, std::uint64_t rank) {
  if (rank >= matching_count(n, k))
    throw std::invalid_argument("matching_at_rank: rank out of range");
  std::vector<std::pair<int, int>> pairs;
  SetMask used = 0;
  int min_a = 0;
  for (int depth = 0; depth < k; ++depth) {
    bool placed = false;
    for (int a = min_a; !placed && a < n; ++a) {
      if (used >> a & 1) continue;
      // Elements above a still free, minus one for the partner b.
      const int above = popcount(~used & ~ground_mask(a + 1) & ground_mask(n));
      const std::uint64_t subtree = matching_count(above - 1, k - depth - 1);
      if (subtree == 0) continue;
      for (int b = a + 1; b < n; ++b) {
        if (used >> b & 1) continue;
        if (rank >= subtree) {
          rank -= subtree;
          continue;
        }
        pairs.emplace_back(a, b);
        used |= (SetMask{1} << a) | (SetMask{1} << b);
        min_a = a + 1;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("matching_at_rank: rank arithmetic broken");
  }
  return Matching(n, std::move(pairs));
}

bool is_carved(const Family& f, const Matching& m, const Snake& s) {
  if (f.ground_size() != m.ground_size())
    throw std::invalid_argument("is_carved: ground size mismatch");
  const SetMask support = m.support().bits();
  const SetMask want = s.elements.bits();
  if ((want & ~support) || popcount(want) != m.size())
    throw std::invalid_argument("is_carved: snake does not match the matching");
  for (SetMask member : f.masks())
    if ((member & support) == want) return true;
  return false;
}

std::optional<std::uint32_t> first_uncarved_snake(const Family& f, const Matching& m) {
  if (f.ground_size() != m.ground_size())
    throw std::invalid_argument("first_uncarved_snake: ground size mismatch");
  const int k = m.size();
  if (2 * k > 26) throw std::invalid_argument("first_uncarved_snake: matching too large");
  const SetMask support = m.support().bits();

  // Mark which traces onto the support occur, then probe the 2^k snake
  // patterns in ascending choice order.
  std::vector<bool> present(std::size_t{1} << (2 * k), false);
  for (SetMask member : f.masks()) present[compress_bits(member, support)] = true;

  SetMask low_pattern[32], high_pattern[32];
  for (int i = 0; i < k; ++i) {
    const auto& [a, b] = m.pairs()[i];
    low_pattern[i] = compress_bits(SetMask{1} << a, support);
    high_pattern[i] = compress_bits(SetMask{1} << b, support);
  }
  for (std::uint32_t c = 0; c < (std::uint32_t{1} << k); ++c) {
    SetMask pattern = 0;
    for (int i = 0; i < k; ++i) pattern |= (c >> i & 1) ? high_pattern[i] : low_pattern[i];
    if (!present[pattern]) return c;
  }
  return std::nullopt;
}

bool is_shattered(const Family& f, const Matching& m) {
  return !first_uncarved_snake(f, m).has_value();
}

std::pair<int, std::optional<Matching>> max_shattered_size(const Family& f,
                                                           int k_min, int k_max) {
  const int n = f.ground_size();
  if (k_min < 0 || k_max > n / 2 || k_min > k_max)
    throw std::invalid_argument("max_shattered_size: bad range");
  for (int k = k_max; k >= k_min; --k) {
    if (k == 0) {
      if (!f.empty()) return {0, Matching(n, {})};
      continue;
    }
    std::optional<Matching> witness;
    enumerate_matchings(n, k, [&](std::uint64_t, const Matching& m) {
      if (is_shattered(f, m)) {
        witness = m;
        return false;
      }
      return true;
    });
    if (witness) return {k, std::move(witness)};
  }
  return {k_min - 1, std::nullopt};
}

DichotomySplit dichotomy_check(const Family& f, const Matching& perfect, int k) {
  if (!is_maximal_intersecting_halfsize(f))
    throw std::invalid_argument("dichotomy_check: family is not maximal intersecting half-size");
  const int half = f.ground_size() / 2;
  if (perfect.size() != half || perfect.ground_size() != f.ground_size())
    throw std::invalid_argument("dichotomy_check: matching is not perfect");
  if (k < 0 || k > half) throw std::invalid_argument("dichotomy_check: bad split point");
  DichotomySplit split{perfect.prefix(k), perfect.suffix_from(k)};
  split.first_shattered = is_shattered(f, split.first_part);
  split.second_shattered = is_shattered(f, split.second_part);
  return split;
}

}  // namespace shatter
