#include "shatter/counterexamples.hpp"

#include <algorithm>

#include "shatter/numeric.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

OddCounterexample build_odd_counterexample(const Family& g, int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("build_odd_counterexample: n must be odd, >= 3");
  if (g.ground_size() != n - 1)
    throw std::invalid_argument("build_odd_counterexample: base family must live on n-1 elements");
  if (!is_maximal_intersecting_halfsize(g))
    throw std::invalid_argument(
        "build_odd_counterexample: base family must be maximal intersecting half-size");
  const int k = (n - 1) / 2;
  const int x = n - 1;
  const SetMask x_bit = SetMask{1} << x;

  std::vector<SetMask> members;
  members.reserve(binomial(n, k));
  for (SetMask m : g.masks()) {
    members.push_back(m);          // Y
    members.push_back(m | x_bit);  // Y | {x}
  }
  // All (k+1)-subsets of V.
  for (SetMask m = ground_mask(k + 1); m != 0; m = next_same_popcount(m, n - 1))
    members.push_back(m);

  OddCounterexample out{n, ElementSet(n, ground_mask(n - 1)), x, g,
                        Family(n, std::move(members))};
  return out;
}

namespace {

// Canonical perfect-matching enumeration of an arbitrary element subset:
// always match the lowest free element, partners ascending.
struct PerfectMatchingScan {
  int half = 0;
  SetMask free = 0;
  int pair_a[32], pair_b[32];

  // visit(pair_a, pair_b) -> true to continue; returns false if stopped.
  template <typename Fn>
  bool rec(int depth, Fn&& visit) {
    if (free == 0) return visit(pair_a, pair_b);
    const int a = lowest_element(free);
    const SetMask a_bit = free & -free;
    for (SetMask rest = free ^ a_bit; rest != 0; rest &= rest - 1) {
      const int b = lowest_element(rest);
      const SetMask b_bit = rest & -rest;
      pair_a[depth] = a;
      pair_b[depth] = b;
      free ^= a_bit | b_bit;
      const bool keep_going = rec(depth + 1, visit);
      free ^= a_bit | b_bit;
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

std::optional<ConjBWitness> verify_conjecture_B(const Family& family, int threads) {
  const int n = family.ground_size();
  if (n % 2 == 0) throw std::invalid_argument("verify_conjecture_B: ground size must be odd");
  if (n > 26) throw std::invalid_argument("verify_conjecture_B: membership table too large");
  const int half = (n - 1) / 2;

  // Constant-time membership for the ~2.6e8 probes at n = 15.
  std::vector<std::uint64_t> member_bits((std::size_t{1} << n) / 64 + 1, 0);
  for (SetMask m : family.masks()) member_bits[m / 64] |= std::uint64_t{1} << (m % 64);
  auto is_member = [&](SetMask m) {
    return (member_bits[m / 64] >> (m % 64)) & 1;
  };

  // For each y the canonical rank of the first witness matching, or -1.
  std::vector<std::int64_t> first_rank(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<std::pair<int, int>>> first_pairs(static_cast<std::size_t>(n));

  const int workers = resolve_worker_count(threads);
  std::atomic<int> next_y{0};
  run_workers(workers, [&](int) {
    for (;;) {
      const int y = next_y.fetch_add(1, std::memory_order_relaxed);
      if (y >= n) return;
      const SetMask y_bit = SetMask{1} << y;
      PerfectMatchingScan scan;
      scan.half = half;
      scan.free = ground_mask(n) ^ y_bit;
      std::int64_t rank = 0;
      scan.rec(0, [&](const int* pa, const int* pb) {
        SetMask low[32], high[32];
        for (int i = 0; i < half; ++i) {
          low[i] = SetMask{1} << pa[i];
          high[i] = SetMask{1} << pb[i];
        }
        for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << half); ++choice) {
          SetMask snake = y_bit;
          for (int i = 0; i < half; ++i) snake |= (choice >> i & 1) ? high[i] : low[i];
          if (!is_member(snake)) {
            ++rank;
            return true;  // this matching fails; keep scanning
          }
        }
        first_rank[static_cast<std::size_t>(y)] = rank;
        first_pairs[static_cast<std::size_t>(y)].assign(half, {0, 0});
        for (int i = 0; i < half; ++i)
          first_pairs[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)] = {pa[i], pb[i]};
        return false;  // witness found for this y
      });
    }
  });

  for (int y = 0; y < n; ++y) {
    if (first_rank[static_cast<std::size_t>(y)] >= 0)
      return ConjBWitness{y, Matching(n, first_pairs[static_cast<std::size_t>(y)])};
  }
  return std::nullopt;
}

std::optional<ConjBWitness> verify_conjecture_B(const OddCounterexample& c, int threads) {
  return verify_conjecture_B(c.family, threads);
}

RSystem::RSystem(int ground_size, int r, std::vector<SetMask> tuples)
    : n_(ground_size), r_(r), tuples_(std::move(tuples)) {
  if (ground_size < 0 || ground_size > kMaxGroundSize)
    throw std::invalid_argument("RSystem: ground size must be in [0, 64]");
  if (r < 2) throw std::invalid_argument("RSystem: tuple size must be >= 2");
  SetMask seen = 0;
  for (SetMask t : tuples_) {
    if (t & ~ground_mask(n_)) throw std::invalid_argument("RSystem: tuple outside ground set");
    if (popcount(t) != r_) throw std::invalid_argument("RSystem: tuple of wrong size");
    if (t & seen) throw std::invalid_argument("RSystem: tuples must be pairwise disjoint");
    seen |= t;
  }
}

ElementSet RSystem::support() const {
  SetMask s = 0;
  for (SetMask t : tuples_) s |= t;
  return {n_, s};
}

bool is_r_system_shattered(const Family& f, const RSystem& sys) {
  if (f.ground_size() != sys.ground_size())
    throw std::invalid_argument("is_r_system_shattered: ground size mismatch");
  const auto tuples = sys.tuples();
  const int count = static_cast<int>(tuples.size());
  const int r = sys.tuple_size();
  const SetMask support = sys.support().bits();
  const int bits = popcount(support);
  if (bits > 26) throw std::invalid_argument("is_r_system_shattered: support too large");
  if (count == 0) return !f.empty();  // the empty selection needs some member

  std::vector<bool> present(std::size_t{1} << bits, false);
  for (SetMask m : f.masks()) present[compress_bits(m, support)] = true;

  // Element patterns per tuple, then an odometer over the r^count selections.
  std::vector<std::vector<SetMask>> pattern(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    for (SetMask rest = tuples[static_cast<std::size_t>(i)]; rest != 0; rest &= rest - 1)
      pattern[static_cast<std::size_t>(i)].push_back(compress_bits(rest & -rest, support));

  std::vector<int> digits(static_cast<std::size_t>(count), 0);
  for (;;) {
    SetMask sel = 0;
    for (int i = 0; i < count; ++i)
      sel |= pattern[static_cast<std::size_t>(i)][static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
    if (!present[sel]) return false;
    int i = 0;
    while (i < count && ++digits[static_cast<std::size_t>(i)] == r) {
      digits[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == count) return true;
  }
}

int kr_trivial_bound(int n, int r) {
  if (r < 3) throw std::invalid_argument("kr_trivial_bound: stated for r >= 3");
  if (n <= 0 || n % (2 * (r - 1)) != 0)
    throw std::invalid_argument("kr_trivial_bound: requires 2(r-1) to divide n");
  return n / (2 * (r - 1));
}

Family f_ab_family(int n) {
  if (n < 3 || n > kMaxGroundSize)
    throw std::invalid_argument("f_ab_family: need 3 <= n <= 64");
  const SetMask ground = ground_mask(n);
  std::vector<SetMask> members;
  members.reserve(static_cast<std::size_t>(n + 2) * (n + 1) / 2);
  // Cut points i + 1/2 for i = 0..n; prefix below the first cut, suffix
  // above the second.  i == j contributes the gap-free set X itself.
  for (int i = 0; i <= n; ++i) {
    const SetMask prefix = ground_mask(i);
    for (int j = i; j <= n; ++j) {
      const SetMask suffix = ground & ~ground_mask(j);
      members.push_back(prefix | suffix);
    }
  }
  return Family(n, std::move(members));
}

std::optional<DisjointlyRepresentable> has_disjointly_representable(const Family& f, int t) {
  if (t < 2) throw std::invalid_argument("has_disjointly_representable: t must be >= 2");
  if (static_cast<std::size_t>(t) > f.size()) return std::nullopt;
  const auto masks = f.masks();
  const int m = static_cast<int>(masks.size());

  // Depth-first over ascending member ranks; priv[i] = chosen[i] minus the
  // union of the other chosen members so far.  Private sets only shrink, so
  // an empty one prunes the subtree.
  std::vector<int> chosen(static_cast<std::size_t>(t), -1);
  std::vector<SetMask> priv(static_cast<std::size_t>(t), 0);
  SetMask whole_union = 0;

  auto rec = [&](auto&& self, int depth, int first) -> bool {
    if (depth == t) return true;
    for (int i = first; i <= m - (t - depth); ++i) {
      const SetMask cand = masks[static_cast<std::size_t>(i)];
      SetMask cand_priv = cand & ~whole_union;
      if (cand_priv == 0) continue;  // covered by the chosen union already
      bool viable = true;
      for (int d = 0; d < depth; ++d)
        if ((priv[static_cast<std::size_t>(d)] & ~cand) == 0) {
          viable = false;
          break;
        }
      if (!viable) continue;
      std::vector<SetMask> saved(priv.begin(), priv.begin() + depth);
      for (int d = 0; d < depth; ++d) priv[static_cast<std::size_t>(d)] &= ~cand;
      priv[static_cast<std::size_t>(depth)] = cand_priv;
      chosen[static_cast<std::size_t>(depth)] = i;
      const SetMask saved_union = whole_union;
      whole_union |= cand;
      if (self(self, depth + 1, i + 1)) return true;
      whole_union = saved_union;
      std::copy(saved.begin(), saved.end(), priv.begin());
    }
    return false;
  };

  if (!rec(rec, 0, 0)) return std::nullopt;
  DisjointlyRepresentable out;
  for (int d = 0; d < t; ++d) {
    out.members.emplace_back(f.ground_size(), masks[static_cast<std::size_t>(chosen[static_cast<std::size_t>(d)])]);
    out.representatives.push_back(lowest_element(priv[static_cast<std::size_t>(d)]));
  }
  return out;
}

}  // namespace shatter
