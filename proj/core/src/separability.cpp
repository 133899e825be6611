#include "shatter/separability.hpp"

#include <algorithm>
#include <array>
#include <atomic>

#include "shatter/hypergraph.hpp"
#include "shatter/numeric.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

bool separates(const Family& f, int x, int y) {
  const int n = f.ground_size();
  if (x == y || x < 0 || y < 0 || x >= n || y >= n)
    throw std::invalid_argument("separates: need two distinct elements in range");
  for (SetMask m : f.masks())
    if ((m >> x & 1) && !(m >> y & 1)) return true;
  return false;
}

SeparationPreorder separation_preorder(const Family& f) {
  const int n = f.ground_size();
  SeparationPreorder p;
  p.n = n;
  p.leq.assign(static_cast<std::size_t>(n), 0);

  // Member signatures: sig[x] = which members contain x, packed 64 members
  // per word.  x <= y iff sig[x] is a subset of sig[y].
  const std::size_t words = (f.size() + 63) / 64;
  std::vector<std::uint64_t> sig(static_cast<std::size_t>(n) * std::max<std::size_t>(words, 1), 0);
  {
    std::size_t idx = 0;
    for (SetMask m : f.masks()) {
      for (SetMask rest = m; rest != 0; rest &= rest - 1)
        sig[static_cast<std::size_t>(lowest_element(rest)) * words + idx / 64] |=
            std::uint64_t{1} << (idx % 64);
      ++idx;
    }
  }
  auto below = [&](int x, int y) {
    for (std::size_t w = 0; w < words; ++w)
      if (sig[static_cast<std::size_t>(x) * words + w] &
          ~sig[static_cast<std::size_t>(y) * words + w])
        return false;
    return true;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x == y || below(x, y)) p.leq[static_cast<std::size_t>(x)] |= SetMask{1} << y;

  // Equivalence classes (mutual <=), indexed by their least element.
  p.class_of.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (p.class_of[static_cast<std::size_t>(x)] >= 0) continue;
    const int id = static_cast<int>(p.classes.size());
    SetMask members = 0;
    for (int y = x; y < n; ++y) {
      if (p.class_of[static_cast<std::size_t>(y)] >= 0) continue;
      if ((p.leq[static_cast<std::size_t>(x)] >> y & 1) &&
          (p.leq[static_cast<std::size_t>(y)] >> x & 1)) {
        p.class_of[static_cast<std::size_t>(y)] = id;
        members |= SetMask{1} << y;
      }
    }
    p.classes.push_back(members);
  }

  // Strict order on classes; transitive because leq is.
  p.quotient_below.assign(p.classes.size(), 0);
  for (std::size_t u = 0; u < p.classes.size(); ++u) {
    const int xu = lowest_element(p.classes[u]);
    for (std::size_t v = 0; v < p.classes.size(); ++v) {
      if (u == v) continue;
      const int xv = lowest_element(p.classes[v]);
      if (p.leq[static_cast<std::size_t>(xu)] >> xv & 1)
        p.quotient_below[u] |= SetMask{1} << v;
    }
  }
  return p;
}

namespace {

// Kuhn's augmenting-path matching on the strict quotient order, used for
// the Dilworth width and the Koenig antichain below.
struct QuotientMatching {
  int c = 0;
  std::vector<int> match_right;  // right class -> left class (or -1)
  std::vector<int> match_left;   // left class -> right class (or -1)

  explicit QuotientMatching(const SeparationPreorder& p)
      : c(static_cast<int>(p.classes.size())),
        match_right(p.classes.size(), -1),
        match_left(p.classes.size(), -1) {
    std::vector<bool> visited;
    for (int u = 0; u < c; ++u) {
      visited.assign(static_cast<std::size_t>(c), false);
      augment(p, u, visited);
    }
  }

  bool augment(const SeparationPreorder& p, int u, std::vector<bool>& visited) {
    for (SetMask rest = p.quotient_below[static_cast<std::size_t>(u)]; rest != 0;
         rest &= rest - 1) {
      const int v = lowest_element(rest);
      if (visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = true;
      if (match_right[static_cast<std::size_t>(v)] < 0 ||
          augment(p, match_right[static_cast<std::size_t>(v)], visited)) {
        match_right[static_cast<std::size_t>(v)] = u;
        match_left[static_cast<std::size_t>(u)] = v;
        return true;
      }
    }
    return false;
  }

  int size() const {
    int m = 0;
    for (int v : match_right)
      if (v >= 0) ++m;
    return m;
  }
};

}  // namespace

int quotient_width(const SeparationPreorder& p) {
  QuotientMatching m(p);
  return m.c - m.size();
}

std::vector<int> max_quotient_antichain(const SeparationPreorder& p) {
  QuotientMatching m(p);
  const int c = m.c;

  // Koenig: alternate from unmatched left vertices; minimum vertex cover is
  // (unreached left) + (reached right); classes untouched on both sides form
  // a maximum antichain.
  std::vector<bool> left_reach(static_cast<std::size_t>(c), false);
  std::vector<bool> right_reach(static_cast<std::size_t>(c), false);
  std::vector<int> queue;
  for (int u = 0; u < c; ++u)
    if (m.match_left[static_cast<std::size_t>(u)] < 0) {
      left_reach[static_cast<std::size_t>(u)] = true;
      queue.push_back(u);
    }
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    for (SetMask rest = p.quotient_below[static_cast<std::size_t>(u)]; rest != 0;
         rest &= rest - 1) {
      const int v = lowest_element(rest);
      if (right_reach[static_cast<std::size_t>(v)]) continue;
      right_reach[static_cast<std::size_t>(v)] = true;
      const int w = m.match_right[static_cast<std::size_t>(v)];
      if (w >= 0 && !left_reach[static_cast<std::size_t>(w)]) {
        left_reach[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> antichain;
  for (int u = 0; u < c; ++u)
    if (left_reach[static_cast<std::size_t>(u)] && !right_reach[static_cast<std::size_t>(u)])
      antichain.push_back(u);
  return antichain;
}

namespace {

void check_t_range(const Family& f, int t, const char* who) {
  if (t < 2 || t > f.ground_size())
    throw std::invalid_argument(std::string(who) + ": need 2 <= t <= n");
}

}  // namespace

std::optional<ElementSet> is_t_separable(const Family& f, int t) {
  check_t_range(f, t, "is_t_separable");
  const SeparationPreorder p = separation_preorder(f);
  const std::vector<int> antichain = max_quotient_antichain(p);
  if (static_cast<int>(antichain.size()) < t) return std::nullopt;
  // Pairwise incomparable classes <=> all ordered pairs of representatives
  // separated; take the least element of the first t classes.
  SetMask witness = 0;
  for (int i = 0; i < t; ++i)
    witness |= SetMask{1} << lowest_element(p.classes[static_cast<std::size_t>(antichain[static_cast<std::size_t>(i)])]);
  return ElementSet(f.ground_size(), witness);
}

std::optional<ElementSet> is_t_separable_direct(const Family& f, int t) {
  check_t_range(f, t, "is_t_separable_direct");
  const int n = f.ground_size();
  for (SetMask tm = ground_mask(t); tm != 0; tm = next_same_popcount(tm, n)) {
    bool ok = true;
    for (SetMask xr = tm; ok && xr != 0; xr &= xr - 1) {
      for (SetMask yr = tm; yr != 0; yr &= yr - 1) {
        if (xr == yr) continue;
        if (!separates(f, lowest_element(xr), lowest_element(yr))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return ElementSet(n, tm);
  }
  return std::nullopt;
}

Family chain_product_family(std::span<const int> part_sizes) {
  if (part_sizes.empty())
    throw std::invalid_argument("chain_product_family: need at least one part");
  int n = 0;
  for (int s : part_sizes) {
    if (s < 1) throw std::invalid_argument("chain_product_family: zero-size part");
    n += s;
  }
  if (n > kMaxGroundSize)
    throw std::invalid_argument("chain_product_family: parts exceed 64 elements");

  // Unions of one prefix per block: block at `offset` of size s contributes
  // the s+1 prefixes {}, {offset}, {offset, offset+1}, ...
  std::vector<SetMask> members{0};
  int offset = 0;
  for (int s : part_sizes) {
    std::vector<SetMask> next;
    next.reserve(members.size() * static_cast<std::size_t>(s + 1));
    for (SetMask m : members) {
      SetMask prefix = 0;
      next.push_back(m);
      for (int i = 0; i < s; ++i) {
        prefix |= SetMask{1} << (offset + i);
        next.push_back(m | prefix);
      }
    }
    members = std::move(next);
    offset += s;
  }
  return Family(n, std::move(members));
}

SeparabilityBounds separability_bounds(int n, int t) {
  if (t < 2 || t > n) throw std::invalid_argument("separability_bounds: need 2 <= t <= n");
  SeparabilityBounds b;
  b.n = n;
  b.t = t;
  std::uint64_t product = 1;
  for (int s : balanced_part_sizes(n, t - 1))
    product = detail::checked_mul(product, static_cast<std::uint64_t>(s) + 1);
  b.lower = detail::checked_add(product, 1);
  if (t == 2) {
    b.exact = static_cast<std::uint64_t>(n) + 2;
  } else if (t == 3) {
    b.exact = static_cast<std::uint64_t>(n) * n / 4 + n + 2;
  }
  if (b.exact) {
    b.lower = *b.exact;
    b.upper = *b.exact;
    return b;
  }
  if (t - 1 <= 4) {
    b.upper = detail::checked_add(g_reference(n, t - 1) + 1, sum_binomials(n, t - 2));
  } else {
    b.upper = detail::checked_add(1, sum_binomials(n, t - 1));
  }
  return b;
}

std::pair<std::uint64_t, std::uint64_t> p_bounds(int n, int k) {
  if (k < 1 || 2 * k > n) throw std::invalid_argument("p_bounds: need 1 <= 2k <= n");
  std::uint64_t product = 1;
  for (int s : balanced_part_sizes(n, 2 * k - 1))
    product = detail::checked_mul(product, static_cast<std::uint64_t>(s) + 1);
  return {detail::checked_add(product, 1),
          detail::checked_add(1, sum_binomials(n, 2 * k - 1))};
}

namespace {

// s_exact_small inner machinery.  A family over n <= 5 elements is a bit
// counter over the 2^n subsets; subsets-containing-x masks turn the pair
// separation test into two ANDs.
struct ExhaustiveScan {
  int n, t;
  std::uint64_t pair_mask[5][5];          // [x][y]: subsets containing x, not y
  std::vector<std::array<int, 5>> combos;  // t-subsets of {0,...,n-1}

  ExhaustiveScan(int n, int t) : n(n), t(t) {
    const int subsets = 1 << n;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        std::uint64_t m = 0;
        for (int j = 0; j < subsets; ++j)
          if ((j >> x & 1) && !(j >> y & 1)) m |= std::uint64_t{1} << j;
        pair_mask[x][y] = m;
      }
    for (SetMask c = ground_mask(t); c != 0; c = next_same_popcount(c, n)) {
      std::array<int, 5> elems{};
      int i = 0;
      for (SetMask rest = c; rest != 0; rest &= rest - 1) elems[static_cast<std::size_t>(i++)] = lowest_element(rest);
      combos.push_back(elems);
    }
  }

  bool t_separable(std::uint64_t family) const {
    for (const auto& combo : combos) {
      bool ok = true;
      for (int i = 0; ok && i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
          const int x = combo[static_cast<std::size_t>(i)], y = combo[static_cast<std::size_t>(j)];
          if (!(family & pair_mask[x][y]) || !(family & pair_mask[y][x])) {
            ok = false;
            break;
          }
        }
      if (ok) return true;
    }
    return false;
  }
};

}  // namespace

int s_exact_small(int n, int t, bool allow_expensive, int threads) {
  if (n < 1 || n > 5) throw std::invalid_argument("s_exact_small: supports n <= 5 only");
  if (t < 2 || t > n) throw std::invalid_argument("s_exact_small: need 2 <= t <= n");
  if (n == 5 && !allow_expensive)
    throw std::invalid_argument(
        "s_exact_small: n = 5 scans 2^32 families; pass allow_expensive");

  const ExhaustiveScan scan(n, t);
  const std::uint64_t families = std::uint64_t{1} << (1 << n);
  const int workers = resolve_worker_count(threads);
  std::vector<int> best_per_worker(static_cast<std::size_t>(workers), 0);
  parallel_ranges(families, workers, [&](int w, std::uint64_t lo, std::uint64_t hi) {
    int best = 0;
    for (std::uint64_t fam = lo; fam < hi; ++fam) {
      if (popcount(fam) <= best) continue;  // cannot improve the maximum
      if (!scan.t_separable(fam)) best = popcount(fam);
    }
    best_per_worker[static_cast<std::size_t>(w)] = best;
  });
  int best = 0;
  for (int b : best_per_worker) best = std::max(best, b);
  return best + 1;
}

namespace {

// Level-by-level enumeration of downward-closed families: after choosing
// the members of size < k, the size-k candidates are the k-subsets whose
// every (k-1)-subset was chosen; each candidate subset branches, the empty
// choice terminating the family.
struct MonotoneEnum {
  int n;
  const std::function<bool(const Family&)>* visit;
  std::vector<SetMask> members;

  bool emit() {
    return (*visit)(Family(n, members));
  }

  bool level(int k, std::uint64_t prev_chosen) {
    if (k > n) return emit();
    std::vector<SetMask> candidates;
    for (SetMask c = ground_mask(k); c != 0; c = next_same_popcount(c, n)) {
      bool ok = true;
      for (SetMask rest = c; rest != 0; rest &= rest - 1)
        if (!(prev_chosen >> (c ^ (rest & -rest)) & 1)) {
          ok = false;
          break;
        }
      if (ok) candidates.push_back(c);
    }
    const std::uint64_t branches = std::uint64_t{1} << candidates.size();
    for (std::uint64_t pick = 0; pick < branches; ++pick) {
      if (pick == 0) {
        if (!emit()) return false;
        continue;
      }
      std::uint64_t chosen = 0;
      const std::size_t before = members.size();
      for (std::size_t i = 0; i < candidates.size(); ++i)
        if (pick >> i & 1) {
          members.push_back(candidates[i]);
          chosen |= std::uint64_t{1} << candidates[i];
        }
      const bool keep_going = level(k + 1, chosen);
      members.resize(before);
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

void enumerate_monotone_families(int n, const std::function<bool(const Family&)>& visit) {
  if (n < 0 || n > 5) throw std::invalid_argument("enumerate_monotone_families: n <= 5 only");
  MonotoneEnum e{n, &visit, {}};
  // The empty family, then everything containing the empty set.
  if (!visit(Family(n))) return;
  e.members.push_back(0);
  e.level(1, 1);
}

std::uint64_t count_monotone_families(int n) {
  std::uint64_t count = 0;
  enumerate_monotone_families(n, [&](const Family&) {
    ++count;
    return true;
  });
  return count;
}

bool arrow_holds(int n, std::uint64_t m, int a, std::uint64_t b) {
  if (n < 1 || n > 5) throw std::invalid_argument("arrow_holds: n <= 5 only");
  if (a < 0 || a > n) throw std::invalid_argument("arrow_holds: need 0 <= a <= n");
  bool holds = true;
  enumerate_monotone_families(n, [&](const Family& f) {
    if (f.size() < m) return true;
    if (a == 0) {  // the empty window has one trace iff f is nonempty
      if ((f.empty() ? 0u : 1u) >= b) return true;
      holds = false;
      return false;
    }
    // Does some a-subset T collect at least b distinct traces?
    for (SetMask tm = ground_mask(a); tm != 0; tm = next_same_popcount(tm, n)) {
      std::uint64_t traces = 0;
      for (SetMask member : f.masks())
        traces |= std::uint64_t{1} << compress_bits(member, tm);
      if (static_cast<std::uint64_t>(popcount(traces)) >= b) return true;
    }
    holds = false;
    return false;  // found a counterexample family; stop
  });
  return holds;
}

std::optional<ElementSet> trace_criterion_T(const Family& f, int t) {
  check_t_range(f, t, "trace_criterion_T");
  const int n = f.ground_size();
  if (t > 26) throw std::invalid_argument("trace_criterion_T: t too large");
  const std::uint64_t threshold =
      (std::uint64_t{1} << t) - (std::uint64_t{1} << (t - 2)) + 1;
  std::vector<bool> seen;
  for (SetMask tm = ground_mask(t); tm != 0; tm = next_same_popcount(tm, n)) {
    seen.assign(std::size_t{1} << t, false);
    std::uint64_t distinct = 0;
    for (SetMask member : f.masks()) {
      const SetMask trace = compress_bits(member, tm);
      if (!seen[trace]) {
        seen[trace] = true;
        if (++distinct >= threshold) return ElementSet(n, tm);
      }
    }
  }
  return std::nullopt;
}

}  // namespace shatter
