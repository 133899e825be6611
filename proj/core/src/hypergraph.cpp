#include "shatter/hypergraph.hpp"

#include <algorithm>

namespace shatter {

UniformHypergraph::UniformHypergraph(int n, int k, std::vector<SetMask> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (n < 0 || n > kMaxGroundSize)
    throw std::invalid_argument("UniformHypergraph: vertex count must be in [0, 64]");
  if (k < 0 || k > n) throw std::invalid_argument("UniformHypergraph: bad uniformity");
  for (SetMask e : edges_) {
    if (e & ~ground_mask(n_))
      throw std::invalid_argument("UniformHypergraph: edge outside vertex set");
    if (popcount(e) != k_) throw std::invalid_argument("UniformHypergraph: non-uniform edge");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::optional<GeneralizedTriangle> find_generalized_triangle(const UniformHypergraph& g) {
  const int k = g.uniformity();
  if (k < 2) throw std::invalid_argument("find_generalized_triangle: requires k >= 2");
  const auto edges = g.edges();

  // Two edges share k-1 vertices iff they collide in some (k-1)-subset
  // bucket, and then in exactly one.  Buckets are visited in ascending
  // (k-1)-subset order, pairs within a bucket in ascending edge order.
  std::vector<std::pair<SetMask, std::uint32_t>> buckets;
  buckets.reserve(edges.size() * static_cast<std::size_t>(k));
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    for (SetMask rest = edges[i]; rest != 0; rest &= rest - 1)
      buckets.emplace_back(edges[i] ^ (rest & -rest), i);
  std::sort(buckets.begin(), buckets.end());

  for (std::size_t lo = 0; lo < buckets.size();) {
    std::size_t hi = lo;
    while (hi < buckets.size() && buckets[hi].first == buckets[lo].first) ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) {
        const SetMask e1 = edges[buckets[i].second];
        const SetMask e2 = edges[buckets[j].second];
        const SetMask diff = e1 ^ e2;  // the two non-shared vertices
        for (SetMask e3 : edges) {
          if (e3 == e1 || e3 == e2 || (e3 & diff) != diff) continue;
          const int n = g.vertex_count();
          return GeneralizedTriangle{ElementSet(n, e1), ElementSet(n, e2),
                                     ElementSet(n, e3)};
        }
      }
    }
    lo = hi;
  }
  return std::nullopt;
}

std::vector<int> balanced_part_sizes(int n, int parts) {
  if (parts < 1 || n < 0) throw std::invalid_argument("balanced_part_sizes: bad arguments");
  std::vector<int> sizes(static_cast<std::size_t>(parts), n / parts);
  for (int i = 0; i < n % parts; ++i) ++sizes[static_cast<std::size_t>(i)];
  return sizes;
}

UniformHypergraph balanced_partite_hypergraph(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("balanced_partite_hypergraph: need 1 <= k <= n");
  const std::vector<int> sizes = balanced_part_sizes(n, k);

  // Transversals: one vertex from each consecutive block.
  std::vector<SetMask> edges{0};
  int offset = 0;
  for (int size : sizes) {
    std::vector<SetMask> next;
    next.reserve(edges.size() * static_cast<std::size_t>(size));
    for (SetMask partial : edges)
      for (int v = offset; v < offset + size; ++v)
        next.push_back(partial | (SetMask{1} << v));
    edges = std::move(next);
    offset += size;
  }
  return UniformHypergraph(n, k, std::move(edges));
}

std::uint64_t g_reference(int n, int k) {
  if (n < 0) throw std::invalid_argument("g_reference: negative n");
  switch (k) {
    case 2:
      return static_cast<std::uint64_t>(n / 2) * static_cast<std::uint64_t>((n + 1) / 2);
    case 3:
    case 4: {
      std::uint64_t prod = 1;
      for (int j = 0; j < k; ++j)
        prod *= static_cast<std::uint64_t>((n + j) / k);
      return prod;
    }
    default:
      throw std::invalid_argument(
          "g_reference: exact value known here only for k in {2,3,4}");
  }
}

bool is_downward_closed(const Family& f) {
  for (SetMask m : f.masks())
    for (SetMask rest = m; rest != 0; rest &= rest - 1)
      if (!f.contains(m ^ (rest & -rest))) return false;
  return true;
}

std::optional<ElementSet> extract_separating_T(const Family& f, int t) {
  if (t < 4) throw std::invalid_argument("extract_separating_T: requires t >= 4");
  if (!is_downward_closed(f))
    throw std::invalid_argument("extract_separating_T: family is not downward closed");
  const int n = f.ground_size();
  if (t > n) return std::nullopt;  // no t-set fits in the ground set

  // Branch 1: a member of size >= t shatters its own t-subsets.  Downward
  // closure means a size-t member exists whenever any larger one does.
  for (SetMask m : f.masks()) {
    if (popcount(m) != t) continue;
    return ElementSet(n, m);
  }

  // Branch 2: a generalized triangle among the (t-1)-sized members yields
  // T = e1 | e2 with 2^t - 2^(t-2) traces from the two subcubes plus the
  // trace of e3 meeting T in the symmetric difference.
  std::vector<SetMask> level;
  for (SetMask m : f.masks())
    if (popcount(m) == t - 1) level.push_back(m);
  UniformHypergraph g(n, t - 1, std::move(level));
  if (auto tri = find_generalized_triangle(g))
    return ElementSet(n, tri->e1.bits() | tri->e2.bits());
  return std::nullopt;
}

}  // namespace shatter
