#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shatter/family.hpp"

namespace shatter {

// A k-uniform hypergraph on vertices {0,...,n-1}; edges deduplicated and
// kept in ascending bitmask order.
class UniformHypergraph {
 public:
  UniformHypergraph(int n, int k, std::vector<SetMask> edges);

  int vertex_count() const { return n_; }
  int uniformity() const { return k_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const SetMask> edges() const { return edges_; }
  ElementSet edge(std::size_t i) const { return {n_, edges_[i]}; }

  friend bool operator==(const UniformHypergraph&, const UniformHypergraph&) = default;

 private:
  int n_, k_;
  std::vector<SetMask> edges_;
};

// Three distinct edges with |e1 & e2| = k-1 and e3 covering the symmetric
// difference of e1 and e2.
struct GeneralizedTriangle {
  ElementSet e1, e2, e3;
};

// First generalized triangle in deterministic order: candidate (e1, e2)
// pairs are grouped by shared (k-1)-subset (ascending), e1/e2 by ascending
// edge order within the group, e3 the first covering edge.
std::optional<GeneralizedTriangle> find_generalized_triangle(const UniformHypergraph& g);

// Complete k-partite k-graph with consecutive near-equal parts (larger
// parts first); edges are the transversals, one vertex per part.
UniformHypergraph balanced_partite_hypergraph(int n, int k);

// Extremal edge count of a triangle-free k-graph: floor(n^2/4) for k = 2,
// prod_{j<k} floor((n+j)/k) for k in {3, 4}.  Other k have no exact formula
// here and are rejected.
std::uint64_t g_reference(int n, int k);

// Consecutive near-equal partition sizes, larger parts first.
std::vector<int> balanced_part_sizes(int n, int parts);

bool is_downward_closed(const Family& f);

// The trace-rich t-set extraction behind the separability upper bound, for
// downward-closed f: (1) a t-subset of any member of size >= t, else (2)
// e1 | e2 for a generalized triangle of the (t-1)-uniform member level.
// Either way the result T has at least 2^t - 2^(t-2) + 1 distinct traces;
// nullopt when both branches fail.
std::optional<ElementSet> extract_separating_T(const Family& f, int t);

}  // namespace shatter
