#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "shatter/family.hpp"

namespace shatter {

// x <= y ("x below y"): every member containing x also contains y, i.e. no
// member separates x from y.  Reflexive and transitive; elements contained
// in no member sit below everything.
struct SeparationPreorder {
  int n = 0;
  std::vector<SetMask> leq;       // leq[x] bit y  <=>  x <= y
  std::vector<int> class_of;      // element -> equivalence class (mutual <=)
  std::vector<SetMask> classes;   // class -> its elements; ordered by least element
  std::vector<SetMask> quotient_below;  // class u -> {v != u : u < v}; transitively closed
};

// Some member contains x but not y.
bool separates(const Family& f, int x, int y);

SeparationPreorder separation_preorder(const Family& f);

// Maximum antichain size of the quotient poset, by Dilworth: minimum chain
// cover = #classes - maximum bipartite matching on the strict order.
int quotient_width(const SeparationPreorder& p);

// One maximum antichain (class indices, ascending); size == quotient_width.
std::vector<int> max_quotient_antichain(const SeparationPreorder& p);

// A t-set in which every ordered pair is separated, or nullopt.  Equivalent
// formulations, kept separate so they can be tested against each other:
//  - is_t_separable: antichain of the separation preorder's quotient,
//  - is_t_separable_direct: scan of all t-subsets in ascending bitmask
//    order, checking separates() pairwise.
std::optional<ElementSet> is_t_separable(const Family& f, int t);
std::optional<ElementSet> is_t_separable_direct(const Family& f, int t);

// The extremal non-t-separable construction: consecutive blocks of the
// given sizes, a maximal chain on each block, members = all unions of one
// chain element per block.  Size is exactly prod(part_size + 1).
Family chain_product_family(std::span<const int> part_sizes);

struct SeparabilityBounds {
  int n = 0, t = 0;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::optional<std::uint64_t> exact;
};

// Bounds on the least m such that every m-member family over n elements is
// t-separable.  lower = balanced chain-product size + 1 (the product is a
// non-separable witness); exact for t = 2 (n+2) and t = 3
// (floor(n^2/4)+n+2); upper for t >= 4 from the trace-extraction bound
// g(n,t-1) + 1 + sum_{i<=t-2} C(n,i) when g_reference covers t-1, else
// 1 + sum_{i<=t-1} C(n,i).
SeparabilityBounds separability_bounds(int n, int t);

// Bounds on the least m such that every family of m subsets of an n-set has
// a shattered matching of size k: lower = the 2k-separability lower bound
// (balanced chain product for t = 2k), upper = 1 + sum_{i<=2k-1} C(n,i).
std::pair<std::uint64_t, std::uint64_t> p_bounds(int n, int k);

// Exhaustive value of the least m such that every m-member family over n
// elements is t-separable: scans all 2^(2^n) families.  n <= 4 runs
// unconditionally; n = 5 only with allow_expensive (2^32 families).
int s_exact_small(int n, int t, bool allow_expensive = false, int threads = 1);

// Every downward-closed family over {0,...,n-1} exactly once (including the
// empty family); visitor returns false to stop.  n <= 5.
void enumerate_monotone_families(int n, const std::function<bool(const Family&)>& visit);
std::uint64_t count_monotone_families(int n);

// Every downward-closed family of at least m members over n elements has an
// a-subset with at least b distinct traces.  n <= 5 (exhausts monotone
// families; the downward-closed reduction makes this decide the relation
// for arbitrary families).
bool arrow_holds(int n, std::uint64_t m, int a, std::uint64_t b);

// First t-set (ascending bitmask order) with at least 2^t - 2^(t-2) + 1
// distinct traces; any such set is automatically a t-separability witness.
std::optional<ElementSet> trace_criterion_T(const Family& f, int t);

}  // namespace shatter
