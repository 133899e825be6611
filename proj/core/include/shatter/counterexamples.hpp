#pragma once

#include <optional>
#include <span>
#include <vector>

#include "shatter/family.hpp"
#include "shatter/matching.hpp"

namespace shatter {

// The odd-ground-size maximal intersecting family built from a half-size
// family g on V = {0,...,n-2} plus the extra element x = n-1: members are
// g, every g-member with x added, and every (k+1)-subset of V (n = 2k+1).
struct OddCounterexample {
  int n = 0;
  ElementSet v_set;
  int x = 0;
  Family g;       // over ground size n-1
  Family family;  // over ground size n
};

OddCounterexample build_odd_counterexample(const Family& g, int n);

// A perfect matching M of X \ {y} such that snake | {y} is a member for
// every one of the 2^((n-1)/2) snakes of M.
struct ConjBWitness {
  int y = 0;
  Matching matching;
};

// Scans every y (ascending) and every perfect matching of X \ {y} in
// canonical order; returns the first witness, or nullopt -- the "no witness"
// outcome is the point of the construction above.  Parallelizes over y;
// the verdict is worker-count independent.  Only the member list matters,
// so any odd-ground family can be checked.
std::optional<ConjBWitness> verify_conjecture_B(const Family& family,
                                                int threads = 1);
std::optional<ConjBWitness> verify_conjecture_B(const OddCounterexample& c,
                                                int threads = 1);

// Pairwise-disjoint r-element tuples; picking one element per tuple plays
// the role a snake plays for a matching (r = 2 is exactly a matching).
class RSystem {
 public:
  RSystem(int ground_size, int r, std::vector<SetMask> tuples);

  int ground_size() const { return n_; }
  int tuple_size() const { return r_; }
  std::span<const SetMask> tuples() const { return tuples_; }
  ElementSet support() const;

 private:
  int n_, r_;
  std::vector<SetMask> tuples_;
};

// Every one of the r^count transversal selections is carved out: some
// member's trace on the tuple union equals the selection.
bool is_r_system_shattered(const Family& f, const RSystem& sys);

// n / (2(r-1)), the trivial strict upper bound on how many pairwise
// disjoint r-tuples can all be shattered by a maximal intersecting
// half-size family; requires 2(r-1) | n, the regime where the bound is
// stated.
int kr_trivial_bound(int n, int r);

// The prefix-or-suffix family: F(a,b) = {x : x < a} | {x : x > b} over all
// half-integer cut points a <= b, plus the empty set; C(n,2) + n + 1
// members, no 3 of them disjointly representable.
Family f_ab_family(int n);

struct DisjointlyRepresentable {
  std::vector<ElementSet> members;
  std::vector<int> representatives;  // representatives[i] in members[i] only
};

// First (by ascending member rank) t members that are disjointly
// representable: each owns a private element outside the union of the
// others.  nullopt if no such t members exist.
std::optional<DisjointlyRepresentable> has_disjointly_representable(const Family& f,
                                                                    int t);

}  // namespace shatter
