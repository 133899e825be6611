#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shatter/family.hpp"

namespace shatter {

// A matching: pairwise-disjoint unordered pairs of ground-set elements.
// Each pair is normalized to (min, max); the pair *sequence* keeps the
// caller's order so that prefixes of a perfect matching are meaningful.
// Equality and hashing go through canonical_form(), which sorts pairs by
// first element.
class Matching {
 public:
  Matching(int ground_size, std::vector<std::pair<int, int>> pairs);

  int ground_size() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  std::span<const std::pair<int, int>> pairs() const { return pairs_; }
  ElementSet support() const { return {n_, support_}; }

  // Pairs sorted by first coordinate (they are disjoint, so this is total).
  Matching canonical_form() const;

  // Sub-matchings used by the dichotomy check: the first k pairs / the rest.
  Matching prefix(int k) const;
  Matching suffix_from(int k) const;

  friend bool operator==(const Matching& a, const Matching& b);

  std::string to_string() const;  // e.g. "0-1,2-3"

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
  SetMask support_ = 0;
};

// One choice of endpoint from every pair of a matching.  `choice` bit i
// selects the larger element of pair i (0 -> smaller).
struct Snake {
  std::uint32_t choice = 0;
  ElementSet elements;
};

// All 2^k snakes of a k-pair matching, in ascending choice order.
std::vector<Snake> snakes(const Matching& m);

// Visits every k-pair matching on {0,...,n-1} exactly once, in canonical
// order: pairs are generated with a1 < a2 < ... (ai the smaller endpoint)
// and enumeration is lexicographic in (a1, b1, a2, b2, ...).  The visitor
// returns false to stop early; enumerate_matchings returns false iff it was
// stopped.  The index passed alongside is the matching's rank in this order.
bool enumerate_matchings(
    int n, int k,
    const std::function<bool(std::uint64_t rank, const Matching&)>& visit);

// Inverse of the enumeration order: the matching visited at `rank` (without
// enumerating).  Used to spot-check certificates that refer to matchings by
// rank.  rank must be < matching_count(n, k).
Matching matching_at_rank(int n, int k, std::uint64_t rank);

// The snake is carved out: some member of f meets the matching's support in
// exactly the snake.
bool is_carved(const Family& f, const Matching& m, const Snake& s);

// Every snake of m is carved out of f.
bool is_shattered(const Family& f, const Matching& m);

// Lowest snake-choice value not carved out, if any (nullopt <=> shattered).
std::optional<std::uint32_t> first_uncarved_snake(const Family& f, const Matching& m);

// Largest k in [k_min, k_max] with a shattered k-pair matching, plus the
// first such matching in canonical order.  Returns {k_min - 1, nullopt} if
// none exists in the range.  k = 0 counts as shattered for nonempty f.
std::pair<int, std::optional<Matching>> max_shattered_size(const Family& f,
                                                           int k_min, int k_max);

// Split of a perfect matching of a maximal intersecting half-size family
// into its first k pairs and the remaining n/2 - k: reports which side is
// shattered.  At least one side always is.
struct DichotomySplit {
  Matching first_part;
  Matching second_part;
  bool first_shattered = false;
  bool second_shattered = false;
};
DichotomySplit dichotomy_check(const Family& f, const Matching& perfect, int k);

}  // namespace shatter
