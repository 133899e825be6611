#pragma once

#include <span>
#include <vector>

#include "shatter/sets.hpp"

namespace shatter {

// An immutable set family over a fixed ground set.  Members are kept sorted
// by unsigned mask value and deduplicated, so equal families compare equal
// and serialization order is canonical.
class Family {
 public:
  explicit Family(int ground_size) : n_(check_ground(ground_size)) {}

  Family(int ground_size, std::vector<SetMask> members);

  static Family from_sets(int ground_size, const std::vector<ElementSet>& sets);

  int ground_size() const { return n_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  std::span<const SetMask> masks() const { return sets_; }
  ElementSet member(std::size_t i) const { return {n_, sets_[i]}; }
  bool contains(SetMask m) const;
  bool contains(const ElementSet& s) const { return contains(s.bits()); }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  static int check_ground(int n) {
    if (n < 0 || n > kMaxGroundSize)
      throw std::invalid_argument("Family: ground size must be in [0, 64]");
    return n;
  }

  int n_;
  std::vector<SetMask> sets_;  // ascending, unique
};

// Restriction of every member to `window`, re-indexed onto {0, ..., |window|-1}
// by ascending element order; duplicate traces collapse.
Family trace_family(const Family& f, const ElementSet& window);

// Smallest downward-closed family containing f (always includes the empty
// set when f is nonempty).
Family downward_closure(const Family& f);

// Every two members intersect.  Families with <= 1 member count as
// intersecting; any family containing the empty set alongside another
// member does not.
bool is_intersecting(const Family& f);

// f has even ground size n, all members of size n/2, and exactly one of
// every complementary pair -- i.e. C(n, n/2) / 2 members, no two of them
// complementary.  Such a family is automatically intersecting and maximal.
// Throws std::invalid_argument for odd n.
bool is_maximal_intersecting_halfsize(const Family& f);

// f shatters `target`: every subset of target occurs as trace & target.
bool shatters(const Family& f, const ElementSet& target);

// Largest d such that some d-subset of the ground set is shattered.
// The empty set is shattered by any nonempty family, so the result is >= 0;
// throws std::invalid_argument for an empty family.  Sauer-Shelah caps the
// search at log2(|f|).
int vc_dim(const Family& f);

}  // namespace shatter
