#pragma once

#include <vector>

#include "shatter/family.hpp"
#include "shatter/random_mif.hpp"

// A family of up to max_members uniform-random subsets of {0..n-1}
// (duplicates collapse, so the result can be smaller).
inline shatter::Family random_family(shatter::SplitMix64& rng, int n, int max_members) {
  const auto count = rng.below(static_cast<std::uint64_t>(max_members) + 1);
  std::vector<shatter::SetMask> members;
  for (std::uint64_t i = 0; i < count; ++i)
    members.push_back(rng.next() & shatter::ground_mask(n));
  return shatter::Family(n, std::move(members));
}
