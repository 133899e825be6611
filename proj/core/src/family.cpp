#include "shatter/family.hpp"

#include <algorithm>
#include <bit>

#include "shatter/numeric.hpp"

namespace shatter {

Family::Family(int ground_size, std::vector<SetMask> members)
    : n_(check_ground(ground_size)), sets_(std::move(members)) {
  const SetMask ground = ground_mask(n_);
  for (SetMask m : sets_)
    if (m & ~ground) throw std::invalid_argument("Family: member outside ground set");
  std::sort(sets_.begin(), sets_.end());
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

Family Family::from_sets(int ground_size, const std::vector<ElementSet>& sets) {
  std::vector<SetMask> masks;
  masks.reserve(sets.size());
  for (const ElementSet& s : sets) {
    if (s.ground_size() != ground_size)
      throw std::invalid_argument("Family: mixed ground sizes");
    masks.push_back(s.bits());
  }
  return Family(ground_size, std::move(masks));
}

bool Family::contains(SetMask m) const {
  return std::binary_search(sets_.begin(), sets_.end(), m);
}

Family trace_family(const Family& f, const ElementSet& window) {
  if (window.ground_size() != f.ground_size())
    throw std::invalid_argument("trace_family: window ground size mismatch");
  const SetMask w = window.bits();
  std::vector<SetMask> traces;
  traces.reserve(f.size());
  for (SetMask m : f.masks()) traces.push_back(compress_bits(m, w));
  return Family(window.size(), std::move(traces));
}

Family downward_closure(const Family& f) {
  // Walk down one element at a time; the seen-set makes each subset expand
  // only once.
  std::vector<SetMask> out;
  std::vector<SetMask> stack(f.masks().begin(), f.masks().end());
  std::vector<bool> seen;  // indexed by mask when n is small, else fall back
  const int n = f.ground_size();
  if (n <= 24) {
    seen.assign(SetMask{1} << n, false);
    for (SetMask m : stack) seen[m] = true;
    while (!stack.empty()) {
      SetMask m = stack.back();
      stack.pop_back();
      out.push_back(m);
      for (SetMask rest = m; rest != 0; rest &= rest - 1) {
        SetMask child = m ^ (rest & -rest);
        if (!seen[child]) {
          seen[child] = true;
          stack.push_back(child);
        }
      }
    }
  } else {
    // Large ground sets: rely on sorted-merge dedup per level instead of a
    // table.  Closure sizes are expected to stay small at this scale.
    std::vector<SetMask> level(f.masks().begin(), f.masks().end());
    out = level;
    while (!level.empty()) {
      std::vector<SetMask> next;
      for (SetMask m : level)
        for (SetMask rest = m; rest != 0; rest &= rest - 1)
          next.push_back(m ^ (rest & -rest));
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      std::vector<SetMask> fresh;
      std::vector<SetMask> sorted_out = out;
      std::sort(sorted_out.begin(), sorted_out.end());
      for (SetMask m : next)
        if (!std::binary_search(sorted_out.begin(), sorted_out.end(), m))
          fresh.push_back(m);
      out.insert(out.end(), fresh.begin(), fresh.end());
      level = std::move(fresh);
    }
  }
  return Family(n, std::move(out));
}

bool is_intersecting(const Family& f) {
  const auto masks = f.masks();
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if ((masks[i] & masks[j]) == 0) return false;
  return true;
}

bool is_maximal_intersecting_halfsize(const Family& f) {
  const int n = f.ground_size();
  if (n % 2 != 0)
    throw std::invalid_argument("is_maximal_intersecting_halfsize: odd ground size");
  const int half = n / 2;
  if (f.size() != binomial(n, half) / 2) return false;
  const SetMask ground = ground_mask(n);
  for (SetMask m : f.masks()) {
    if (popcount(m) != half) return false;
    if (f.contains(ground ^ m)) return false;
  }
  // One member from every complementary pair of half-size sets: two members
  // are disjoint only if complementary, so the family is intersecting, and
  // adding any missing half-size set would pair it with its complement.
  return true;
}

bool shatters(const Family& f, const ElementSet& target) {
  if (target.ground_size() != f.ground_size())
    throw std::invalid_argument("shatters: target ground size mismatch");
  const int d = target.size();
  if (d > 62) throw std::invalid_argument("shatters: target too large");
  const SetMask w = target.bits();
  const std::uint64_t want = SetMask{1} << d;
  if (f.size() < want) return false;
  std::vector<bool> seen(want, false);
  std::uint64_t distinct = 0;
  for (SetMask m : f.masks()) {
    SetMask t = compress_bits(m, w);
    if (!seen[t]) {
      seen[t] = true;
      if (++distinct == want) return true;
    }
  }
  return false;
}

int vc_dim(const Family& f) {
  if (f.empty()) throw std::invalid_argument("vc_dim: empty family");
  const int n = f.ground_size();
  const int cap = std::min<int>(n, std::bit_width(f.size()) - 1);
  int best = 0;
  for (int d = 1; d <= cap; ++d) {
    bool found = false;
    for (SetMask t = ground_mask(d); t != 0; t = next_same_popcount(t, n)) {
      if (shatters(f, ElementSet(n, t))) {
        found = true;
        break;
      }
    }
    if (!found) break;
    best = d;
  }
  return best;
}

}  // namespace shatter
