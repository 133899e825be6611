#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "shatter/family.hpp"
#include "shatter/matching.hpp"
#include "shatter/numeric.hpp"
#include "shatter/random_mif.hpp"
#include "test_util.hpp"

using namespace shatter;

namespace {

// Trace-equality check with no tables: is some member's trace on the
// matching support exactly this snake?
bool oracle_carved(const Family& f, const Matching& m, SetMask snake_bits) {
  const SetMask support = m.support().bits();
  for (SetMask mem : f.masks())
    if ((mem & support) == snake_bits) return true;
  return false;
}

std::optional<std::uint32_t> oracle_first_uncarved(const Family& f, const Matching& m) {
  const auto pairs = m.pairs();
  const int k = m.size();
  for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << k); ++choice) {
    SetMask snake = 0;
    for (int i = 0; i < k; ++i) {
      const auto [lo, hi] = pairs[i];
      snake |= SetMask{1} << ((choice >> i & 1) ? hi : lo);
    }
    if (!oracle_carved(f, m, snake)) return choice;
  }
  return std::nullopt;
}

bool oracle_shattered(const Family& f, const Matching& m) {
  return !oracle_first_uncarved(f, m).has_value();
}

}  // namespace

TEST_CASE("matching construction normalizes and validates") {
  const Matching m(6, {{3, 1}, {4, 5}});
  CHECK(m.size() == 2);
  CHECK(m.pairs()[0] == std::pair<int, int>{1, 3});
  CHECK(m.pairs()[1] == std::pair<int, int>{4, 5});
  CHECK(m.support().bits() == 0b111010);
  CHECK(m.to_string() == "1-3,4-5");

  CHECK_THROWS_AS(Matching(6, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching(6, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching(4, {{0, 4}}), std::invalid_argument);
}

TEST_CASE("canonical form sorts pairs by smaller endpoint") {
  const Matching m(8, {{6, 7}, {0, 2}, {1, 3}});
  const Matching c = m.canonical_form();
  CHECK(c.pairs()[0] == std::pair<int, int>{0, 2});
  CHECK(c.pairs()[1] == std::pair<int, int>{1, 3});
  CHECK(c.pairs()[2] == std::pair<int, int>{6, 7});
  CHECK(m == c);  // equality is canonical-order insensitive
}

TEST_CASE("prefix and suffix split a matching") {
  const Matching m(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(m.prefix(1).to_string() == "0-1");
  CHECK(m.suffix_from(1).to_string() == "2-3,4-5,6-7");
  CHECK(m.prefix(0).size() == 0);
  CHECK(m.suffix_from(4).size() == 0);
}

TEST_CASE("snakes enumerate all 2^k selections in choice order") {
  const Matching m(6, {{0, 1}, {2, 5}});
  const auto s = snakes(m);
  REQUIRE(s.size() == 4);
  CHECK(s[0].choice == 0);
  CHECK(s[0].elements.bits() == 0b000101);  // low endpoints 0, 2
  CHECK(s[1].elements.bits() == 0b000110);  // bit 0 set: take 1 from pair 0
  CHECK(s[2].elements.bits() == 0b100001);  // bit 1 set: take 5 from pair 1
  CHECK(s[3].elements.bits() == 0b100010);
}

TEST_CASE("enumeration counts match the closed formula") {
  const std::vector<std::pair<int, int>> cases = {
      {4, 1}, {4, 2}, {6, 1}, {6, 2}, {6, 3}, {8, 2}, {8, 3}, {10, 2}};
  for (const auto& [n, k] : cases) {
    std::uint64_t count = 0;
    enumerate_matchings(n, k, [&](std::uint64_t rank, const Matching& m) {
      CHECK(rank == count);
      CHECK(m.size() == k);
      ++count;
      return true;
    });
    CHECK(count == matching_count(n, k));
  }
}

TEST_CASE("enumeration is lexicographic in the flattened pair sequence") {
  std::vector<std::vector<int>> flat;
  enumerate_matchings(8, 3, [&](std::uint64_t, const Matching& m) {
    std::vector<int> seq;
    for (const auto& [a, b] : m.pairs()) {
      seq.push_back(a);
      seq.push_back(b);
    }
    flat.push_back(seq);
    return true;
  });
  CHECK(std::is_sorted(flat.begin(), flat.end()));
  CHECK(flat.front() == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(flat.back() == std::vector<int>{2, 7, 3, 6, 4, 5});
}

TEST_CASE("enumeration stops when the visitor declines") {
  int seen = 0;
  const bool completed = enumerate_matchings(8, 2, [&](std::uint64_t, const Matching&) {
    return ++seen < 5;
  });
  CHECK(seen == 5);
  CHECK(!completed);
}

TEST_CASE("matching_at_rank inverts the enumeration") {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 3}, {8, 2}, {10, 4}}) {
    std::vector<Matching> all;
    enumerate_matchings(n, k, [&](std::uint64_t, const Matching& m) {
      all.push_back(m);
      return true;
    });
    REQUIRE(all.size() == matching_count(n, k));
    SplitMix64 rng(99);
    for (int probe = 0; probe < 64; ++probe) {
      const auto rank = rng.below(all.size());
      CHECK(matching_at_rank(n, k, rank) == all[rank]);
    }
    CHECK(matching_at_rank(n, k, 0) == all.front());
    CHECK(matching_at_rank(n, k, all.size() - 1) == all.back());
  }
  CHECK_THROWS_AS(matching_at_rank(6, 2, 45), std::invalid_argument);
}

TEST_CASE("carving and shattering agree with the trace oracle") {
  SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const int n = 4 + 2 * static_cast<int>(rng.below(3));  // 4, 6, 8
    const Family f = random_family(rng, n, 40);
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2)));
    // Random matching: distinct elements drawn straight from the RNG.
    std::vector<int> elems(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) elems[static_cast<std::size_t>(e)] = e;
    for (int e = n - 1; e > 0; --e)
      std::swap(elems[static_cast<std::size_t>(e)],
                elems[rng.below(static_cast<std::uint64_t>(e) + 1)]);
    std::vector<std::pair<int, int>> pairs;
    for (int p = 0; p < k; ++p) pairs.emplace_back(elems[2 * p], elems[2 * p + 1]);
    const Matching m(n, pairs);

    CHECK(first_uncarved_snake(f, m) == oracle_first_uncarved(f, m));
    CHECK(is_shattered(f, m) == oracle_shattered(f, m));
    for (const Snake& s : snakes(m))
      CHECK(is_carved(f, m, s) == oracle_carved(f, m, s.elements.bits()));
  }
}

TEST_CASE("max shattered size scans the range from the top") {
  SplitMix64 rng(23);
  for (int seed = 0; seed < 6; ++seed) {
    const Family f = random_mif({6, static_cast<std::uint64_t>(seed)});
    const auto [best, witness] = max_shattered_size(f, 1, 3);
    // Independent recomputation.
    int expect = 0;
    std::optional<Matching> expect_witness;
    for (int k = 3; k >= 1 && expect == 0; --k) {
      enumerate_matchings(6, k, [&](std::uint64_t, const Matching& m) {
        if (!oracle_shattered(f, m)) return true;
        expect = k;
        expect_witness = m;
        return false;
      });
    }
    CHECK(best == expect);
    if (expect_witness) {
      REQUIRE(witness.has_value());
      CHECK(*witness == *expect_witness);
    } else {
      CHECK(!witness.has_value());
      CHECK(best == 0);  // k_min - 1
    }
  }

  CHECK(max_shattered_size(Family(6), 1, 2).first == 0);
  const auto [k0, w0] = max_shattered_size(Family(6, {0b1}), 0, 0);
  CHECK(k0 == 0);
  REQUIRE(w0.has_value());
  CHECK(w0->size() == 0);
}

TEST_CASE("dichotomy check reports a shattered side") {
  SplitMix64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Family f = random_mif({8, rng.next()});
    std::vector<int> elems = {0, 1, 2, 3, 4, 5, 6, 7};
    for (int e = 7; e > 0; --e)
      std::swap(elems[static_cast<std::size_t>(e)],
                elems[rng.below(static_cast<std::uint64_t>(e) + 1)]);
    std::vector<std::pair<int, int>> pairs;
    for (int p = 0; p < 4; ++p) pairs.emplace_back(elems[2 * p], elems[2 * p + 1]);
    const Matching perfect(8, pairs);
    const int k = 1 + static_cast<int>(rng.below(3));
    const DichotomySplit split = dichotomy_check(f, perfect, k);
    CHECK(split.first_part.size() == k);
    CHECK(split.second_part.size() == 4 - k);
    CHECK(split.first_shattered == oracle_shattered(f, split.first_part));
    CHECK(split.second_shattered == oracle_shattered(f, split.second_part));
    CHECK((split.first_shattered || split.second_shattered));
  }
  CHECK_THROWS_AS(dichotomy_check(Family(8), Matching(8, {{0, 1}}), 0),
                  std::invalid_argument);
}
