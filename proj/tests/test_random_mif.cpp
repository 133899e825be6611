#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "shatter/family.hpp"
#include "shatter/io.hpp"
#include "shatter/matching.hpp"
#include "shatter/numeric.hpp"
#include "shatter/random_mif.hpp"

using namespace shatter;

namespace {

// Oracle copy of the per-matching witness scan, with no shared tables.
std::optional<std::uint32_t> oracle_first_uncarved(const Family& f, const Matching& m) {
  const SetMask support = m.support().bits();
  const auto pairs = m.pairs();
  for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << m.size()); ++choice) {
    SetMask snake = 0;
    for (int i = 0; i < m.size(); ++i) {
      const auto [lo, hi] = pairs[i];
      snake |= SetMask{1} << ((choice >> i & 1) ? hi : lo);
    }
    bool carved = false;
    for (SetMask mem : f.masks())
      if ((mem & support) == snake) {
        carved = true;
        break;
      }
    if (!carved) return choice;
  }
  return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> oracle_witnesses(const Family& f, int k) {
  std::vector<std::uint32_t> out;
  bool shattered = false;
  enumerate_matchings(f.ground_size(), k, [&](std::uint64_t, const Matching& m) {
    const auto w = oracle_first_uncarved(f, m);
    if (!w) {
      shattered = true;
      return false;
    }
    out.push_back(*w);
    return true;
  });
  if (shattered) return std::nullopt;
  return out;
}

}  // namespace

TEST_CASE("pair representatives avoid the top element and come sorted") {
  const auto reps = half_size_pair_representatives(6);
  REQUIRE(reps.size() == 10);  // C(6,3)/2
  CHECK(std::is_sorted(reps.begin(), reps.end()));
  for (SetMask r : reps) {
    CHECK(popcount(r) == 3);
    CHECK((r & (SetMask{1} << 5)) == 0);
  }
  CHECK(half_size_pair_representatives(4).size() == 3);
}

TEST_CASE("random families are reproducible and valid") {
  for (int n : {4, 6, 8, 10}) {
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
      const Family a = random_mif({n, seed});
      const Family b = random_mif({n, seed});
      CHECK(a == b);
      CHECK(a.size() == binomial(n, n / 2) / 2);
      CHECK(is_maximal_intersecting_halfsize(a));
    }
  }
  // Different seeds almost surely give different families.
  CHECK(random_mif({8, 1}) != random_mif({8, 2}));
}

TEST_CASE("random family rejects bad specs") {
  CHECK_THROWS_AS(random_mif({5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(random_mif({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(random_mif({30, 0}), std::invalid_argument);
  RandomFamilySpec spec{6, 0};
  spec.generator_id = "something-else";
  CHECK_THROWS_AS(random_mif(spec), std::invalid_argument);
}

TEST_CASE("coin marginals and one joint are unbiased (4 sigma)") {
  const auto reps = half_size_pair_representatives(6);
  const int trials = 4000;
  std::vector<int> kept(reps.size(), 0);
  int joint00 = 0;
  for (int s = 0; s < trials; ++s) {
    const Family f = random_mif({6, static_cast<std::uint64_t>(s)});
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (f.contains(reps[i])) ++kept[i];
    if (f.contains(reps[0]) && f.contains(reps[1])) ++joint00;
  }
  const double sigma_marginal = std::sqrt(trials * 0.25);
  for (std::size_t i = 0; i < reps.size(); ++i)
    CHECK(std::abs(kept[i] - trials / 2.0) < 4 * sigma_marginal);
  const double sigma_joint = std::sqrt(trials * 0.25 * 0.75);
  CHECK(std::abs(joint00 - trials / 4.0) < 4 * sigma_joint);
}

TEST_CASE("not-carved probability is the exact dyadic value") {
  CHECK(not_carved_probability(1).log2_denominator == 2);
  CHECK(not_carved_probability(1).value() == 0.25);
  CHECK(not_carved_probability(2).log2_denominator == 6);
  CHECK(not_carved_probability(2).value() == doctest::Approx(1.0 / 64));
  CHECK(not_carved_probability(3).log2_denominator == 20);
  CHECK_THROWS_AS(not_carved_probability(0), std::invalid_argument);
}

TEST_CASE("shattered probability matches the closed form") {
  for (int k = 1; k <= 8; ++k) {
    for (int ell = 1; ell <= 4; ++ell) {
      const double base = 1.0 - 2.0 * std::pow(2.0, -static_cast<double>(binomial(2 * ell, ell)));
      const double direct = std::pow(base, std::pow(2.0, k - 1));
      CHECK(shattered_probability(k, ell) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  // Size-6 matchings in a 14-element ground set: the expected count of
  // shattered ones is about 2.2e-4, i.e. almost every draw refutes.
  const double expected = expected_shattered_count(14, 6);
  CHECK(expected == doctest::Approx(945945.0 * std::pow(0.5, 32)).epsilon(1e-9));
  CHECK(expected > 2.0e-4);
  CHECK(expected < 2.5e-4);
}

TEST_CASE("monte carlo frequency sits near the exact probability") {
  const NotCarvedReport report = monte_carlo_not_carved(6, 2, 0, 20000, 9, 1);
  CHECK(report.n == 6);
  CHECK(report.k == 2);
  CHECK(report.ell == 1);
  CHECK(report.trials == 20000);
  CHECK(report.exact_probability == 0.25);
  CHECK(report.generator_id == kGeneratorId);
  CHECK(std::abs(report.frequency - 0.25) < 4 * report.sigma);
  CHECK(report.sigma == doctest::Approx(std::sqrt(0.25 * 0.75 / 20000)));

  const NotCarvedReport again = monte_carlo_not_carved(6, 2, 0, 20000, 9, 3);
  CHECK(again.not_carved == report.not_carved);  // worker-count independent

  const NotCarvedReport other_snake = monte_carlo_not_carved(6, 2, 3, 20000, 9, 1);
  CHECK(std::abs(other_snake.frequency - 0.25) < 4 * other_snake.sigma);

  CHECK_THROWS_AS(monte_carlo_not_carved(6, 2, 0, 0, 9, 1), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_not_carved(6, 3, 0, 10, 9, 1), std::invalid_argument);
}

TEST_CASE("refutation witnesses match the oracle at n = 6") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Family f = random_mif({6, seed});
    for (int threads : {1, 2}) {
      CHECK(refutation_witnesses(f, 2, threads) == oracle_witnesses(f, 2));
      CHECK(refutation_witnesses(f, 3, threads) == oracle_witnesses(f, 3));
    }
    // Perfect matchings are never shattered: snakes come in complement
    // pairs and the family keeps exactly one of each.
    CHECK(refutation_witnesses(f, 3).has_value());
  }
  // Degenerate families exercise both outcomes deterministically.
  const Family empty(6);
  const auto all_zero = refutation_witnesses(empty, 2);
  REQUIRE(all_zero.has_value());
  CHECK(all_zero->size() == 45);
  CHECK(std::all_of(all_zero->begin(), all_zero->end(),
                    [](std::uint32_t w) { return w == 0; }));
  std::vector<SetMask> everything;
  for (SetMask m = 0; m < 64; ++m) everything.push_back(m);
  CHECK(!refutation_witnesses(Family(6, everything), 2).has_value());
}

TEST_CASE("counterexample search reproduces the manual trial loop") {
  const std::uint64_t seed = 3;
  const RefuteSearchOutcome outcome = search_counterexample_A(6, 4, seed, 2);

  std::uint64_t trials = 0;
  std::optional<Family> expect_family;
  std::optional<std::vector<std::uint32_t>> expect_witnesses;
  for (std::uint64_t t = 0; t < 4; ++t) {
    ++trials;
    const Family f = random_mif({6, seed + t});
    auto w = oracle_witnesses(f, 2);
    if (w) {
      expect_family = f;
      expect_witnesses = std::move(w);
      break;
    }
  }
  CHECK(outcome.trials_run == trials);
  CHECK(outcome.found() == expect_family.has_value());
  if (expect_family) {
    CHECK(*outcome.family == *expect_family);
    const RefutationCertificate& cert = *outcome.certificate;
    CHECK(cert.n == 6);
    CHECK(cert.k == 2);
    CHECK(cert.seed == seed + trials - 1);
    CHECK(cert.generator_id == kGeneratorId);
    CHECK(cert.family_hash == family_hash(*expect_family));
    CHECK(cert.matchings_checked == 45);
    CHECK(cert.witness_snakes == *expect_witnesses);
  }
}
