#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "shatter/family.hpp"
#include "shatter/matching.hpp"

namespace shatter {

// The one pseudorandom stream used anywhere in the library.  Outputs are
// labelled with this id so certificates stay reproducible across builds.
inline constexpr std::string_view kGeneratorId = "splitmix64-v1";

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound), bound >= 1; rejection-free Lemire reduction is
  // overkill here -- modulo bias is irrelevant at our bounds vs 2^64.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

struct RandomFamilySpec {
  int n = 0;
  std::uint64_t seed = 0;
  std::string generator_id = std::string(kGeneratorId);
};

// Ascending list of the lexicographically smaller members of the complement
// pairs of half-size sets: exactly the n/2-subsets avoiding element n-1.
std::vector<SetMask> half_size_pair_representatives(int n);

// The random maximal intersecting family: one fair coin per complement pair
// of half-size sets, pairs visited in ascending representative order, coin
// bits consumed LSB-first from successive SplitMix64 words (bit set selects
// the complement of the representative).
Family random_mif(const RandomFamilySpec& spec);

// 2^{-C(2l, l)}: the chance that a fixed snake of a size-(n/2 - l) matching
// is not carved out of the random family.  Exact dyadic rational.
struct DyadicProbability {
  std::uint64_t log2_denominator = 0;  // value is 2^-log2_denominator
  double value() const;
};
DyadicProbability not_carved_probability(int ell);

// Exact probability that a fixed size-k matching is shattered:
// (1 - 2*2^{-C(2l,l)})^(2^{k-1}).
double shattered_probability(int k, int ell);

// matching_count(n, k) * shattered_probability(k, n/2 - k); the union-bound
// expectation of the number of shattered size-k matchings.
double expected_shattered_count(int n, int k);

struct NotCarvedReport {
  int n = 0, k = 0, ell = 0;
  std::uint32_t snake_bits = 0;
  std::uint64_t trials = 0;
  std::uint64_t not_carved = 0;
  std::uint64_t seed = 0;
  std::string generator_id = std::string(kGeneratorId);
  double frequency = 0.0;
  double exact_probability = 0.0;
  double sigma = 0.0;  // binomial std dev of the frequency estimator
};

// Empirical check of the not-carved probability: fixes the matching
// (0,1),(2,3),...,(2k-2,2k-1) and the snake selecting element 2i+1 of pair i
// whenever bit i of snake_bits is set; draws `trials` families from seeds
// seed, seed+1, ... and counts how often the snake fails to be carved.
NotCarvedReport monte_carlo_not_carved(int n, int k, std::uint32_t snake_bits,
                                       std::uint64_t trials, std::uint64_t seed,
                                       int threads = 1);

// Evidence that one family has no shattered matching of size k: for every
// size-k matching, in canonical enumeration order, the least snake-choice
// value that is not carved out.
struct RefutationCertificate {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;  // the seed whose random_mif equals `family_hash`
  std::string generator_id = std::string(kGeneratorId);
  std::uint64_t family_hash = 0;
  std::uint64_t matchings_checked = 0;
  std::vector<std::uint32_t> witness_snakes;  // indexed by matching rank
};

struct RefuteSearchOutcome {
  std::uint64_t trials_run = 0;
  std::optional<Family> family;
  std::optional<RefutationCertificate> certificate;
  bool found() const { return certificate.has_value(); }
};

// For every size-k matching the least not-carved snake choice, or nullopt as
// soon as some matching turns out shattered.  Workers split the canonical
// matching range by first pair, so the result is worker-count independent.
std::optional<std::vector<std::uint32_t>> refutation_witnesses(const Family& f,
                                                               int k,
                                                               int threads = 1);

// Draws random_mif families from seeds seed, seed+1, ... and returns the
// first (with full certificate) admitting no shattered matching of size
// n/2 - 1; absence after max_trials is a legal outcome, not an error.
RefuteSearchOutcome search_counterexample_A(int n, std::uint64_t max_trials,
                                            std::uint64_t seed, int threads = 1);

}  // namespace shatter
