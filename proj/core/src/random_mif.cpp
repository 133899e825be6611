#include "shatter/random_mif.hpp"

#include <atomic>
#include <cmath>

#include "shatter/io.hpp"
#include "shatter/numeric.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

namespace {

void check_even_ground(int n) {
  if (n < 4 || n > 28 || n % 2 != 0)
    throw std::invalid_argument("random family: n must be even, 4 <= n <= 28");
}

// One coin per complement pair, LSB-first within each 64-bit word.
void draw_members(int n, std::uint64_t seed, const std::vector<SetMask>& reps,
                  std::vector<SetMask>& out) {
  const SetMask ground = ground_mask(n);
  SplitMix64 rng(seed);
  std::uint64_t word = 0;
  out.clear();
  out.reserve(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (i % 64 == 0) word = rng.next();
    const bool flip = (word >> (i % 64)) & 1;
    out.push_back(flip ? (ground ^ reps[i]) : reps[i]);
  }
}

}  // namespace

std::vector<SetMask> half_size_pair_representatives(int n) {
  check_even_ground(n);
  // The smaller set of each complementary pair never contains element n-1,
  // and every (n/2)-subset of {0,...,n-2} represents exactly one pair.
  std::vector<SetMask> reps;
  reps.reserve(binomial(n, n / 2) / 2);
  for (SetMask m = ground_mask(n / 2); m != 0; m = next_same_popcount(m, n - 1))
    reps.push_back(m);
  return reps;
}

Family random_mif(const RandomFamilySpec& spec) {
  if (spec.generator_id != kGeneratorId)
    throw std::invalid_argument("random_mif: unknown generator_id");
  const std::vector<SetMask> reps = half_size_pair_representatives(spec.n);
  std::vector<SetMask> members;
  draw_members(spec.n, spec.seed, reps, members);
  return Family(spec.n, std::move(members));
}

double DyadicProbability::value() const {
  return std::exp2(-static_cast<double>(log2_denominator));
}

DyadicProbability not_carved_probability(int ell) {
  if (ell < 1) throw std::invalid_argument("not_carved_probability: ell must be >= 1");
  return DyadicProbability{binomial(2 * ell, ell)};
}

double shattered_probability(int k, int ell) {
  if (k < 1 || ell < 1)
    throw std::invalid_argument("shattered_probability: k and ell must be >= 1");
  // (1 - 2*2^-c)^(2^(k-1)) via exp/log1p to keep precision when 2^-c is tiny.
  const double c = static_cast<double>(binomial(2 * ell, ell));
  return std::exp(std::exp2(static_cast<double>(k - 1)) * std::log1p(-std::exp2(1.0 - c)));
}

double expected_shattered_count(int n, int k) {
  check_even_ground(n);
  const int ell = n / 2 - k;
  if (ell < 1) throw std::invalid_argument("expected_shattered_count: requires k <= n/2 - 1");
  return static_cast<double>(matching_count(n, k)) * shattered_probability(k, ell);
}

NotCarvedReport monte_carlo_not_carved(int n, int k, std::uint32_t snake_bits,
                                       std::uint64_t trials, std::uint64_t seed,
                                       int threads) {
  check_even_ground(n);
  const int ell = n / 2 - k;
  if (k < 1 || ell < 1)
    throw std::invalid_argument("monte_carlo_not_carved: requires 1 <= k <= n/2 - 1");
  if (trials == 0) throw std::invalid_argument("monte_carlo_not_carved: trials must be >= 1");
  if (snake_bits >> k) throw std::invalid_argument("monte_carlo_not_carved: snake_bits out of range");

  const SetMask support = ground_mask(2 * k);
  SetMask snake = 0;
  for (int i = 0; i < k; ++i)
    snake |= SetMask{1} << (2 * i + ((snake_bits >> i) & 1));

  const std::vector<SetMask> reps = half_size_pair_representatives(n);
  const int workers = resolve_worker_count(threads);
  std::vector<std::uint64_t> misses(static_cast<std::size_t>(workers), 0);
  // Trial seeds advance as seed + trial index, so the verdict per trial --
  // and the total -- cannot depend on how trials land on workers.
  parallel_ranges(trials, workers, [&](int w, std::uint64_t lo, std::uint64_t hi) {
    std::vector<SetMask> members;
    std::uint64_t local = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      draw_members(n, seed + t, reps, members);
      bool carved = false;
      for (SetMask m : members) {
        if ((m & support) == snake) {
          carved = true;
          break;
        }
      }
      if (!carved) ++local;
    }
    misses[static_cast<std::size_t>(w)] = local;
  });
  std::uint64_t not_carved = 0;
  for (std::uint64_t m : misses) not_carved += m;

  NotCarvedReport r;
  r.n = n;
  r.k = k;
  r.ell = ell;
  r.snake_bits = snake_bits;
  r.trials = trials;
  r.not_carved = not_carved;
  r.seed = seed;
  r.frequency = static_cast<double>(not_carved) / static_cast<double>(trials);
  r.exact_probability = not_carved_probability(ell).value();
  r.sigma = std::sqrt(r.exact_probability * (1.0 - r.exact_probability) /
                      static_cast<double>(trials));
  return r;
}

namespace {

// Exhaustive no-shattered-matching check for one family, fused with the
// canonical matching enumeration.  Matchings are ranked in enumeration
// order; the rank space is partitioned into contiguous slices by first pair
// so any worker count produces the identical witness array.
struct WitnessScan {
  int n, k;
  const std::vector<SetMask>& members;

  struct Task {
    int a, b;
    std::uint64_t rank_base;
  };
  std::vector<Task> tasks;
  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> shattered_found{false};
  std::vector<std::uint32_t> witnesses;

  WitnessScan(int n, int k, const std::vector<SetMask>& members)
      : n(n), k(k), members(members) {
    const std::uint64_t total = matching_count(n, k);
    if (total > (std::uint64_t{1} << 26))
      throw std::invalid_argument("refutation_witnesses: matching space too large to certify");
    if (2 * k > 26)
      throw std::invalid_argument("refutation_witnesses: snake table too large");
    witnesses.resize(total);
    std::uint64_t base = 0;
    for (int a = 0; a + 2 * k <= n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        tasks.push_back(Task{a, b, base});
        base += matching_count(n - a - 2, k - 1);
      }
    }
  }

  // Extends the partial matching below depth k; `avail` are elements > min_a
  // still free.  Returns false to abort (a shattered matching was found).
  bool extend(int depth, int min_a, SetMask used, std::uint64_t& rank,
              int pair_a[], int pair_b[], std::vector<std::uint32_t>& stamp,
              std::uint32_t& stamp_now) {
    if (depth == k) {
      return check_matching(used, rank++, pair_a, pair_b, stamp, stamp_now);
    }
    for (int a = min_a; a <= n - 2 * (k - depth); ++a) {
      if (used >> a & 1) continue;
      if (popcount(~used & ~ground_mask(a + 1) & ground_mask(n)) <
          2 * (k - depth) - 1)
        break;
      for (int b = a + 1; b < n; ++b) {
        if (used >> b & 1) continue;
        pair_a[depth] = a;
        pair_b[depth] = b;
        const SetMask bits = (SetMask{1} << a) | (SetMask{1} << b);
        if (!extend(depth + 1, a + 1, used | bits, rank, pair_a, pair_b, stamp,
                    stamp_now))
          return false;
      }
    }
    return true;
  }

  bool check_matching(SetMask support, std::uint64_t rank, const int pair_a[],
                      const int pair_b[], std::vector<std::uint32_t>& stamp,
                      std::uint32_t& stamp_now) {
    if (shattered_found.load(std::memory_order_relaxed)) return false;
    if (++stamp_now == 0) {  // stamp counter wrapped: reset the table
      std::fill(stamp.begin(), stamp.end(), 0);
      stamp_now = 1;
    }
    const std::uint32_t now = stamp_now;
    for (SetMask m : members)
      stamp[compress_bits(m, support)] = now;

    SetMask low[32], high[32];
    for (int i = 0; i < k; ++i) {
      low[i] = compress_bits(SetMask{1} << pair_a[i], support);
      high[i] = compress_bits(SetMask{1} << pair_b[i], support);
    }
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << k); ++c) {
      SetMask pattern = 0;
      for (int i = 0; i < k; ++i) pattern |= (c >> i & 1) ? high[i] : low[i];
      if (stamp[pattern] != now) {
        witnesses[rank] = c;
        return true;  // not shattered; move on
      }
    }
    shattered_found.store(true, std::memory_order_relaxed);
    return false;
  }

  void worker() {
    std::vector<std::uint32_t> stamp(std::size_t{1} << (2 * k), 0);
    std::uint32_t stamp_now = 0;
    int pair_a[32], pair_b[32];
    while (true) {
      const std::size_t t = next_task.fetch_add(1, std::memory_order_relaxed);
      if (t >= tasks.size()) return;
      if (shattered_found.load(std::memory_order_relaxed)) return;
      const Task& task = tasks[t];
      pair_a[0] = task.a;
      pair_b[0] = task.b;
      std::uint64_t rank = task.rank_base;
      const SetMask bits = (SetMask{1} << task.a) | (SetMask{1} << task.b);
      if (!extend(1, task.a + 1, bits, rank, pair_a, pair_b, stamp, stamp_now))
        return;
    }
  }
};

}  // namespace

std::optional<std::vector<std::uint32_t>> refutation_witnesses(const Family& f,
                                                               int k,
                                                               int threads) {
  if (k < 1 || 2 * k > f.ground_size())
    throw std::invalid_argument("refutation_witnesses: bad matching size");
  std::vector<SetMask> members(f.masks().begin(), f.masks().end());
  WitnessScan scan(f.ground_size(), k, members);
  run_workers(resolve_worker_count(threads), [&](int) { scan.worker(); });
  if (scan.shattered_found.load()) return std::nullopt;
  return std::move(scan.witnesses);
}

RefuteSearchOutcome search_counterexample_A(int n, std::uint64_t max_trials,
                                            std::uint64_t seed, int threads) {
  check_even_ground(n);
  const int k = n / 2 - 1;
  RefuteSearchOutcome out;
  for (std::uint64_t trial = 0; trial < max_trials; ++trial) {
    Family f = random_mif({n, seed + trial});
    ++out.trials_run;
    auto witnesses = refutation_witnesses(f, k, threads);
    if (!witnesses) continue;
    RefutationCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.seed = seed + trial;
    cert.family_hash = family_hash(f);
    cert.matchings_checked = witnesses->size();
    cert.witness_snakes = std::move(*witnesses);
    out.family = std::move(f);
    out.certificate = std::move(cert);
    return out;
  }
  return out;
}

}  // namespace shatter
