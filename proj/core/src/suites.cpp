#include "shatter/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "shatter/counterexamples.hpp"
#include "shatter/hypergraph.hpp"
#include "shatter/io.hpp"
#include "shatter/numeric.hpp"
#include "shatter/random_mif.hpp"
#include "shatter/separability.hpp"

namespace shatter {

using nlohmann::json;

namespace {

// --- conjA-small -----------------------------------------------------------
// Every maximal intersecting half-size family at n = 4 and n = 6 has a
// shattered matching of size n/2 - 1; all 2^(#pairs) families enumerated.

bool has_shattered_matching(const Family& f, int k) {
  bool found = false;
  enumerate_matchings(f.ground_size(), k, [&](std::uint64_t, const Matching& m) {
    if (is_shattered(f, m)) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

SuiteResult suite_conj_a_small(const SuiteOptions&) {
  json details;
  bool passed = true;
  for (int n : {4, 6}) {
    const std::vector<SetMask> reps = half_size_pair_representatives(n);
    const SetMask ground = ground_mask(n);
    const std::uint64_t total = std::uint64_t{1} << reps.size();
    std::uint64_t failures = 0;
    for (std::uint64_t choice = 0; choice < total; ++choice) {
      std::vector<SetMask> members;
      members.reserve(reps.size());
      for (std::size_t i = 0; i < reps.size(); ++i)
        members.push_back((choice >> i & 1) ? (ground ^ reps[i]) : reps[i]);
      Family f(n, std::move(members));
      if (!has_shattered_matching(f, n / 2 - 1)) ++failures;
    }
    details["n" + std::to_string(n)] = {{"families", total}, {"failures", failures}};
    passed = passed && failures == 0;
  }
  return {"conjA-small", passed, details.dump()};
}

// --- refute-a-14 ------------------------------------------------------------
// The random search refutes the full-size-matching conjecture at n = 14 and
// its certificate withstands a 1,000-witness spot check.

bool spot_check_certificate(const Family& f, const RefutationCertificate& cert,
                            std::uint64_t samples, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t rank = rng.below(cert.witness_snakes.size());
    const Matching m = matching_at_rank(cert.n, cert.k, rank);
    const std::uint32_t bits = cert.witness_snakes[rank];
    SetMask snake = 0;
    for (int p = 0; p < cert.k; ++p) {
      const auto& [a, b] = m.pairs()[static_cast<std::size_t>(p)];
      snake |= SetMask{1} << ((bits >> p & 1) ? b : a);
    }
    if (is_carved(f, m, Snake{bits, ElementSet(cert.n, snake)})) return false;
  }
  return true;
}

SuiteResult suite_refute_a_14(const SuiteOptions& opts) {
  const RefuteSearchOutcome out = search_counterexample_A(14, 10, opts.seed, opts.threads);
  json details{{"n", 14},
               {"k", 6},
               {"seed", opts.seed},
               {"generator_id", std::string(kGeneratorId)},
               {"trials_run", out.trials_run},
               {"found", out.found()}};
  if (!out.found()) return {"refute-a-14", false, details.dump()};

  const RefutationCertificate& cert = *out.certificate;
  details["family_seed"] = cert.seed;
  details["family_hash"] = cert.family_hash;
  details["matchings_checked"] = cert.matchings_checked;
  const bool count_ok = cert.matchings_checked == matching_count(14, 6);
  const bool family_ok = is_maximal_intersecting_halfsize(*out.family);
  const bool spot_ok =
      spot_check_certificate(*out.family, cert, 1000, opts.seed ^ 0x9e3779b97f4a7c15ULL);
  details["matching_count_ok"] = count_ok;
  details["family_ok"] = family_ok;
  details["spot_check_ok"] = spot_ok;
  details["spot_checks"] = 1000;
  return {"refute-a-14", count_ok && family_ok && spot_ok, details.dump()};
}

// --- dichotomy --------------------------------------------------------------
// Split any perfect matching of a random maximal family: one side is always
// shattered.

SuiteResult suite_dichotomy(const SuiteOptions& opts) {
  const int ns[3] = {8, 10, 12};
  std::uint64_t checked = 0, failures = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const int n = ns[i % 3];
    Family f = random_mif({n, opts.seed + i});
    SplitMix64 rng((opts.seed + i) * 2 + 1);
    // Random perfect matching: pair up a shuffled element order.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) perm[static_cast<std::size_t>(e)] = e;
    for (int e = n - 1; e > 0; --e)
      std::swap(perm[static_cast<std::size_t>(e)],
                perm[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(e) + 1))]);
    std::vector<std::pair<int, int>> pairs;
    for (int p = 0; p < n / 2; ++p)
      pairs.emplace_back(perm[static_cast<std::size_t>(2 * p)], perm[static_cast<std::size_t>(2 * p + 1)]);
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2 - 1)));
    const DichotomySplit split = dichotomy_check(f, Matching(n, std::move(pairs)), k);
    ++checked;
    if (!split.first_shattered && !split.second_shattered) ++failures;
  }
  json details{{"triples", checked}, {"failures", failures}, {"seed", opts.seed}};
  return {"dichotomy", failures == 0, details.dump()};
}

// --- claim2 -----------------------------------------------------------------
// Monte Carlo agreement with the exact not-carved probability.

json not_carved_json(const NotCarvedReport& r) {
  return json{{"n", r.n},
              {"k", r.k},
              {"ell", r.ell},
              {"snake_bits", r.snake_bits},
              {"trials", r.trials},
              {"not_carved", r.not_carved},
              {"frequency", r.frequency},
              {"exact_probability", r.exact_probability},
              {"sigma", r.sigma},
              {"seed", r.seed},
              {"generator_id", r.generator_id}};
}

SuiteResult suite_claim2(const SuiteOptions& opts) {
  const NotCarvedReport r1 = monte_carlo_not_carved(10, 4, 0, 100000, opts.seed, opts.threads);
  const NotCarvedReport r2 = monte_carlo_not_carved(10, 3, 0, 1000000, opts.seed, opts.threads);
  const bool ok1 = std::fabs(r1.frequency - r1.exact_probability) <= 3.0 * r1.sigma;
  const bool ok2 = std::fabs(r2.frequency - r2.exact_probability) <= 3.0 * r2.sigma;
  json details{{"ell1", not_carved_json(r1)},
               {"ell2", not_carved_json(r2)},
               {"ell1_within_3_sigma", ok1},
               {"ell2_within_3_sigma", ok2}};
  return {"claim2", ok1 && ok2, details.dump()};
}

// --- thm5-small -------------------------------------------------------------
// Exhaustive separability thresholds at n = 4 (and n = 5 when allowed), plus
// the (4,10) -> (3,7) arrow.

SuiteResult suite_thm5_small(const SuiteOptions& opts) {
  json details;
  bool passed = true;
  const int s42 = s_exact_small(4, 2, false, opts.threads);
  const int s43 = s_exact_small(4, 3, false, opts.threads);
  const bool arrow = arrow_holds(4, 10, 3, 7);
  details["s_4_2"] = s42;
  details["s_4_3"] = s43;
  details["arrow_4_10_3_7"] = arrow;
  passed = s42 == 6 && s43 == 10 && arrow;
  if (opts.allow_expensive) {
    const int s52 = s_exact_small(5, 2, true, opts.threads);
    const int s53 = s_exact_small(5, 3, true, opts.threads);
    details["s_5_2"] = s52;
    details["s_5_3"] = s53;
    passed = passed && s52 == 7 && s53 == 13;
  } else {
    details["n5"] = "skipped (needs allow_expensive)";
  }
  return {"thm5-small", passed, details.dump()};
}

// --- lemma7 -----------------------------------------------------------------
// Chain products over several partition shapes: exact product size, never
// (parts+1)-separable.

std::vector<std::vector<int>> partition_shapes(int n, int parts) {
  std::vector<std::vector<int>> shapes{balanced_part_sizes(n, parts)};
  if (parts >= 2 && n > parts) {
    // Heavy first, heavy last, and halves-at-the-ends.
    std::vector<int> heavy_first(static_cast<std::size_t>(parts), 1);
    heavy_first[0] = n - parts + 1;
    std::vector<int> heavy_last(static_cast<std::size_t>(parts), 1);
    heavy_last[static_cast<std::size_t>(parts - 1)] = n - parts + 1;
    std::vector<int> split(static_cast<std::size_t>(parts), 1);
    split[0] = (n - parts + 2) / 2;
    split[static_cast<std::size_t>(parts - 1)] = (n - parts + 2) - split[0];
    shapes.push_back(heavy_first);
    shapes.push_back(heavy_last);
    shapes.push_back(split);
  }
  std::sort(shapes.begin(), shapes.end());
  shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());
  return shapes;
}

SuiteResult suite_lemma7(const SuiteOptions&) {
  std::uint64_t instances = 0, failures = 0;
  for (int n = 2; n <= 24; ++n) {
    for (int parts = 1; parts <= std::min(6, n); ++parts) {
      for (const auto& shape : partition_shapes(n, parts)) {
        const Family f = chain_product_family(shape);
        std::uint64_t expect = 1;
        for (int s : shape) expect *= static_cast<std::uint64_t>(s) + 1;
        const int t = parts + 1;
        const bool size_ok = f.size() == expect;
        const bool not_separable = t > n || !is_t_separable(f, t).has_value();
        ++instances;
        if (!size_ok || !not_separable) ++failures;
      }
    }
  }
  json details{{"instances", instances}, {"failures", failures}};
  return {"lemma7", failures == 0, details.dump()};
}

// --- refute-b-15 ------------------------------------------------------------
// The odd-n construction on top of a refute-a family defeats the
// perfect-matching conjecture at n = 15; the n = 5 star still satisfies it.

bool exactly_one_per_complement_pair(const Family& f) {
  const int n = f.ground_size();
  const int k = (n - 1) / 2;
  const SetMask ground = ground_mask(n);
  for (SetMask y = ground_mask(k); y != 0; y = next_same_popcount(y, n))
    if (f.contains(y) == f.contains(ground ^ y)) return false;
  return true;
}

SuiteResult suite_refute_b_15(const SuiteOptions& opts) {
  json details{{"seed", opts.seed}};
  const RefuteSearchOutcome base = search_counterexample_A(14, 10, opts.seed, opts.threads);
  details["base_found"] = base.found();
  if (!base.found()) return {"refute-b-15", false, details.dump()};

  const OddCounterexample c = build_odd_counterexample(*base.family, 15);
  bool sizes_ok = true;
  for (SetMask m : c.family.masks()) {
    const int s = popcount(m);
    if (s != 7 && s != 8) sizes_ok = false;
  }
  const bool size_ok = c.family.size() == binomial(15, 7);
  const bool intersecting_ok = is_intersecting(c.family);
  const bool maximal_ok = exactly_one_per_complement_pair(c.family);
  const auto witness = verify_conjecture_B(c, opts.threads);
  details["family_size"] = c.family.size();
  details["sizes_ok"] = sizes_ok;
  details["intersecting"] = intersecting_ok;
  details["one_per_pair"] = maximal_ok;
  details["ys_checked"] = 15;
  details["matchings_per_y"] = matching_count(14, 7);
  details["witness_found"] = witness.has_value();

  // Sanity inverse: at n = 5 the conjecture still holds.
  const Family star = Family(4, {0b0011, 0b0101, 0b1001});
  const auto small = verify_conjecture_B(build_odd_counterexample(star, 5), opts.threads);
  details["n5_witness_found"] = small.has_value();
  if (small) {
    details["n5_witness_y"] = small->y;
    details["n5_witness_matching"] = small->matching.to_string();
  }

  const bool passed = size_ok && sizes_ok && intersecting_ok && maximal_ok &&
                      !witness.has_value() && small.has_value();
  return {"refute-b-15", passed, details.dump()};
}

// --- thm6prime --------------------------------------------------------------
// Random downward-closed families rich at level t-1 always yield a trace-
// dense T that witnesses t-separability; balanced partite graphs achieve
// g_reference without triangles.

SuiteResult suite_thm6prime(const SuiteOptions& opts) {
  SplitMix64 rng(opts.seed);
  std::uint64_t failures = 0;
  const std::uint64_t cases = 1000;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const int t = 4 + static_cast<int>(rng.below(2));
    const int n = t + 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(12 - t - 1)));
    const std::uint64_t cap = binomial(n, t - 1);
    const std::uint64_t need = g_reference(n, t - 1) + 1;

    // A uniform random (t-1)-level of some size in [need, cap].
    std::vector<SetMask> all_edges;
    for (SetMask e = ground_mask(t - 1); e != 0; e = next_same_popcount(e, n))
      all_edges.push_back(e);
    for (std::size_t j = all_edges.size(); j > 1; --j)
      std::swap(all_edges[j - 1], all_edges[rng.below(j)]);
    const std::uint64_t take = need + rng.below(cap - need + 1);
    all_edges.resize(take);

    const Family f = downward_closure(Family(n, std::move(all_edges)));
    const auto T = extract_separating_T(f, t);
    if (!T) {
      ++failures;
      continue;
    }
    const std::uint64_t threshold =
        (std::uint64_t{1} << t) - (std::uint64_t{1} << (t - 2)) + 1;
    if (trace_family(f, *T).size() < threshold) {
      ++failures;
      continue;
    }
    bool separated = true;
    const auto elems = T->elements();
    for (int a : elems)
      for (int b : elems)
        if (a != b && !separates(f, a, b)) separated = false;
    if (!separated) ++failures;
  }

  std::uint64_t tight_failures = 0;
  for (int n = 2; n <= 16; ++n) {
    for (int k = 2; k <= 4 && k <= n; ++k) {
      const UniformHypergraph g = balanced_partite_hypergraph(n, k);
      if (g.edge_count() != g_reference(n, k)) ++tight_failures;
      if (find_generalized_triangle(g)) ++tight_failures;
    }
  }
  json details{{"random_cases", cases},
               {"failures", failures},
               {"tightness_failures", tight_failures},
               {"seed", opts.seed}};
  return {"thm6prime", failures == 0 && tight_failures == 0, details.dump()};
}

// --- disrep -----------------------------------------------------------------
// The prefix/suffix families have no 3 disjointly representable members and
// realize the extremal count at n = 4.

SuiteResult suite_disrep(const SuiteOptions&) {
  bool passed = true;
  json details;
  for (int n = 3; n <= 12; ++n) {
    const Family f = f_ab_family(n);
    const std::uint64_t want = binomial(n, 2) + static_cast<std::uint64_t>(n) + 1;
    if (f.size() != want || has_disjointly_representable(f, 3)) passed = false;
  }
  details["f_ab_range"] = "3..12";

  // Exhaustive n = 4: the largest family with no 3 disjointly representable
  // members has 11 members, i.e. 12 members always force one.
  int best = 0;
  for (std::uint32_t counter = 0; counter < (std::uint32_t{1} << 16); ++counter) {
    if (popcount(counter) <= best) continue;
    std::vector<SetMask> members;
    for (int s = 0; s < 16; ++s)
      if (counter >> s & 1) members.push_back(static_cast<SetMask>(s));
    Family f(4, std::move(members));
    if (!has_disjointly_representable(f, 3)) best = static_cast<int>(f.size());
  }
  details["max_no_3_disrep_n4"] = best;
  passed = passed && best == 11;
  return {"disrep", passed, details.dump()};
}

const std::vector<std::string> kSuiteNames = {
    "conjA-small", "refute-a-14", "dichotomy", "claim2",      "thm5-small",
    "lemma7",      "refute-b-15", "thm6prime", "disrep"};

}  // namespace

const std::vector<std::string>& suite_names() { return kSuiteNames; }

SuiteResult run_suite(std::string_view name, const SuiteOptions& opts) {
  if (name == "conjA-small") return suite_conj_a_small(opts);
  if (name == "refute-a-14") return suite_refute_a_14(opts);
  if (name == "dichotomy") return suite_dichotomy(opts);
  if (name == "claim2") return suite_claim2(opts);
  if (name == "thm5-small") return suite_thm5_small(opts);
  if (name == "lemma7") return suite_lemma7(opts);
  if (name == "refute-b-15") return suite_refute_b_15(opts);
  if (name == "thm6prime") return suite_thm6prime(opts);
  if (name == "disrep") return suite_disrep(opts);
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

std::string refute_a_artifact(std::uint64_t seed, int threads) {
  const RefuteSearchOutcome out = search_counterexample_A(14, 10, seed, threads);
  if (!out.found()) return "{\"found\":false}";
  std::ostringstream cert;
  write_refutation_certificate(cert, *out.certificate);
  return cert.str() + "\n" + serialize_family(*out.family);
}

std::string claim2_artifact(std::uint64_t seed, int threads) {
  const NotCarvedReport r1 = monte_carlo_not_carved(10, 4, 0, 100000, seed, threads);
  const NotCarvedReport r2 = monte_carlo_not_carved(10, 3, 0, 1000000, seed, threads);
  return json{{"ell1", not_carved_json(r1)}, {"ell2", not_carved_json(r2)}}.dump();
}

std::string conjecture_b_artifact(std::uint64_t seed, int threads) {
  const RefuteSearchOutcome base = search_counterexample_A(14, 10, seed, threads);
  if (!base.found()) return "{\"found\":false}";
  const OddCounterexample c = build_odd_counterexample(*base.family, 15);
  const auto witness = verify_conjecture_B(c, threads);
  json j{{"n", 15},
         {"family_hash", family_hash(c.family)},
         {"ys_checked", 15},
         {"matchings_per_y", matching_count(14, 7)},
         {"witness", nullptr}};
  if (witness)
    j["witness"] = {{"y", witness->y}, {"matching", witness->matching.to_string()}};
  return j.dump() + "\n" + serialize_family(c.family);
}

}  // namespace shatter
