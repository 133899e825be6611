// Command-line front end: one subcommand per library operation, emitting a
// JSON (or flattened text) run report on stdout.
//
// Exit codes: 0 = success / positive verdict, 1 = searched and the object is
// absent (a legitimate outcome, reported normally), 2 = invalid input.
// Reports are byte-identical across worker counts except for the elapsed_ms
// and worker_count fields.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shatter/counterexamples.hpp"
#include "shatter/family.hpp"
#include "shatter/hypergraph.hpp"
#include "shatter/io.hpp"
#include "shatter/matching.hpp"
#include "shatter/numeric.hpp"
#include "shatter/parallel.hpp"
#include "shatter/random_mif.hpp"
#include "shatter/separability.hpp"
#include "shatter/suites.hpp"

namespace {

using nlohmann::json;
using namespace shatter;

std::vector<int> parse_int_list(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) {
    if (item.empty()) throw std::invalid_argument("empty entry in '" + text + "'");
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

// "0-1,2-3" -> {(0,1),(2,3)}
std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto nums = parse_int_list(item, '-');
    if (nums.size() != 2)
      throw std::invalid_argument("pair needs exactly two endpoints: '" + item + "'");
    out.emplace_back(nums[0], nums[1]);
  }
  if (out.empty()) throw std::invalid_argument("no pairs in '" + text + "'");
  return out;
}

// "0-1-2,3-4-5" -> element masks, one per tuple
std::vector<SetMask> parse_tuples(const std::string& text, int ground_size) {
  std::vector<SetMask> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    SetMask mask = 0;
    for (int e : parse_int_list(item, '-')) {
      if (e < 0 || e >= ground_size)
        throw std::invalid_argument("tuple element out of range: '" + item + "'");
      mask |= SetMask{1} << e;
    }
    out.push_back(mask);
  }
  if (out.empty()) throw std::invalid_argument("no tuples in '" + text + "'");
  return out;
}

json elements_json(const ElementSet& s) {
  json a = json::array();
  for (int e : s.elements()) a.push_back(e);
  return a;
}

Family load_family(const std::string& path) {
  return parse_family(read_text_file(path));
}

void render_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      render_text(it.value(), key, out);
    }
    return;
  }
  out << prefix << " = ";
  if (j.is_string())
    out << j.get<std::string>();
  else
    out << j.dump();
  out << "\n";
}

// Runs one subcommand body and wraps its result payload in the run report.
int run_reported(const std::string& command, const std::string& format,
                 int threads_requested, bool randomized, std::uint64_t seed,
                 json params, const std::function<int(json&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  json result = json::object();
  const int code = body(result);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
          .count();
  json report{{"command", command},
              {"params", std::move(params)},
              {"result", std::move(result)},
              {"elapsed_ms", elapsed},
              {"worker_count", resolve_worker_count(threads_requested)}};
  if (randomized) {
    report["seed"] = seed;
    report["generator_id"] = std::string(kGeneratorId);
  }
  if (format == "text")
    render_text(report, "", std::cout);
  else
    std::cout << report.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shattered matchings, separability, and related set-family constructions"};
  app.require_subcommand(1);

  int n = 0, t = 0, k = -1, r = 0, a = 0, k_min = -1, k_max = -1;
  std::uint64_t m = 0, b = 0;
  std::uint64_t seed = 1, trials = 10;
  int threads = 0;  // 0 = all available
  std::string out_path, cert_path, family_path, hypergraph_path;
  std::string parts_str, matching_str, tuples_str, suite_name;
  std::string format = "json";
  bool allow_expensive = false;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };
  const auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker count (default: all available)");
  };

  std::map<std::string, std::function<int()>> runners;

  // --- gen-mif ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "gen-mif", "draw a random maximal intersecting half-size family");
    sub->add_option("--n", n, "even ground size")->required();
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--out", out_path, "write the family to this file");
    add_format(sub);
    runners["gen-mif"] = [&] {
      return run_reported("gen-mif", format, 1, true, seed,
                          json{{"n", n}, {"seed", seed}}, [&](json& result) {
                            const Family f = random_mif({n, seed});
                            result["n"] = n;
                            result["size"] = f.size();
                            result["family_hash"] = family_hash(f);
                            if (!out_path.empty()) {
                              write_text_file(out_path, serialize_family(f));
                              result["out"] = out_path;
                            } else {
                              result["family_text"] = serialize_family(f);
                            }
                            return 0;
                          });
    };
  }

  // --- shattered -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "shattered", "check one matching, or search a size or size range");
    sub->add_option("--family", family_path, "family file")->required();
    sub->add_option("--matching", matching_str, "single matching, e.g. 0-1,2-3");
    sub->add_option("--k", k, "search all size-k matchings");
    sub->add_option("--k-min", k_min, "range search: smallest size");
    sub->add_option("--k-max", k_max, "range search: largest size");
    add_format(sub);
    runners["shattered"] = [&] {
      return run_reported(
          "shattered", format, 1, false, 0,
          json{{"family", family_path}}, [&](json& result) {
            const Family f = load_family(family_path);
            if (!matching_str.empty()) {
              const Matching mt(f.ground_size(), parse_pairs(matching_str));
              const auto uncarved = first_uncarved_snake(f, mt);
              result["mode"] = "single";
              result["matching"] = mt.to_string();
              result["shattered"] = !uncarved.has_value();
              result["first_uncarved_snake"] =
                  uncarved ? json(*uncarved) : json(nullptr);
              return uncarved ? 1 : 0;
            }
            if (k >= 0) {
              result["mode"] = "search";
              result["k"] = k;
              std::optional<std::uint64_t> hit_rank;
              std::optional<Matching> hit;
              enumerate_matchings(f.ground_size(), k,
                                  [&](std::uint64_t rank, const Matching& mt) {
                                    if (!is_shattered(f, mt)) return true;
                                    hit_rank = rank;
                                    hit = mt;
                                    return false;
                                  });
              result["found"] = hit.has_value();
              result["rank"] = hit_rank ? json(*hit_rank) : json(nullptr);
              result["matching"] = hit ? json(hit->to_string()) : json(nullptr);
              return hit ? 0 : 1;
            }
            if (k_min >= 0 && k_max >= 0) {
              result["mode"] = "range";
              result["k_min"] = k_min;
              result["k_max"] = k_max;
              const auto [best, witness] = max_shattered_size(f, k_min, k_max);
              result["max_k"] = best;
              result["found"] = witness.has_value();
              result["matching"] =
                  witness ? json(witness->to_string()) : json(nullptr);
              return witness ? 0 : 1;
            }
            throw std::invalid_argument(
                "shattered: need --matching, --k, or --k-min/--k-max");
          });
    };
  }

  // --- refute-a --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "refute-a",
        "search random families for one with no shattered matching of size n/2 - 1");
    sub->add_option("--n", n, "even ground size")->required();
    sub->add_option("--trials", trials, "families to try");
    sub->add_option("--seed", seed, "seed of the first trial");
    sub->add_option("--cert", cert_path, "write the refutation certificate here");
    sub->add_option("--out", out_path, "write the family here");
    add_threads(sub);
    add_format(sub);
    runners["refute-a"] = [&] {
      return run_reported(
          "refute-a", format, threads, true, seed,
          json{{"n", n}, {"trials", trials}, {"seed", seed}}, [&](json& result) {
            const RefuteSearchOutcome outcome =
                search_counterexample_A(n, trials, seed, threads);
            result["found"] = outcome.found();
            result["trials_run"] = outcome.trials_run;
            if (!outcome.found()) return 1;
            const RefutationCertificate& cert = *outcome.certificate;
            result["k"] = cert.k;
            result["family_seed"] = cert.seed;
            result["family_hash"] = cert.family_hash;
            result["matchings_checked"] = cert.matchings_checked;
            result["expected_shattered_count"] =
                expected_shattered_count(n, cert.k);
            std::string family_out = out_path;
            if (!cert_path.empty()) {
              std::ofstream stream(cert_path, std::ios::binary);
              if (!stream) throw std::runtime_error("cannot open " + cert_path);
              write_refutation_certificate(stream, cert);
              if (!stream) throw std::runtime_error("write failed: " + cert_path);
              result["cert"] = cert_path;
              if (family_out.empty()) family_out = cert_path + ".family.txt";
            }
            if (!family_out.empty()) {
              write_text_file(family_out, serialize_family(*outcome.family));
              result["family_out"] = family_out;
            }
            return 0;
          });
    };
  }

  // --- build-b ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "build-b",
        "build the odd-ground family from a half-size base (given or searched)");
    sub->add_option("--n", n, "odd ground size")->required();
    sub->add_option("--family", family_path,
                    "base family over n-1 elements; searched if omitted");
    sub->add_option("--trials", trials, "search budget when no base is given");
    sub->add_option("--seed", seed, "search seed when no base is given");
    sub->add_option("--out", out_path, "write the family to this file");
    add_threads(sub);
    add_format(sub);
    runners["build-b"] = [&] {
      const bool randomized = family_path.empty();
      json params{{"n", n}};
      if (randomized) {
        params["trials"] = trials;
        params["seed"] = seed;
      } else {
        params["family"] = family_path;
      }
      return run_reported(
          "build-b", format, threads, randomized, seed, std::move(params),
          [&](json& result) {
            std::optional<Family> base;
            if (!family_path.empty()) {
              base = load_family(family_path);
            } else {
              const RefuteSearchOutcome outcome =
                  search_counterexample_A(n - 1, trials, seed, threads);
              result["base_found"] = outcome.found();
              result["trials_run"] = outcome.trials_run;
              if (!outcome.found()) return 1;
              result["base_seed"] = outcome.certificate->seed;
              base = outcome.family;
            }
            const OddCounterexample c = build_odd_counterexample(*base, n);
            result["n"] = n;
            result["size"] = c.family.size();
            result["family_hash"] = family_hash(c.family);
            result["base_family_hash"] = family_hash(c.g);
            if (!out_path.empty()) {
              write_text_file(out_path, serialize_family(c.family));
              result["out"] = out_path;
            } else {
              result["family_text"] = serialize_family(c.family);
            }
            return 0;
          });
    };
  }

  // --- verify-b --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "verify-b",
        "scan every y and every perfect matching of X \\ {y} for a witness");
    sub->add_option("--family", family_path, "odd-ground family file")->required();
    sub->add_option("--cert", cert_path, "write the scan certificate here");
    add_threads(sub);
    add_format(sub);
    runners["verify-b"] = [&] {
      return run_reported(
          "verify-b", format, threads, false, 0,
          json{{"family", family_path}}, [&](json& result) {
            const Family f = load_family(family_path);
            const int ground = f.ground_size();
            const auto witness = verify_conjecture_B(f, threads);
            json cert{{"n", ground},
                      {"family_hash", family_hash(f)},
                      {"ys_checked", ground},
                      {"matchings_per_y", matching_count(ground - 1, (ground - 1) / 2)},
                      {"witness", nullptr}};
            if (witness)
              cert["witness"] = {{"y", witness->y},
                                 {"matching", witness->matching.to_string()}};
            if (!cert_path.empty()) {
              write_text_file(cert_path, cert.dump() + "\n");
              result["cert"] = cert_path;
            }
            result["n"] = ground;
            result["family_hash"] = cert["family_hash"];
            result["ys_checked"] = cert["ys_checked"];
            result["matchings_per_y"] = cert["matchings_per_y"];
            result["witness"] = cert["witness"];
            result["witness_found"] = witness.has_value();
            return witness ? 1 : 0;  // no witness = the family survives the scan
          });
    };
  }

  // --- separability ----------------------------------------------------
  {
    auto* sub = app.add_subcommand("separability",
                                   "find t elements pairwise separated both ways");
    sub->add_option("--family", family_path, "family file")->required();
    sub->add_option("--t", t, "how many elements to separate")->required();
    add_format(sub);
    runners["separability"] = [&] {
      return run_reported("separability", format, 1, false, 0,
                          json{{"family", family_path}, {"t", t}},
                          [&](json& result) {
                            const Family f = load_family(family_path);
                            const auto witness = is_t_separable(f, t);
                            result["t"] = t;
                            result["separable"] = witness.has_value();
                            result["witness"] = witness ? elements_json(*witness)
                                                        : json(nullptr);
                            return witness ? 0 : 1;
                          });
    };
  }

  // --- sep-bounds ------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "sep-bounds",
        "bounds on the separability threshold (--t) or the shattered-matching "
        "threshold (--k)");
    sub->add_option("--n", n, "ground size")->required();
    auto* t_opt = sub->add_option("--t", t, "separability order");
    auto* k_opt = sub->add_option("--k", k, "matching size");
    t_opt->excludes(k_opt);
    add_format(sub);
    runners["sep-bounds"] = [&, t_opt, k_opt] {
      json params{{"n", n}};
      const bool use_t = t_opt->count() > 0;
      if (use_t)
        params["t"] = t;
      else if (k_opt->count() > 0)
        params["k"] = k;
      return run_reported(
          "sep-bounds", format, 1, false, 0, std::move(params), [&](json& result) {
            if (use_t) {
              const SeparabilityBounds bounds = separability_bounds(n, t);
              result["n"] = bounds.n;
              result["t"] = bounds.t;
              result["lower"] = bounds.lower;
              result["upper"] = bounds.upper;
              result["exact"] = bounds.exact ? json(*bounds.exact) : json(nullptr);
              return 0;
            }
            if (k_opt->count() > 0) {
              const auto [lower, upper] = p_bounds(n, k);
              result["n"] = n;
              result["k"] = k;
              result["lower"] = lower;
              result["upper"] = upper;
              return 0;
            }
            throw std::invalid_argument("sep-bounds: need --t or --k");
          });
    };
  }

  // --- s-exact ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "s-exact", "exhaustive separability threshold for small ground sizes");
    sub->add_option("--n", n, "ground size (<= 4, or 5 with --allow-expensive)")
        ->required();
    sub->add_option("--t", t, "separability order")->required();
    sub->add_flag("--allow-expensive", allow_expensive, "permit the n = 5 scan");
    add_threads(sub);
    add_format(sub);
    runners["s-exact"] = [&] {
      return run_reported("s-exact", format, threads, false, 0,
                          json{{"n", n}, {"t", t}}, [&](json& result) {
                            result["n"] = n;
                            result["t"] = t;
                            result["value"] =
                                s_exact_small(n, t, allow_expensive, threads);
                            return 0;
                          });
    };
  }

  // --- arrow -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "arrow", "does every m-member monotone family trace >= b sets on some "
                 "a-subset?");
    sub->add_option("--n", n, "ground size (<= 5)")->required();
    sub->add_option("--m", m, "family size")->required();
    sub->add_option("--a", a, "window size")->required();
    sub->add_option("--b", b, "required trace count")->required();
    add_format(sub);
    runners["arrow"] = [&] {
      return run_reported(
          "arrow", format, 1, false, 0,
          json{{"n", n}, {"m", m}, {"a", a}, {"b", b}}, [&](json& result) {
            const bool holds = arrow_holds(n, m, a, b);
            result["holds"] = holds;
            return holds ? 0 : 1;
          });
    };
  }

  // --- monotone-count --------------------------------------------------
  {
    auto* sub = app.add_subcommand("monotone-count",
                                   "number of downward-closed families");
    sub->add_option("--n", n, "ground size (<= 5)")->required();
    add_format(sub);
    runners["monotone-count"] = [&] {
      return run_reported("monotone-count", format, 1, false, 0,
                          json{{"n", n}}, [&](json& result) {
                            result["n"] = n;
                            result["count"] = count_monotone_families(n);
                            return 0;
                          });
    };
  }

  // --- triangle --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "triangle", "find a generalized triangle in a uniform hypergraph");
    sub->add_option("--hypergraph", hypergraph_path, "hypergraph file")->required();
    add_format(sub);
    runners["triangle"] = [&] {
      return run_reported(
          "triangle", format, 1, false, 0,
          json{{"hypergraph", hypergraph_path}}, [&](json& result) {
            const UniformHypergraph g =
                parse_hypergraph(read_text_file(hypergraph_path));
            const auto tri = find_generalized_triangle(g);
            result["found"] = tri.has_value();
            if (tri) {
              result["e1"] = elements_json(tri->e1);
              result["e2"] = elements_json(tri->e2);
              result["e3"] = elements_json(tri->e3);
            }
            return tri ? 0 : 1;
          });
    };
  }

  // --- extract-t -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "extract-t",
        "extract a t-set with dense trace from a downward-closed family");
    sub->add_option("--family", family_path, "family file")->required();
    sub->add_option("--t", t, "target set size")->required();
    add_format(sub);
    runners["extract-t"] = [&] {
      return run_reported("extract-t", format, 1, false, 0,
                          json{{"family", family_path}, {"t", t}},
                          [&](json& result) {
                            const Family f = load_family(family_path);
                            const auto target = extract_separating_T(f, t);
                            result["t"] = t;
                            result["found"] = target.has_value();
                            result["t_set"] = target ? elements_json(*target)
                                                     : json(nullptr);
                            return target ? 0 : 1;
                          });
    };
  }

  // --- chain-product ---------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "chain-product", "product-of-chains family over consecutive blocks");
    sub->add_option("--parts", parts_str, "block sizes, e.g. 2,3,4")->required();
    sub->add_option("--out", out_path, "write the family to this file");
    add_format(sub);
    runners["chain-product"] = [&] {
      return run_reported(
          "chain-product", format, 1, false, 0,
          json{{"parts", parts_str}}, [&](json& result) {
            const std::vector<int> parts = parse_int_list(parts_str, ',');
            const Family f = chain_product_family(parts);
            result["parts"] = parts;
            result["ground_size"] = f.ground_size();
            result["size"] = f.size();
            if (!out_path.empty()) {
              write_text_file(out_path, serialize_family(f));
              result["out"] = out_path;
            } else {
              result["family_text"] = serialize_family(f);
            }
            return 0;
          });
    };
  }

  // --- f-ab ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "f-ab", "prefix-or-suffix family with no 3 disjointly representable "
                "members");
    sub->add_option("--n", n, "ground size")->required();
    sub->add_option("--out", out_path, "write the family to this file");
    add_format(sub);
    runners["f-ab"] = [&] {
      return run_reported("f-ab", format, 1, false, 0, json{{"n", n}},
                          [&](json& result) {
                            const Family f = f_ab_family(n);
                            result["n"] = n;
                            result["size"] = f.size();
                            if (!out_path.empty()) {
                              write_text_file(out_path, serialize_family(f));
                              result["out"] = out_path;
                            } else {
                              result["family_text"] = serialize_family(f);
                            }
                            return 0;
                          });
    };
  }

  // --- disrep ----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "disrep", "find t disjointly representable members");
    sub->add_option("--family", family_path, "family file")->required();
    sub->add_option("--t", t, "how many members")->required();
    add_format(sub);
    runners["disrep"] = [&] {
      return run_reported(
          "disrep", format, 1, false, 0,
          json{{"family", family_path}, {"t", t}}, [&](json& result) {
            const Family f = load_family(family_path);
            const auto found = has_disjointly_representable(f, t);
            result["t"] = t;
            result["found"] = found.has_value();
            if (found) {
              json members = json::array();
              for (const ElementSet& s : found->members)
                members.push_back(elements_json(s));
              result["members"] = members;
              result["representatives"] = found->representatives;
            }
            return found ? 0 : 1;
          });
    };
  }

  // --- vc-dim ----------------------------------------------------------
  {
    auto* sub = app.add_subcommand("vc-dim", "largest shattered-set size");
    sub->add_option("--family", family_path, "family file")->required();
    add_format(sub);
    runners["vc-dim"] = [&] {
      return run_reported("vc-dim", format, 1, false, 0,
                          json{{"family", family_path}}, [&](json& result) {
                            const Family f = load_family(family_path);
                            result["vc_dim"] = vc_dim(f);
                            return 0;
                          });
    };
  }

  // --- r-system --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "r-system", "is a system of disjoint r-tuples shattered?");
    sub->add_option("--family", family_path, "family file")->required();
    sub->add_option("--tuples", tuples_str, "tuples, e.g. 0-1-2,3-4-5")->required();
    auto* r_opt = sub->add_option("--r", r, "tuple size (checked if given)");
    add_format(sub);
    runners["r-system"] = [&, r_opt] {
      return run_reported(
          "r-system", format, 1, false, 0,
          json{{"family", family_path}, {"tuples", tuples_str}},
          [&](json& result) {
            const Family f = load_family(family_path);
            const std::vector<SetMask> tuples =
                parse_tuples(tuples_str, f.ground_size());
            int tuple_size = r_opt->count() > 0 ? r : popcount(tuples.front());
            const RSystem sys(f.ground_size(), tuple_size, tuples);
            const bool shattered = is_r_system_shattered(f, sys);
            result["r"] = tuple_size;
            result["tuple_count"] = tuples.size();
            result["shattered"] = shattered;
            return shattered ? 0 : 1;
          });
    };
  }

  // --- verify-suite ----------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "verify-suite", "run one named verification suite, or all of them");
    sub->add_option("name", suite_name, "suite name or 'all'")->required();
    sub->add_option("--seed", seed, "RNG seed for the randomized suites");
    sub->add_flag("--allow-expensive", allow_expensive,
                  "include the slow exhaustive checks");
    add_threads(sub);
    add_format(sub);
    runners["verify-suite"] = [&] {
      return run_reported(
          "verify-suite", format, threads, true, seed,
          json{{"name", suite_name}, {"seed", seed}}, [&](json& result) {
            SuiteOptions opts;
            opts.seed = seed;
            opts.threads = threads;
            opts.allow_expensive = allow_expensive;
            std::vector<std::string> to_run;
            if (suite_name == "all")
              to_run = suite_names();
            else
              to_run.push_back(suite_name);
            json suites = json::array();
            bool all_passed = true;
            for (const std::string& one : to_run) {
              const SuiteResult res = run_suite(one, opts);
              suites.push_back(json{{"name", res.name},
                                    {"passed", res.passed},
                                    {"details", json::parse(res.details)}});
              all_passed = all_passed && res.passed;
            }
            result["suites"] = suites;
            result["all_passed"] = all_passed;
            return all_passed ? 0 : 1;
          });
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }

  try {
    return runners.at(app.get_subcommands().front()->get_name())();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
