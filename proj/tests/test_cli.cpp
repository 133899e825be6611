// Drives the installed binary end to end through a shell pipe; checks exit
// codes, report JSON, and file outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "shatter/family.hpp"
#include "shatter/hypergraph.hpp"
#include "shatter/io.hpp"
#include "shatter/numeric.hpp"

using namespace shatter;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(SHATTER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json report_of(const CliResult& r) {
  REQUIRE(r.exit_code >= 0);
  return json::parse(r.output);
}

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "shatter_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// Everything except timing and worker count must be byte-stable.
std::string stable_part(const json& report) {
  json copy = report;
  copy.erase("elapsed_ms");
  copy.erase("worker_count");
  return copy.dump();
}

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("gen-mif --help").exit_code == 0);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("gen-mif").exit_code == 2);            // missing --n
  CHECK(run_cli("gen-mif --n 7").exit_code == 2);      // odd ground size
  CHECK(run_cli("gen-mif --n 6 --bogus 1").exit_code == 2);
  CHECK(run_cli("s-exact --n 5 --t 2").exit_code == 2);  // gated scan
  CHECK(run_cli("shattered --family /nonexistent --k 2").exit_code == 2);
}

TEST_CASE("gen-mif writes a valid reproducible family") {
  const auto path = temp_file("fam6.txt");
  const auto run = run_cli("gen-mif --n 6 --seed 3 --out " + path.string());
  CHECK(run.exit_code == 0);
  const json report = report_of(run);
  CHECK(report["command"] == "gen-mif");
  CHECK(report["seed"] == 3);
  CHECK(report["generator_id"] == "splitmix64-v1");
  CHECK(report["result"]["size"] == 10);

  const Family f = parse_family(read_text_file(path));
  CHECK(is_maximal_intersecting_halfsize(f));
  CHECK(report["result"]["family_hash"] == family_hash(f));

  // Same seed, same bytes; also byte-stable modulo timing fields.
  const auto again = run_cli("gen-mif --n 6 --seed 3 --out " + path.string());
  CHECK(stable_part(report_of(again)) == stable_part(report));
  CHECK(parse_family(read_text_file(path)) == f);
}

TEST_CASE("sep-bounds emits the documented payload") {
  const auto run = run_cli("sep-bounds --n 6 --t 4");
  CHECK(run.exit_code == 0);
  const json result = report_of(run)["result"];
  CHECK(result["lower"] == 28);
  CHECK(result["upper"] == 31);
  CHECK(result["exact"].is_null());

  const auto k_run = run_cli("sep-bounds --n 10 --k 2");
  CHECK(k_run.exit_code == 0);
  CHECK(report_of(k_run)["result"]["lower"] == 81);
  CHECK(report_of(k_run)["result"]["upper"] == 177);

  CHECK(run_cli("sep-bounds --n 6").exit_code == 2);
  CHECK(run_cli("sep-bounds --n 6 --t 4 --k 2").exit_code == 2);

  const auto text = run_cli("sep-bounds --n 6 --t 4 --format text");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("result.lower = 28") != std::string::npos);
}

TEST_CASE("exact values and the arrow relation through the CLI") {
  CHECK(report_of(run_cli("s-exact --n 4 --t 2"))["result"]["value"] == 6);
  CHECK(report_of(run_cli("monotone-count --n 3"))["result"]["count"] == 20);

  const auto holds = run_cli("arrow --n 4 --m 10 --a 3 --b 7");
  CHECK(holds.exit_code == 0);
  CHECK(report_of(holds)["result"]["holds"] == true);
  const auto fails = run_cli("arrow --n 4 --m 9 --a 3 --b 7");
  CHECK(fails.exit_code == 1);
  CHECK(report_of(fails)["result"]["holds"] == false);
}

TEST_CASE("family-file subcommands: shattered, vc-dim, separability, disrep") {
  // The full powerset over 4 elements shatters everything.
  std::vector<SetMask> everything;
  for (SetMask m = 0; m < 16; ++m) everything.push_back(m);
  const auto full_path = temp_file("full4.txt");
  write_text_file(full_path, serialize_family(Family(4, everything)));

  const auto single = run_cli("shattered --family " + full_path.string() +
                              " --matching 0-1,2-3");
  CHECK(single.exit_code == 0);
  CHECK(report_of(single)["result"]["shattered"] == true);

  const auto search = run_cli("shattered --family " + full_path.string() + " --k 2");
  CHECK(search.exit_code == 0);
  CHECK(report_of(search)["result"]["rank"] == 0);

  const auto range = run_cli("shattered --family " + full_path.string() +
                             " --k-min 1 --k-max 2");
  CHECK(range.exit_code == 0);
  CHECK(report_of(range)["result"]["max_k"] == 2);

  CHECK(report_of(run_cli("vc-dim --family " + full_path.string()))["result"]["vc_dim"] == 4);

  const auto sep = run_cli("separability --family " + full_path.string() + " --t 4");
  CHECK(sep.exit_code == 0);
  CHECK(report_of(sep)["result"]["witness"].size() == 4);

  const auto disrep = run_cli("disrep --family " + full_path.string() + " --t 3");
  CHECK(disrep.exit_code == 0);

  // A bare chain fails most of these searches.
  const auto chain_path = temp_file("chain4.txt");
  write_text_file(chain_path, serialize_family(Family(4, {0b0001, 0b0011, 0b0111})));
  CHECK(run_cli("shattered --family " + chain_path.string() + " --k 1").exit_code == 1);
  CHECK(run_cli("separability --family " + chain_path.string() + " --t 2").exit_code == 1);
  CHECK(run_cli("disrep --family " + chain_path.string() + " --t 3").exit_code == 1);
}

TEST_CASE("construction subcommands write families") {
  const auto cp = report_of(run_cli("chain-product --parts 2,3"));
  CHECK(cp["result"]["size"] == 12);
  CHECK(cp["result"]["ground_size"] == 5);

  const auto fab_path = temp_file("fab5.txt");
  const auto fab = run_cli("f-ab --n 5 --out " + fab_path.string());
  CHECK(fab.exit_code == 0);
  CHECK(report_of(fab)["result"]["size"] == 16);
  CHECK(parse_family(read_text_file(fab_path)).size() == 16);

  // r-system over the full powerset of 6.
  std::vector<SetMask> everything;
  for (SetMask m = 0; m < 64; ++m) everything.push_back(m);
  const auto full6 = temp_file("full6.txt");
  write_text_file(full6, serialize_family(Family(6, everything)));
  const auto rsys = run_cli("r-system --family " + full6.string() + " --tuples 0-1-2,3-4-5");
  CHECK(rsys.exit_code == 0);
  CHECK(report_of(rsys)["result"]["shattered"] == true);
  CHECK(run_cli("r-system --family " + full6.string() +
                " --tuples 0-1-2,3-4-5 --r 4").exit_code == 2);
}

TEST_CASE("triangle and window extraction run from files") {
  const auto tri_path = temp_file("tri.txt");
  write_text_file(tri_path, serialize_hypergraph(UniformHypergraph(
                                4, 2, {0b0011, 0b0110, 0b0101})));
  CHECK(run_cli("triangle --hypergraph " + tri_path.string()).exit_code == 0);

  const auto flat_path = temp_file("flat.txt");
  write_text_file(flat_path, serialize_hypergraph(UniformHypergraph(4, 2, {0b0011, 0b1100})));
  CHECK(run_cli("triangle --hypergraph " + flat_path.string()).exit_code == 1);

  // Downward-closed family rich at level 3.
  std::vector<SetMask> level3;
  for (SetMask m = 0; m < 64; ++m)
    if (popcount(m) <= 3) level3.push_back(m);
  const auto family_path = temp_file("closed6.txt");
  write_text_file(family_path, serialize_family(Family(6, level3)));
  const auto extract = run_cli("extract-t --family " + family_path.string() + " --t 4");
  CHECK(extract.exit_code == 0);
  CHECK(report_of(extract)["result"]["t_set"].size() == 4);
}

TEST_CASE("odd-ground pipeline: build then scan") {
  const auto star_path = temp_file("star4.txt");
  write_text_file(star_path, serialize_family(Family(4, {0b0011, 0b0101, 0b1001})));

  const auto built_path = temp_file("odd5.txt");
  const auto build = run_cli("build-b --n 5 --family " + star_path.string() +
                             " --out " + built_path.string());
  CHECK(build.exit_code == 0);
  CHECK(report_of(build)["result"]["size"] == 10);

  // The star construction at n = 5 yields a witness: exit 1 flags it.
  const auto cert_path = temp_file("conjb5.json");
  const auto verify = run_cli("verify-b --family " + built_path.string() +
                              " --cert " + cert_path.string());
  CHECK(verify.exit_code == 1);
  const json report = report_of(verify);
  CHECK(report["result"]["witness_found"] == true);
  CHECK(report["result"]["matchings_per_y"] == 3);
  const json cert = json::parse(read_text_file(cert_path));
  CHECK(cert["n"] == 5);
  CHECK(cert["witness"]["y"] == report["result"]["witness"]["y"]);

  // Worker count never changes the payload.
  const auto t1 = run_cli("verify-b --family " + built_path.string() + " --threads 1");
  const auto t4 = run_cli("verify-b --family " + built_path.string() + " --threads 4");
  CHECK(stable_part(report_of(t1)) == stable_part(report_of(t4)));
}

TEST_CASE("small refutation search reports trials either way") {
  const auto cert_path = temp_file("refute6.json");
  const auto run = run_cli("refute-a --n 6 --trials 2 --seed 1 --cert " + cert_path.string());
  const json report = report_of(run);
  if (run.exit_code == 0) {
    CHECK(report["result"]["found"] == true);
    CHECK(report["result"]["matchings_checked"] == 45);
    const json cert = json::parse(read_text_file(cert_path));
    CHECK(cert["witnesses"].size() == 45);
    const auto family_file = report["result"]["family_out"].get<std::string>();
    CHECK(is_maximal_intersecting_halfsize(parse_family(read_text_file(family_file))));
  } else {
    CHECK(run.exit_code == 1);
    CHECK(report["result"]["found"] == false);
    CHECK(report["result"]["trials_run"] == 2);
  }
}

TEST_CASE("verify-suite runs a named bundle") {
  const auto run = run_cli("verify-suite conjA-small --seed 1");
  CHECK(run.exit_code == 0);
  const json report = report_of(run);
  CHECK(report["result"]["all_passed"] == true);
  CHECK(report["result"]["suites"][0]["name"] == "conjA-small");
  CHECK(run_cli("verify-suite no-such-suite").exit_code == 2);
}
