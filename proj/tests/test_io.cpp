#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "shatter/family.hpp"
#include "shatter/hypergraph.hpp"
#include "shatter/io.hpp"
#include "shatter/random_mif.hpp"
#include "test_util.hpp"

using namespace shatter;
using nlohmann::json;

TEST_CASE("family serialization round trips") {
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Family f = random_family(rng, n, 20);
    CHECK(parse_family(serialize_family(f)) == f);
  }
  const Family with_empty(3, {0b000, 0b101});
  const std::string text = serialize_family(with_empty);
  CHECK(text == "n=3\n-\n0 2\n");
  CHECK(parse_family(text) == with_empty);
}

TEST_CASE("family parser rejects malformed input") {
  CHECK_THROWS_AS(parse_family(""), std::runtime_error);
  CHECK_THROWS_AS(parse_family("m=3\n0\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_family("n=3\n0 0\n"), std::runtime_error);   // repeat
  CHECK_THROWS_AS(parse_family("n=3\n2 1\n"), std::runtime_error);   // order
  CHECK_THROWS_AS(parse_family("n=3\n0 3\n"), std::runtime_error);   // range
  CHECK_THROWS_AS(parse_family("n=3\n0\n0\n"), std::runtime_error);  // dup member
  CHECK_THROWS_AS(parse_family("n=3\nx\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_family("n=65\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_family("n=0\n"), std::runtime_error);
}

TEST_CASE("hypergraph serialization round trips") {
  const UniformHypergraph g(5, 2, {0b00011, 0b00110, 0b11000});
  const std::string text = serialize_hypergraph(g);
  CHECK(parse_hypergraph(text) == g);
  CHECK_THROWS_AS(parse_hypergraph("n=5\n0 1\n"), std::runtime_error);  // no k
  CHECK_THROWS(parse_hypergraph("n=5\nk=2\n0 1 2\n"));  // wrong uniformity
}

TEST_CASE("fnv1a64 matches the reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("family hash is the hash of the serialization") {
  const Family f = random_mif({6, 5});
  CHECK(family_hash(f) == fnv1a64(serialize_family(f)));
  CHECK(family_hash(f) != family_hash(random_mif({6, 6})));
}

TEST_CASE("certificate writer matches the library dump format") {
  RefutationCertificate cert;
  cert.n = 6;
  cert.k = 2;
  cert.seed = 5;
  cert.family_hash = 123456789012345ULL;
  cert.matchings_checked = 3;
  cert.witness_snakes = {0, 2, 1};

  std::ostringstream out;
  write_refutation_certificate(out, cert);

  const json expected{
      {"family_hash", cert.family_hash},
      {"generator_id", cert.generator_id},
      {"k", cert.k},
      {"matchings_checked", cert.matchings_checked},
      {"n", cert.n},
      {"seed", cert.seed},
      {"witnesses",
       json::array({json{{"matching", 0}, {"snake_bits", 0}},
                    json{{"matching", 1}, {"snake_bits", 2}},
                    json{{"matching", 2}, {"snake_bits", 1}}})}};
  CHECK(out.str() == expected.dump());
}

TEST_CASE("certificate round trips through write and read") {
  RefutationCertificate cert;
  cert.n = 8;
  cert.k = 3;
  cert.seed = 77;
  cert.family_hash = 0xdeadbeefcafeULL;
  cert.matchings_checked = 105;
  for (std::uint32_t i = 0; i < 105; ++i) cert.witness_snakes.push_back(i % 8);

  std::stringstream stream;
  write_refutation_certificate(stream, cert);
  const RefutationCertificate back = read_refutation_certificate(stream);
  CHECK(back.n == cert.n);
  CHECK(back.k == cert.k);
  CHECK(back.seed == cert.seed);
  CHECK(back.generator_id == cert.generator_id);
  CHECK(back.family_hash == cert.family_hash);
  CHECK(back.matchings_checked == cert.matchings_checked);
  CHECK(back.witness_snakes == cert.witness_snakes);
}

TEST_CASE("certificate reader rejects inconsistent files") {
  const auto read_str = [](const std::string& text) {
    std::istringstream in(text);
    return read_refutation_certificate(in);
  };

  json base{{"family_hash", 1},
            {"generator_id", "splitmix64-v1"},
            {"k", 1},
            {"matchings_checked", 2},
            {"n", 4},
            {"seed", 0},
            {"witnesses", json::array({json{{"matching", 0}, {"snake_bits", 0}},
                                       json{{"matching", 1}, {"snake_bits", 1}}})}};
  CHECK(read_str(base.dump()).matchings_checked == 2);

  json missing = base;
  missing["witnesses"].erase(1);
  CHECK_THROWS(read_str(missing.dump()));

  json duplicate = base;
  duplicate["witnesses"][1]["matching"] = 0;
  CHECK_THROWS(read_str(duplicate.dump()));

  json wrong_count = base;
  wrong_count["matchings_checked"] = 3;
  CHECK_THROWS(read_str(wrong_count.dump()));

  CHECK_THROWS(read_str("{not json"));
}

TEST_CASE("text files write and read back") {
  const auto path = std::filesystem::temp_directory_path() / "shatter_io_test.txt";
  write_text_file(path, "hello\nworld\n");
  CHECK(read_text_file(path) == "hello\nworld\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text_file(path), std::runtime_error);
}
