#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "shatter/family.hpp"
#include "shatter/random_mif.hpp"

namespace shatter {

class UniformHypergraph;  // hypergraph.hpp

// Family text format:
//   n=<ground size>
//   one member per line: ascending space-separated elements, or "-" for the
//   empty set; members appear in ascending bitmask order on output.
// Hypergraphs add a second header line "k=<uniformity>".
// Parsers reject duplicate members, non-ascending lines, and out-of-range
// elements with std::runtime_error.
std::string serialize_family(const Family& f);
Family parse_family(std::string_view text);
std::string serialize_hypergraph(const UniformHypergraph& g);
UniformHypergraph parse_hypergraph(std::string_view text);

// FNV-1a over the serialized text; this is the `family_hash` embedded in
// certificates.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t family_hash(const Family& f);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Refutation certificate JSON, keys in alphabetical order:
//   {"family_hash":..., "generator_id":"...", "k":..., "matchings_checked":...,
//    "n":..., "seed":..., "witnesses":[{"matching":rank,"snake_bits":c},...]}
// "matching" is the rank in the canonical enumeration order of size-k
// matchings.  The writer streams (certificates run to millions of
// witnesses); the reader accepts ranks in any order but requires every rank
// exactly once.
void write_refutation_certificate(std::ostream& out, const RefutationCertificate& cert);
RefutationCertificate read_refutation_certificate(std::istream& in);

}  // namespace shatter
