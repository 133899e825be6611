#include "shatter/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shatter/hypergraph.hpp"

namespace shatter {

namespace {

void append_member_line(std::string& out, SetMask m) {
  if (m == 0) {
    out += "-\n";
    return;
  }
  bool first = true;
  for (SetMask rest = m; rest != 0; rest &= rest - 1) {
    if (!first) out += ' ';
    out += std::to_string(lowest_element(rest));
    first = false;
  }
  out += '\n';
}

[[noreturn]] void fail_parse(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

int parse_header(const std::string& line, std::size_t line_no, char name) {
  const std::string prefix = std::string(1, name) + "=";
  if (line.rfind(prefix, 0) != 0)
    fail_parse(line_no, std::string("expected '") + prefix + "<int>' header");
  int value = 0;
  const char* first = line.data() + 2;
  const char* last = line.data() + line.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    fail_parse(line_no, std::string("bad integer in '") + prefix + "' header");
  return value;
}

// Shared body of the family/hypergraph parsers: header line(s), then one
// member per line.
std::vector<SetMask> parse_member_lines(std::istream& in, int n, std::size_t line_no) {
  std::vector<SetMask> members;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      // Allow a final newline; blank interior lines are rejected.
      if (in.peek() != std::char_traits<char>::eof())
        fail_parse(line_no, "blank line inside member list");
      break;
    }
    SetMask m = 0;
    if (line != "-") {
      std::istringstream fields(line);
      int prev = -1, e = 0;
      while (fields >> e) {
        if (e < 0 || e >= n) fail_parse(line_no, "element out of range");
        if (e <= prev) fail_parse(line_no, "elements must be strictly ascending");
        m |= SetMask{1} << e;
        prev = e;
      }
      if (!fields.eof()) fail_parse(line_no, "malformed element list");
      if (prev < 0) fail_parse(line_no, "empty member line (use '-')");
    }
    for (SetMask existing : members)
      if (existing == m) fail_parse(line_no, "duplicate member");
    members.push_back(m);
  }
  return members;
}

}  // namespace

std::string serialize_family(const Family& f) {
  std::string out = "n=" + std::to_string(f.ground_size()) + "\n";
  for (SetMask m : f.masks()) append_member_line(out, m);
  return out;
}

Family parse_family(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("line 1: empty input");
  const int n = parse_header(line, 1, 'n');
  if (n < 1 || n > kMaxGroundSize) fail_parse(1, "ground size must be in [1, 64]");
  return Family(n, parse_member_lines(in, n, 1));
}

std::string serialize_hypergraph(const UniformHypergraph& g) {
  std::string out = "n=" + std::to_string(g.vertex_count()) + "\n";
  out += "k=" + std::to_string(g.uniformity()) + "\n";
  for (SetMask e : g.edges()) append_member_line(out, e);
  return out;
}

UniformHypergraph parse_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("line 1: empty input");
  const int n = parse_header(line, 1, 'n');
  if (n < 1 || n > kMaxGroundSize) fail_parse(1, "ground size must be in [1, 64]");
  if (!std::getline(in, line)) throw std::runtime_error("line 2: missing k= header");
  const int k = parse_header(line, 2, 'k');
  std::vector<SetMask> edges = parse_member_lines(in, n, 2);
  for (SetMask e : edges)
    if (popcount(e) != k) throw std::runtime_error("non-uniform edge in hypergraph");
  return UniformHypergraph(n, k, std::move(edges));
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t family_hash(const Family& f) { return fnv1a64(serialize_family(f)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

void write_refutation_certificate(std::ostream& out, const RefutationCertificate& cert) {
  for (char c : cert.generator_id)
    if (c == '"' || c == '\\' || static_cast<unsigned char>(c) < 0x20)
      throw std::invalid_argument("certificate: generator_id needs no escaping by contract");

  // Hand-rolled writer: the witness array is too large for a DOM, and the
  // key order (alphabetical) matches what nlohmann::json::dump would emit,
  // which the reader round-trip test relies on.
  std::string buf;
  buf.reserve(64 + 40 * cert.witness_snakes.size());
  buf += "{\"family_hash\":";
  buf += std::to_string(cert.family_hash);
  buf += ",\"generator_id\":\"";
  buf += cert.generator_id;
  buf += "\",\"k\":";
  buf += std::to_string(cert.k);
  buf += ",\"matchings_checked\":";
  buf += std::to_string(cert.matchings_checked);
  buf += ",\"n\":";
  buf += std::to_string(cert.n);
  buf += ",\"seed\":";
  buf += std::to_string(cert.seed);
  buf += ",\"witnesses\":[";
  char scratch[48];
  for (std::size_t i = 0; i < cert.witness_snakes.size(); ++i) {
    if (i) buf += ',';
    buf += "{\"matching\":";
    auto r1 = std::to_chars(scratch, scratch + sizeof scratch, i);
    buf.append(scratch, r1.ptr);
    buf += ",\"snake_bits\":";
    auto r2 = std::to_chars(scratch, scratch + sizeof scratch, cert.witness_snakes[i]);
    buf.append(scratch, r2.ptr);
    buf += '}';
  }
  buf += "]}";
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("certificate write failed");
}

namespace {

// SAX handler: scalars in the top-level object, plus the witnesses array of
// {matching, snake_bits} objects, collected without building a DOM.
struct CertificateSax : nlohmann::json_sax<nlohmann::json> {
  RefutationCertificate cert;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;

  int depth = 0;
  bool in_witnesses = false;
  std::string current_key;
  std::uint64_t cur_matching = 0;
  std::uint64_t cur_snake = 0;
  bool saw_matching = false, saw_snake = false;

  bool key(string_t& val) override {
    current_key = val;
    return true;
  }
  bool start_object(std::size_t) override {
    ++depth;
    if (depth == 2 && in_witnesses) {
      saw_matching = saw_snake = false;
      return true;
    }
    return depth == 1;
  }
  bool end_object() override {
    if (depth == 2 && in_witnesses) {
      if (!saw_matching || !saw_snake) return false;
      entries.emplace_back(cur_matching, static_cast<std::uint32_t>(cur_snake));
    }
    --depth;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth != 1 || current_key != "witnesses" || in_witnesses) return false;
    in_witnesses = true;
    return true;
  }
  bool end_array() override {
    in_witnesses = false;
    return true;
  }
  bool handle_unsigned(std::uint64_t val) {
    if (depth == 1) {
      if (current_key == "n") cert.n = static_cast<int>(val);
      else if (current_key == "k") cert.k = static_cast<int>(val);
      else if (current_key == "seed") cert.seed = val;
      else if (current_key == "family_hash") cert.family_hash = val;
      else if (current_key == "matchings_checked") cert.matchings_checked = val;
      else return false;
      return true;
    }
    if (depth == 2 && in_witnesses) {
      if (current_key == "matching") {
        cur_matching = val;
        saw_matching = true;
      } else if (current_key == "snake_bits") {
        if (val > 0xffffffffULL) return false;
        cur_snake = val;
        saw_snake = true;
      } else {
        return false;
      }
      return true;
    }
    return false;
  }
  bool number_unsigned(number_unsigned_t val) override { return handle_unsigned(val); }
  bool number_integer(number_integer_t val) override {
    return val >= 0 && handle_unsigned(static_cast<std::uint64_t>(val));
  }
  bool string(string_t& val) override {
    if (depth == 1 && current_key == "generator_id") {
      cert.generator_id = val;
      return true;
    }
    return false;
  }
  bool null() override { return false; }
  bool boolean(bool) override { return false; }
  bool number_float(number_float_t, const string_t&) override { return false; }
  bool binary(binary_t&) override { return false; }
  bool parse_error(std::size_t pos, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw std::runtime_error("certificate parse error at byte " + std::to_string(pos) +
                             ": " + ex.what());
  }
};

}  // namespace

RefutationCertificate read_refutation_certificate(std::istream& in) {
  CertificateSax sax;
  if (!nlohmann::json::sax_parse(in, &sax))
    throw std::runtime_error("certificate: unexpected structure");
  RefutationCertificate cert = std::move(sax.cert);
  if (sax.entries.size() != cert.matchings_checked)
    throw std::runtime_error("certificate: witness count does not match matchings_checked");
  cert.witness_snakes.assign(sax.entries.size(), 0);
  std::vector<bool> seen(sax.entries.size(), false);
  for (const auto& [rank, bits] : sax.entries) {
    if (rank >= cert.witness_snakes.size() || seen[rank])
      throw std::runtime_error("certificate: witness ranks must cover each matching once");
    seen[rank] = true;
    cert.witness_snakes[rank] = bits;
  }
  return cert;
}

}  // namespace shatter
