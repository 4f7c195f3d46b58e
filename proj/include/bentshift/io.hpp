#pragma once

// Text and JSON serialization: truth tables, spectra, family descriptors,
// instances and run transcripts.
//
// Truth-table file:
//   n=<k>
//   <hex>       max(1, 2^k / 4) digits; digit i holds bits 4i..4i+3, low bit first

#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bentshift/descriptor.hpp"
#include "bentshift/errors.hpp"
#include "bentshift/oracle.hpp"
#include "bentshift/quantum.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Truth tables

inline std::string to_hex(const TruthTable& f) {
  static constexpr char digits[] = "0123456789abcdef";
  const std::uint64_t len = f.size() < 4 ? 1 : f.size() / 4;
  std::string out(len, '0');
  for (std::uint64_t i = 0; i < len; ++i) {
    unsigned nibble = 0;
    for (unsigned j = 0; j < 4 && 4 * i + j < f.size(); ++j) nibble |= unsigned{f.get(4 * i + j)} << j;
    out[i] = digits[nibble];
  }
  return out;
}

namespace detail {
inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace detail

/// Parses the digit string for an n-variable table. `line` is used in errors.
inline TruthTable from_hex(unsigned n, std::string_view hex, std::size_t line = 1) {
  if (n < 1 || n > kMaxVariables) throw ParseError(line, 0, "variable count out of range");
  TruthTable f(n);
  const std::uint64_t len = f.size() < 4 ? 1 : f.size() / 4;
  if (hex.size() != len) {
    throw ParseError(line, std::min<std::size_t>(hex.size(), len),
                     "expected " + std::to_string(len) + " hex digits, got " + std::to_string(hex.size()));
  }
  for (std::uint64_t i = 0; i < len; ++i) {
    const int v = detail::hex_value(hex[i]);
    if (v < 0) throw ParseError(line, i, std::string("invalid hex digit '") + hex[i] + "'");
    for (unsigned j = 0; j < 4; ++j) {
      const bool bit = (v >> j) & 1;
      if (4 * i + j < f.size()) {
        f.set(4 * i + j, bit);
      } else if (bit) {
        throw ParseError(line, i, "bits set beyond 2^n");
      }
    }
  }
  return f;
}

inline void write_truth_table(std::ostream& os, const TruthTable& f) { os << "n=" << f.n() << '\n' << to_hex(f) << '\n'; }

inline TruthTable read_truth_table(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError(1, 0, "empty input");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.rfind("n=", 0) != 0) throw ParseError(1, 0, "expected 'n=<count>'");
  unsigned n = 0;
  const char* first = header.data() + 2;
  const char* last = header.data() + header.size();
  auto res = std::from_chars(first, last, n);
  if (res.ec != std::errc{} || res.ptr != last || first == last) {
    throw ParseError(1, static_cast<std::size_t>(res.ptr - header.data()), "malformed variable count");
  }
  if (n < 1 || n > kMaxVariables) throw ParseError(1, 2, "variable count out of range [1, 26]");
  std::string body;
  if (!std::getline(is, body)) throw ParseError(2, 0, "missing table line");
  if (!body.empty() && body.back() == '\r') body.pop_back();
  TruthTable f = from_hex(n, body, 2);
  std::string rest;
  std::size_t line = 3;
  while (std::getline(is, rest)) {
    if (rest.find_first_not_of(" \t\r") != std::string::npos) throw ParseError(line, 0, "unexpected trailing content");
    ++line;
  }
  return f;
}

inline void save_truth_table(const std::filesystem::path& path, const TruthTable& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_truth_table(os, f);
}

inline TruthTable load_truth_table(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_truth_table(is);
}

// ---------------------------------------------------------------------------
// Spectra

inline json spectrum_json(const Spectrum& s) { return json{{"n", s.n}, {"coefficients", s.coeffs}}; }

inline Spectrum spectrum_from_json(const json& j) {
  Spectrum s;
  s.n = j.at("n").get<unsigned>();
  s.coeffs = j.at("coefficients").get<std::vector<std::int64_t>>();
  if (s.coeffs.size() != (std::size_t{1} << s.n)) throw DomainError("spectrum: expected 2^n coefficients");
  return s;
}

// ---------------------------------------------------------------------------
// Family descriptors

namespace detail {

inline json table_json(const TruthTable& t) { return json{{"n", t.n()}, {"hex", to_hex(t)}}; }

inline TruthTable table_from_json(const json& j) { return from_hex(j.at("n").get<unsigned>(), j.at("hex").get<std::string>()); }

inline std::vector<std::string> elements_hex(const GF2k& field, const std::vector<std::uint32_t>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(FieldElement(field, v).to_hex());
  return out;
}

inline std::vector<std::uint32_t> elements_from_json(const GF2k& field, const json& j) {
  std::vector<std::uint32_t> out;
  for (const auto& e : j) out.push_back(parse_element(field, e.get<std::string>()).value());
  return out;
}

}  // namespace detail

inline json descriptor_json(const FamilyDescriptor& d) {
  json j = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InnerProductFamily>) {
          return {{"m", v.m}};
        } else if constexpr (std::is_same_v<T, MMDescriptor>) {
          return {{"m", v.m}, {"pi", v.pi}, {"g", detail::table_json(v.g)}};
        } else if constexpr (std::is_same_v<T, QuadraticForm>) {
          return {{"n", v.n}, {"q", v.q.to_strings()}, {"l", v.l.to_string()}};
        } else if constexpr (std::is_same_v<T, PartialSpreadDescriptor>) {
          return {{"field", v.field.name()}, {"slopes", detail::elements_hex(v.field, v.slopes)}};
        } else if constexpr (std::is_same_v<T, DobbertinDescriptor>) {
          return {{"field", v.field.name()},
                  {"g", detail::table_json(v.g)},
                  {"phi", v.phi},
                  {"psi", v.psi}};
        } else {
          return {{"field", v.subfield.name()}, {"a", FieldElement(v.subfield, v.a).to_hex()}};
        }
      },
      d);
  j["family"] = family_tag(d);
  return j;
}

/// Inverse of descriptor_json. Malformed or invalid input -> DomainError.
inline FamilyDescriptor descriptor_from_json(const json& j) {
  try {
    const auto tag = j.at("family").get<std::string>();
    if (tag == "ip") return InnerProductFamily{j.at("m").get<unsigned>()};
    if (tag == "mm") {
      MMDescriptor d{j.at("m").get<unsigned>(), j.at("pi").get<std::vector<std::uint32_t>>(),
                     detail::table_from_json(j.at("g"))};
      d.validate();
      return d;
    }
    if (tag == "quadratic") {
      const auto n = j.at("n").get<unsigned>();
      QuadraticForm qf{n, BitMatrix::from_strings(j.at("q").get<std::vector<std::string>>()),
                       BitVec::from_string(j.at("l").get<std::string>())};
      qf.validate();
      return qf;
    }
    if (tag == "ps") {
      const auto field = GF2k::from_name(j.at("field").get<std::string>());
      PartialSpreadDescriptor d{field, detail::elements_from_json(field, j.at("slopes"))};
      d.validate();
      return d;
    }
    if (tag == "dobbertin") {
      const auto field = GF2k::from_name(j.at("field").get<std::string>());
      DobbertinDescriptor d{field, detail::table_from_json(j.at("g")),
                            j.at("phi").get<std::vector<std::uint32_t>>(),
                            j.at("psi").get<std::vector<std::uint32_t>>()};
      d.validate();
      return d;
    }
    if (tag == "trace") {
      const auto field = GF2k::from_name(j.at("field").get<std::string>());
      return TraceMonomialFamily{field, parse_element(field, j.at("a").get<std::string>()).value()};
    }
    throw DomainError("unknown family '" + tag + "'");
  } catch (const json::exception& e) {
    throw DomainError(std::string("descriptor JSON: ") + e.what());
  } catch (const ParseError& e) {
    throw DomainError(std::string("descriptor JSON: ") + e.what());
  } catch (const ContractViolation& e) {
    throw DomainError(std::string("descriptor JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Instances: public part and secret kept in separate files

struct InstanceFiles {
  std::filesystem::path descriptor;
  std::filesystem::path f;
  std::filesystem::path g;
  std::filesystem::path dual;
  std::filesystem::path secret;

  static InstanceFiles in(const std::filesystem::path& dir) {
    return {dir / "descriptor.json", dir / "f.tt", dir / "g.tt", dir / "dual.tt", dir / "secret.json"};
  }
};

inline json secret_json(const BitVec& s) { return json{{"n", s.size()}, {"s", s.to_string()}}; }

/// Writes descriptor, f, g, dual (if any) and, unless `with_secret` is false,
/// the shift into `dir`. Without the secret file the directory is a blind challenge.
inline InstanceFiles export_instance(const HiddenShiftInstance& inst, const std::filesystem::path& dir,
                                     bool with_secret = true) {
  std::filesystem::create_directories(dir);
  const auto files = InstanceFiles::in(dir);
  std::ofstream(files.descriptor) << descriptor_json(inst.family).dump(2) << '\n';
  save_truth_table(files.f, inst.f);
  save_truth_table(files.g, inst.g);
  if (inst.f_dual) save_truth_table(files.dual, *inst.f_dual);
  if (with_secret) std::ofstream(files.secret) << secret_json(inst.s).dump(2) << '\n';
  return files;
}

/// Rebuilds an instance from an exported directory. The tables are checked
/// against the descriptor and the secret.
inline HiddenShiftInstance import_instance(const std::filesystem::path& dir) {
  const auto files = InstanceFiles::in(dir);
  std::ifstream ds(files.descriptor);
  if (!ds) throw std::runtime_error("cannot read " + files.descriptor.string());
  const auto family = descriptor_from_json(json::parse(ds));
  std::ifstream ss(files.secret);
  if (!ss) throw std::runtime_error("cannot read " + files.secret.string());
  const json secret = json::parse(ss);
  auto inst = make_instance(family, BitVec::from_string(secret.at("s").get<std::string>()));
  if (!(load_truth_table(files.f) == inst.f) || !(load_truth_table(files.g) == inst.g)) {
    throw InconsistentInput("import_instance: tables disagree with descriptor and secret");
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Query counters and transcripts

inline json stats_json(const QueryStats& q) {
  return json{{"f", q.f},           {"g", q.g},           {"dual", q.dual},
              {"phase_f", q.phase_f}, {"phase_g", q.phase_g}, {"phase_dual", q.phase_dual},
              {"total", q.total()}};
}

inline json transcript_json(const RunTranscript& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back({{"label", s.label}, {"norm_squared", s.norm_squared}});
  return json{{"steps", steps}, {"outcomes", t.outcomes}, {"queries", stats_json(t.queries)}};
}

}  // namespace bentshift
