#pragma once

// GF(2^k) arithmetic in polynomial basis, k <= 16.
//
// An element is the bitmask of its coefficients: bit i is the coefficient of
// x^i. The reduction polynomial includes its leading x^k bit, e.g. x^2+x+1 is
// 0b111.

#include <bit>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bentshift/errors.hpp"

namespace bentshift {

namespace poly2 {

/// Carry-less product of two polynomials over GF(2).
inline std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept {
  std::uint64_t acc = 0;
  std::uint64_t aa = a;
  while (b != 0) {
    if (b & 1u) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return acc;
}

inline int degree(std::uint64_t p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t p) noexcept {
  const int dp = degree(p);
  for (int da = degree(a); da >= dp; da = degree(a)) a ^= p << (da - dp);
  return a;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return mod(clmul(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)), p);
}

/// Irreducibility of `p` (degree k): x^(2^k) = x mod p and
/// gcd(x^(2^d) - x, p) = 1 for every proper divisor d of k.
inline bool is_irreducible(std::uint64_t p) noexcept {
  const int k = degree(p);
  if (k < 1) return false;
  if (k == 1) return true;
  // frob[d] = x^(2^d) mod p
  std::vector<std::uint64_t> frob(static_cast<std::size_t>(k) + 1);
  frob[0] = mod(2, p);
  for (int d = 1; d <= k; ++d) frob[d] = mulmod(frob[d - 1], frob[d - 1], p);
  if (frob[k] != mod(2, p)) return false;
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    if (gcd(frob[d] ^ mod(2, p), p) != 1) return false;
  }
  return true;
}

}  // namespace poly2

/// Immutable description of GF(2^k): degree plus reduction polynomial.
class GF2k {
 public:
  static constexpr unsigned kMaxDegree = 16;

  /// Field with the lexicographically smallest irreducible of degree k.
  explicit GF2k(unsigned k) : k_(k), poly_(default_poly(k)) {}

  GF2k(unsigned k, std::uint32_t poly) : k_(k), poly_(poly) {
    check_degree(k);
    if (poly2::degree(poly) != static_cast<int>(k)) {
      throw DomainError("GF2k: reduction polynomial has wrong degree");
    }
    if (!poly2::is_irreducible(poly)) throw DomainError("GF2k: reduction polynomial is reducible");
  }

  static std::uint32_t default_poly(unsigned k) {
    check_degree(k);
    for (std::uint32_t p = 1u << k; p < (2u << k); ++p) {
      if (poly2::is_irreducible(p)) return p;
    }
    throw SearchExhausted("GF2k: no irreducible polynomial found");  // unreachable
  }

  unsigned degree() const noexcept { return k_; }
  std::uint32_t poly() const noexcept { return poly_; }
  std::uint32_t order() const noexcept { return 1u << k_; }
  bool contains(std::uint32_t v) const noexcept { return v < order(); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(poly2::mod(poly2::clmul(a, b), poly_));
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint32_t result = 1;
    while (e != 0) {
      if (e & 1u) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("GF2k: inverse of zero");
    return pow(a, order() - 2);
  }

  /// Absolute trace a + a^2 + ... + a^(2^(k-1)), which lies in GF(2).
  bool trace(std::uint32_t a) const noexcept {
    std::uint32_t acc = 0;
    for (unsigned i = 0; i < k_; ++i) {
      acc ^= a;
      a = mul(a, a);
    }
    return acc == 1;
  }

  /// "gf2_<k>_poly<hex>"
  std::string name() const {
    char buf[16];
    auto res = std::to_chars(buf, buf + sizeof buf, poly_, 16);
    return "gf2_" + std::to_string(k_) + "_poly" + std::string(buf, res.ptr);
  }

  static GF2k from_name(std::string_view name) {
    constexpr std::string_view prefix = "gf2_";
    const auto sep = name.find("_poly");
    if (name.substr(0, prefix.size()) != prefix || sep == std::string_view::npos) {
      throw DomainError("GF2k: malformed field name '" + std::string(name) + "'");
    }
    unsigned k = 0;
    std::uint32_t poly = 0;
    const auto kstr = name.substr(prefix.size(), sep - prefix.size());
    const auto pstr = name.substr(sep + 5);
    auto r1 = std::from_chars(kstr.data(), kstr.data() + kstr.size(), k);
    auto r2 = std::from_chars(pstr.data(), pstr.data() + pstr.size(), poly, 16);
    if (r1.ec != std::errc{} || r1.ptr != kstr.data() + kstr.size() || r2.ec != std::errc{} ||
        r2.ptr != pstr.data() + pstr.size()) {
      throw DomainError("GF2k: malformed field name '" + std::string(name) + "'");
    }
    return GF2k(k, poly);
  }

  friend bool operator==(const GF2k&, const GF2k&) = default;

 private:
  static void check_degree(unsigned k) {
    if (k < 1 || k > kMaxDegree) throw ResourceError("GF2k: degree must be in [1, 16]");
  }

  unsigned k_;
  std::uint32_t poly_;
};

/// An element together with the field it belongs to.
class FieldElement {
 public:
  FieldElement(GF2k field, std::uint32_t value) : field_(field), value_(value) {
    if (!field_.contains(value)) throw ContractViolation("FieldElement: value out of range");
  }

  const GF2k& field() const noexcept { return field_; }
  std::uint32_t value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.value_ ^ b.value_};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

  FieldElement inv() const { return {field_, field_.inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
  bool trace() const noexcept { return field_.trace(value_); }

  std::string to_hex() const {
    char buf[16];
    auto res = std::to_chars(buf, buf + sizeof buf, value_, 16);
    return std::string(buf, res.ptr);
  }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_)) throw ContractViolation("FieldElement: operands from different fields");
  }

  GF2k field_;
  std::uint32_t value_;
};

inline FieldElement parse_element(const GF2k& field, std::string_view hex) {
  std::uint32_t v = 0;
  auto res = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (res.ec != std::errc{} || res.ptr != hex.data() + hex.size() || !field.contains(v)) {
    throw DomainError("malformed field element '" + std::string(hex) + "' for " + field.name());
  }
  return {field, v};
}

/// Kl(a) = sum over nonzero x of (-1)^tr(1/x + a x). Direct O(2^k) summation.
inline std::int64_t kloosterman(const GF2k& field, std::uint32_t a) {
  std::int64_t sum = 0;
  for (std::uint32_t x = 1; x < field.order(); ++x) {
    sum += field.trace(field.inv(x) ^ field.mul(a, x)) ? -1 : 1;
  }
  return sum;
}

inline std::int64_t kloosterman(const FieldElement& a) { return kloosterman(a.field(), a.value()); }

/// Smallest nonzero a with Kl(a) = -1.
inline FieldElement find_kloosterman_zero(const GF2k& field) {
  for (std::uint32_t a = 1; a < field.order(); ++a) {
    if (kloosterman(field, a) == -1) return {field, a};
  }
  throw SearchExhausted("no nonzero a with Kl(a) = -1 in " + field.name());
}

/// Field embedding GF(2^d) -> GF(2^k) for d | k, sending the generator x of the
/// small field to the smallest root of its reduction polynomial in the big one.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(GF2k sub, GF2k big) : sub_(sub), big_(big) {
    if (big.degree() % sub.degree() != 0) {
      throw DomainError("SubfieldEmbedding: degree does not divide");
    }
    for (std::uint32_t b = 0; b < big.order(); ++b) {
      if (evaluate_sub_poly(b) == 0) {
        root_ = b;
        return;
      }
    }
    throw SearchExhausted("SubfieldEmbedding: reduction polynomial has no root");
  }

  const GF2k& sub() const noexcept { return sub_; }
  const GF2k& big() const noexcept { return big_; }
  std::uint32_t root() const noexcept { return root_; }

  FieldElement operator()(const FieldElement& a) const {
    if (!(a.field() == sub_)) throw ContractViolation("SubfieldEmbedding: element from wrong field");
    std::uint32_t acc = 0;
    std::uint32_t power = 1;
    for (unsigned i = 0; i < sub_.degree(); ++i) {
      if ((a.value() >> i) & 1u) acc ^= power;
      power = big_.mul(power, root_);
    }
    return {big_, acc};
  }

 private:
  std::uint32_t evaluate_sub_poly(std::uint32_t b) const {
    std::uint32_t acc = 0;
    std::uint32_t power = 1;
    for (unsigned i = 0; i <= sub_.degree(); ++i) {
      if ((sub_.poly() >> i) & 1u) acc ^= power;
      power = big_.mul(power, b);
    }
    return acc;
  }

  GF2k sub_;
  GF2k big_;
  std::uint32_t root_ = 0;
};

}  // namespace bentshift
