#pragma once

// A tagged union over every constructible family, so instances and CLI
// commands can name "which bent function" as plain data.

#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "bentshift/families.hpp"
#include "bentshift/gf2k.hpp"

namespace bentshift {

struct InnerProductFamily {
  unsigned m = 0;
  friend bool operator==(const InnerProductFamily&, const InnerProductFamily&) = default;
};

/// tr(a x^(2^m - 1)) on 2m variables with a taken from GF(2^m).
struct TraceMonomialFamily {
  GF2k subfield{2};
  std::uint32_t a = 0;
  friend bool operator==(const TraceMonomialFamily&, const TraceMonomialFamily&) = default;
};

using FamilyDescriptor = std::variant<InnerProductFamily, MMDescriptor, QuadraticForm,
                                      PartialSpreadDescriptor, DobbertinDescriptor, TraceMonomialFamily>;

inline std::string family_tag(const FamilyDescriptor& d) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InnerProductFamily>) return "ip";
        else if constexpr (std::is_same_v<T, MMDescriptor>) return "mm";
        else if constexpr (std::is_same_v<T, QuadraticForm>) return "quadratic";
        else if constexpr (std::is_same_v<T, PartialSpreadDescriptor>) return "ps";
        else if constexpr (std::is_same_v<T, DobbertinDescriptor>) return "dobbertin";
        else return "trace";
      },
      d);
}

inline unsigned variable_count(const FamilyDescriptor& d) {
  return std::visit(
      [](const auto& v) -> unsigned {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InnerProductFamily>) return 2 * v.m;
        else if constexpr (std::is_same_v<T, MMDescriptor>) return 2 * v.m;
        else if constexpr (std::is_same_v<T, QuadraticForm>) return v.n;
        else if constexpr (std::is_same_v<T, TraceMonomialFamily>) return 2 * v.subfield.degree();
        else return 2 * v.m();
      },
      d);
}

inline TruthTable build_function(const FamilyDescriptor& d) {
  return std::visit(
      [](const auto& v) -> TruthTable {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InnerProductFamily>) return inner_product(v.m);
        else if constexpr (std::is_same_v<T, MMDescriptor>) return maiorana_mcfarland(v);
        else if constexpr (std::is_same_v<T, QuadraticForm>) return quadratic(v);
        else if constexpr (std::is_same_v<T, PartialSpreadDescriptor>) return partial_spread(v);
        else if constexpr (std::is_same_v<T, DobbertinDescriptor>) return dobbertin(v);
        else return trace_monomial_from_subfield(FieldElement(v.subfield, v.a)).table;
      },
      d);
}

/// Dual from a closed form where one is known (inner product, Maiorana-McFarland).
inline std::optional<TruthTable> closed_form_dual(const FamilyDescriptor& d) {
  if (const auto* ip = std::get_if<InnerProductFamily>(&d)) return inner_product(ip->m);
  if (const auto* mm = std::get_if<MMDescriptor>(&d)) return mm_dual(*mm);
  return std::nullopt;
}

/// Random member of the named family on 2m variables (or n = 2m for quadratic).
/// Families: ip, mm, quadratic, ps, dobbertin, trace.
inline FamilyDescriptor random_family(const std::string& tag, unsigned m, std::mt19937_64& rng) {
  if (tag == "ip") return InnerProductFamily{m};
  if (tag == "mm") return random_mm(m, rng);
  if (tag == "mm0") return random_mm(m, rng, /*zero_g=*/true);
  if (tag == "quadratic") return random_quadratic_bent(2 * m, rng);
  if (tag == "ps") return random_partial_spread(m, rng);
  if (tag == "dobbertin") return random_dobbertin(m, rng);
  if (tag == "trace") {
    const GF2k sub(m);
    return TraceMonomialFamily{sub, find_kloosterman_zero(sub).value()};
  }
  throw DomainError("unknown family '" + tag + "'");
}

}  // namespace bentshift
