#pragma once

// The JSON report behind `verify`: every bentness predicate plus a spectrum summary.

#include <map>
#include <string>

#include "bentshift/combinatorial.hpp"
#include "bentshift/io.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

inline constexpr int kReportSchema = 1;

/// Quadratic-time checks (difference set, derivatives) are skipped above this size.
inline constexpr unsigned kMaxQuadraticCheckVariables = 14;

inline json verify_report(const TruthTable& f) {
  const unsigned n = f.n();
  const Spectrum spec = wht(f);
  const std::int64_t flat_value = n % 2 == 0 ? std::int64_t{1} << (n / 2) : -1;
  bool flat = true;
  std::map<std::int64_t, std::uint64_t> histogram;
  for (auto c : spec.coeffs) {
    const std::int64_t a = c < 0 ? -c : c;
    if (a != flat_value) flat = false;
    ++histogram[c];
  }
  const bool bent = n % 2 == 0 && flat;

  json r;
  r["schema"] = kReportSchema;
  r["n"] = n;
  r["bent"] = bent;
  r["flat"] = flat;
  if (n % 2 != 0) {
    r["reason"] = "n odd";
  } else if (!bent) {
    r["reason"] = "spectrum not flat";
  }
  r["weight"] = f.weight();
  r["degree"] = degree(f);
  r["nonlinearity"] = nonlinearity(spec);
  r["self_dual"] = bent ? json(dual(spec) == f) : json(nullptr);

  json values = json::array();
  for (const auto& [value, count] : histogram) values.push_back({{"value", value}, {"count", count}});
  r["spectrum"] = {{"max_abs", spec.max_abs()}, {"values", values}};

  if (n <= kMaxQuadraticCheckVariables) {
    const auto ds = difference_set_check(f);
    r["difference_set"] = {{"v", ds.v},
                           {"k", ds.k},
                           {"lambda", ds.lambda},
                           {"uniform", ds.uniform},
                           {"bent_parameters", ds.has_bent_parameters()},
                           {"bent", difference_set_bent(ds)}};
    r["balanced_derivatives"] = balanced_derivative_check(f);
  } else {
    r["difference_set"] = nullptr;
    r["balanced_derivatives"] = nullptr;
  }
  r["hadamard"] = n <= kMaxHadamardVariables ? json(circulant_hadamard_check(f)) : json(nullptr);
  return r;
}

}  // namespace bentshift
