#pragma once

// Combinatorial characterizations of bentness, used as independent oracles
// against the spectral test.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "bentshift/errors.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

struct DifferenceSetReport {
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;  ///< common count when uniform, else 0
  bool uniform = false;
  /// counts[d] = #{(a, b) in D x D : a xor b = d}, for d != 0 (counts[0] unused)
  std::vector<std::uint64_t> counts;

  /// k in {2^(n-1) +- 2^((n-2)/2)} for even n; the bent difference-set sizes.
  bool has_bent_parameters() const {
    if (v < 4) return false;
    const unsigned n = static_cast<unsigned>(std::countr_zero(v));
    if (n % 2 != 0) return false;
    const std::uint64_t half = v / 2;
    const std::uint64_t delta = std::uint64_t{1} << ((n - 2) / 2);
    return k == half + delta || k == half - delta;
  }

  std::uint64_t total_differences() const {
    std::uint64_t t = 0;
    for (std::size_t d = 1; d < counts.size(); ++d) t += counts[d];
    return t;
  }
};

/// Pairwise differences of D_f = {x : f(x) = 1} by direct O(|D|^2) enumeration.
inline DifferenceSetReport difference_set_check(const TruthTable& f) {
  std::vector<std::uint64_t> support;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (f.get(x)) support.push_back(x);
  }
  DifferenceSetReport r;
  r.v = f.size();
  r.k = support.size();
  r.counts.assign(f.size(), 0);
  for (auto a : support) {
    for (auto b : support) {
      if (a != b) ++r.counts[a ^ b];
    }
  }
  const auto first = r.counts.size() > 1 ? r.counts[1] : 0;
  r.uniform = std::all_of(r.counts.begin() + 1, r.counts.end(), [first](auto c) { return c == first; });
  r.lambda = r.uniform ? first : 0;
  return r;
}

/// Full bentness verdict from the difference-set side.
inline bool difference_set_bent(const DifferenceSetReport& r) { return r.uniform && r.has_bent_parameters(); }

inline constexpr unsigned kMaxHadamardVariables = 12;

/// A_f = ((-1)^f(x+y)) is Hadamard iff the sign-vector autocorrelation vanishes
/// off zero. Checked through convolve(f, f), not a dense 2^n x 2^n product.
inline bool circulant_hadamard_check(const TruthTable& f) {
  if (f.n() > kMaxHadamardVariables) throw ResourceError("circulant_hadamard_check: n exceeds 12");
  const auto c = convolve(f, f);
  for (std::uint64_t x = 1; x < c.size(); ++x) {
    if (c[x] != 0) return false;
  }
  return c[0] == static_cast<std::int64_t>(f.size());
}

/// Every nonzero-direction derivative is balanced.
inline bool balanced_derivative_check(const TruthTable& f) {
  for (std::uint64_t h = 1; h < f.size(); ++h) {
    std::uint64_t weight = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x) weight += f.get(x) != f.get(x ^ h);
    if (weight != f.size() / 2) return false;
  }
  return true;
}

}  // namespace bentshift
