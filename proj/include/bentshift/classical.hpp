#pragma once

// Classical hidden-shift solvers and the consistent-candidate census used to
// demonstrate the exponential classical cost without dual access.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "bentshift/errors.hpp"
#include "bentshift/families.hpp"
#include "bentshift/gf2.hpp"
#include "bentshift/oracle.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

/// Adaptive solver for f(x, y) = x . pi(y) with dual access, 3m + 1 queries:
///   g(0, 0)                      -> s . pi(s')
///   g(e_i, 0) xor g(0, 0)        -> pi(s')_i
///   dual(pi(s'), e_i)            -> s'_i
///   g(0, pi^-1(e_i) + s')        -> s_i
/// Returns (s, s') with s on the low m bits.
inline BitVec adaptive_mm_solve(ShiftOracle& oracle, const MMDescriptor& d) {
  d.validate();
  if (!std::holds_alternative<MMDescriptor>(oracle.family())) {
    throw DomainError("adaptive_mm_solve: instance is not Maiorana-McFarland");
  }
  if (!d.g_is_zero()) throw DomainError("adaptive_mm_solve: requires g = 0 in the descriptor");
  if (oracle.n() != 2 * d.m) throw ContractViolation("adaptive_mm_solve: descriptor size does not match oracle");
  if (!oracle.has_dual()) throw AccessDenied("adaptive_mm_solve needs an oracle with dual access");

  const unsigned m = d.m;
  const auto pi_inv = inverse_permutation(d.pi);
  auto point = [m](std::uint64_t x, std::uint64_t y) { return detail::join_halves(x, y, m); };

  const bool base = oracle.query_g(point(0, 0));
  std::uint64_t pi_s2 = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (oracle.query_g(point(std::uint64_t{1} << i, 0)) != base) pi_s2 |= std::uint64_t{1} << i;
  }
  std::uint64_t s2 = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (oracle.query_dual(point(pi_s2, std::uint64_t{1} << i))) s2 |= std::uint64_t{1} << i;
  }
  std::uint64_t s1 = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (oracle.query_g(point(0, pi_inv[std::uint64_t{1} << i] ^ s2))) s1 |= std::uint64_t{1} << i;
  }
  return BitVec::from_index(point(s1, s2), 2 * m);
}

/// Recovers s from full tables: W_g(w) sign(W_f(w)) = 2^(n/2) (-1)^(w.s), and
/// transforming back concentrates everything on s.
inline BitVec spectral_deconvolve(const TruthTable& f, const TruthTable& g) {
  if (f.n() != g.n()) throw ContractViolation("spectral_deconvolve: variable count mismatch");
  const Spectrum wf = wht(f);
  if (!is_bent(wf)) throw DomainError("spectral_deconvolve: f is not bent");
  const Spectrum wg = wht(g);
  std::vector<std::int64_t> c(f.size());
  for (std::uint64_t w = 0; w < f.size(); ++w) c[w] = wf[w] < 0 ? -wg[w] : wg[w];
  fwht_inplace(std::span<std::int64_t>(c));

  // a true shift gives exactly 2^n * 2^(n/2) at s and 0 elsewhere
  const std::int64_t peak = std::int64_t{1} << (f.n() + f.n() / 2);
  std::optional<std::uint64_t> found;
  for (std::uint64_t x = 0; x < c.size(); ++x) {
    if (c[x] == 0) continue;
    if (c[x] != peak || found) throw InconsistentInput("spectral_deconvolve: g is not a shift of f");
    found = x;
  }
  if (!found) throw InconsistentInput("spectral_deconvolve: g is not a shift of f");
  return BitVec::from_index(*found, f.n());
}

/// Reads both tables through the oracle (2 * 2^n queries) and deconvolves.
inline BitVec exhaustive_solve(ShiftOracle& oracle) {
  const unsigned n = oracle.n();
  TruthTable f(n);
  TruthTable g(n);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    f.set(x, oracle.query_f(x));
    g.set(x, oracle.query_g(x));
  }
  return spectral_deconvolve(f, g);
}

// ---------------------------------------------------------------------------
// Census of consistent shifts

inline constexpr unsigned kMaxCensusHalf = 4;

/// Instance from the adversarial subfamily: f(x, y) = x . pi(y), random pi,
/// shift (0, s2) with s2 uniform.
inline HiddenShiftInstance census_instance(unsigned m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MMDescriptor d = random_mm(m, rng, /*zero_g=*/true);
  const std::uint64_t s2 = rng() & ((std::uint64_t{1} << m) - 1);
  return make_instance(d, BitVec::from_index(detail::join_halves(0, s2, m), 2 * m));
}

struct CensusResult {
  std::uint64_t consistent = 0;  ///< shifts t for which some x . pi'(y) explains every answer
  std::uint64_t queries = 0;     ///< queries actually spent (capped by the table size)
};

namespace detail {

// Kuhn's augmenting-path matching: can every constrained point receive a
// distinct value from its allowed set?
inline bool has_injective_assignment(const std::vector<std::vector<std::uint32_t>>& allowed, std::size_t values) {
  std::vector<int> owner(values, -1);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t p) -> bool {
    for (auto v : allowed[p]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (owner[v] < 0 || augment(static_cast<std::size_t>(owner[v]))) {
        owner[v] = static_cast<int>(p);
        return true;
      }
    }
    return false;
  };
  for (std::size_t p = 0; p < allowed.size(); ++p) {
    visited.assign(values, 0);
    if (!augment(p)) return false;
  }
  return true;
}

struct LinearConstraint {
  std::uint64_t coeff;  // c with c . pi'(point) = rhs
  bool rhs;
};

}  // namespace detail

/// Spends `budget` queries alternating g and f (g first), then counts every
/// candidate shift t = (t1, t2) in Z_2^(2m) for which some permutation pi'
/// makes f'(x, y) = x . pi'(y) agree with all f answers and f'(. + t) with all
/// g answers. g probes visit points in a seeded random order; f probes read
/// pi(y) bitwise at y-coordinates already probed on g, falling back to random
/// unqueried points. The query sequence is a prefix-stable function of the
/// seed, so the count is non-increasing in the budget.
inline CensusResult candidate_census(ShiftOracle& oracle, std::uint64_t budget, std::uint64_t seed) {
  const unsigned n = oracle.n();
  if (n % 2 != 0) throw DomainError("candidate_census: n must be even");
  const unsigned m = n / 2;
  if (m > kMaxCensusHalf) throw ResourceError("candidate_census: m exceeds 4");
  const auto* mm = std::get_if<MMDescriptor>(&oracle.family());
  if (mm == nullptr || !mm->g_is_zero()) {
    throw DomainError("candidate_census: needs a Maiorana-McFarland instance with g = 0");
  }

  const std::uint64_t points = std::uint64_t{1} << n;
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> g_order(points);
  std::vector<std::uint64_t> f_fallback(points);
  for (std::uint64_t i = 0; i < points; ++i) g_order[i] = f_fallback[i] = i;
  std::shuffle(g_order.begin(), g_order.end(), rng);
  std::shuffle(f_fallback.begin(), f_fallback.end(), rng);

  std::vector<bool> g_seen(points, false);
  std::vector<bool> f_seen(points, false);
  std::vector<std::pair<std::uint64_t, bool>> g_answers;
  std::vector<std::pair<std::uint64_t, bool>> f_answers;
  std::size_t g_next = 0;
  std::size_t f_fallback_next = 0;
  std::vector<std::uint64_t> f_targets;  // adaptive f probes queued from g probes
  std::size_t f_target_next = 0;

  auto next_f_point = [&]() -> std::optional<std::uint64_t> {
    while (f_target_next < f_targets.size()) {
      const auto p = f_targets[f_target_next++];
      if (!f_seen[p]) return p;
    }
    while (f_fallback_next < f_fallback.size()) {
      const auto p = f_fallback[f_fallback_next++];
      if (!f_seen[p]) return p;
    }
    return std::nullopt;
  };

  CensusResult result;
  bool g_exhausted = false;
  bool f_exhausted = false;
  for (std::uint64_t k = 0; result.queries < budget && !(g_exhausted && f_exhausted); ++k) {
    if (k % 2 == 0) {
      if (g_next == g_order.size()) {
        g_exhausted = true;
        continue;
      }
      const auto p = g_order[g_next++];
      g_seen[p] = true;
      g_answers.emplace_back(p, oracle.query_g(p));
      const auto y = detail::high_half(p, m);
      for (unsigned i = 0; i < m; ++i) f_targets.push_back(detail::join_halves(std::uint64_t{1} << i, y, m));
    } else {
      const auto p = next_f_point();
      if (!p) {
        f_exhausted = true;
        continue;
      }
      f_seen[*p] = true;
      f_answers.emplace_back(*p, oracle.query_f(*p));
    }
    ++result.queries;
  }

  const std::uint64_t values = std::uint64_t{1} << m;
  for (std::uint64_t t = 0; t < points; ++t) {
    const std::uint64_t t1 = detail::low_half(t, m);
    const std::uint64_t t2 = detail::high_half(t, m);
    // constraints on pi'(p) for each p in Z_2^m
    std::vector<std::vector<detail::LinearConstraint>> cons(values);
    for (const auto& [p, a] : f_answers) cons[detail::high_half(p, m)].push_back({detail::low_half(p, m), a});
    for (const auto& [p, b] : g_answers) {
      cons[detail::high_half(p, m) ^ t2].push_back({detail::low_half(p, m) ^ t1, b});
    }
    std::vector<std::vector<std::uint32_t>> allowed;
    bool feasible = true;
    for (std::uint64_t p = 0; p < values && feasible; ++p) {
      if (cons[p].empty()) continue;
      std::vector<std::uint32_t> ok;
      for (std::uint32_t z = 0; z < values; ++z) {
        const bool fits = std::all_of(cons[p].begin(), cons[p].end(),
                                      [z](const auto& c) { return parity(c.coeff & z) == c.rhs; });
        if (fits) ok.push_back(z);
      }
      if (ok.empty()) feasible = false;
      allowed.push_back(std::move(ok));
    }
    if (feasible && detail::has_injective_assignment(allowed, values)) ++result.consistent;
  }
  return result;
}

}  // namespace bentshift
