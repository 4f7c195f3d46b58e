#pragma once

// Constructors for the classical bent-function families.
//
// Functions on 2m variables split their input as (x, y): x is the low m bits
// of the table index and y the high m bits. For the field-based families x and
// y are additionally read as elements of GF(2^m) in polynomial basis.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bentshift/errors.hpp"
#include "bentshift/gf2.hpp"
#include "bentshift/gf2k.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

namespace detail {

inline std::uint64_t low_half(std::uint64_t index, unsigned m) noexcept {
  return index & ((std::uint64_t{1} << m) - 1);
}
inline std::uint64_t high_half(std::uint64_t index, unsigned m) noexcept { return index >> m; }
inline std::uint64_t join_halves(std::uint64_t x, std::uint64_t y, unsigned m) noexcept {
  return x | (y << m);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Permutations

inline bool is_permutation(const std::vector<std::uint32_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline std::vector<std::uint32_t> inverse_permutation(const std::vector<std::uint32_t>& p) {
  if (!is_permutation(p)) throw DomainError("inverse_permutation: not a bijection");
  std::vector<std::uint32_t> inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

inline std::vector<std::uint32_t> identity_permutation(std::size_t size) {
  std::vector<std::uint32_t> p(size);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

inline std::vector<std::uint32_t> random_permutation(std::size_t size, std::mt19937_64& rng) {
  auto p = identity_permutation(size);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// x -> x^e on GF(2^k); a bijection iff gcd(e, 2^k - 1) = 1.
inline std::vector<std::uint32_t> power_permutation(const GF2k& field, std::uint64_t e) {
  std::vector<std::uint32_t> p(field.order());
  for (std::uint32_t x = 0; x < field.order(); ++x) p[x] = x == 0 ? 0 : field.pow(x, e);
  if (!is_permutation(p)) throw DomainError("power_permutation: exponent is not coprime to 2^k - 1");
  return p;
}

/// x -> xA as a table over Z_2^k.
inline std::vector<std::uint32_t> linear_map_table(const BitMatrix& a) {
  const auto masks = detail::row_masks(a);
  std::vector<std::uint32_t> table(std::size_t{1} << a.rows(), 0);
  for (std::uint64_t x = 1; x < table.size(); ++x) {
    table[x] = table[x & (x - 1)] ^ static_cast<std::uint32_t>(masks[std::countr_zero(x)]);
  }
  return table;
}

inline bool is_additive(const std::vector<std::uint32_t>& map) {
  for (std::uint64_t a = 0; a < map.size(); ++a) {
    for (std::uint64_t b = a; b < map.size(); ++b) {
      if (map[a ^ b] != (map[a] ^ map[b])) return false;
    }
  }
  return true;
}

/// Uniformly random balanced function on m variables.
inline TruthTable random_balanced(unsigned m, std::mt19937_64& rng) {
  auto order = random_permutation(std::size_t{1} << m, rng);
  TruthTable g(m);
  for (std::size_t i = 0; i < order.size() / 2; ++i) g.set(order[i], true);
  return g;
}

inline TruthTable random_table(unsigned n, std::mt19937_64& rng) {
  return TruthTable(n, random_bitvec(std::size_t{1} << n, rng));
}

// ---------------------------------------------------------------------------
// Inner product and Maiorana-McFarland

/// ip_m(x, y) = sum_i x_i y_i on 2m variables.
inline TruthTable inner_product(unsigned m) {
  if (m < 1) throw ContractViolation("inner_product: m must be >= 1");
  return TruthTable::from_function(2 * m, [m](std::uint64_t i) {
    return parity(detail::low_half(i, m) & detail::high_half(i, m));
  });
}

/// f(x, y) = x . pi(y) + g(y)
struct MMDescriptor {
  unsigned m = 0;
  std::vector<std::uint32_t> pi;
  TruthTable g;

  void validate() const {
    if (m < 1) throw DomainError("MMDescriptor: m must be >= 1");
    if (pi.size() != (std::size_t{1} << m)) throw DomainError("MMDescriptor: pi has wrong size");
    if (!is_permutation(pi)) throw DomainError("MMDescriptor: pi is not a bijection");
    if (g.n() != m) throw DomainError("MMDescriptor: g must have m variables");
  }

  bool g_is_zero() const { return g.weight() == 0; }

  friend bool operator==(const MMDescriptor&, const MMDescriptor&) = default;
};

inline TruthTable maiorana_mcfarland(const MMDescriptor& d) {
  d.validate();
  const unsigned m = d.m;
  return TruthTable::from_function(2 * m, [&](std::uint64_t i) {
    const auto x = detail::low_half(i, m);
    const auto y = detail::high_half(i, m);
    return parity(x & d.pi[y]) != d.g.get(y);
  });
}

/// Closed-form dual: pi^-1(x) . y + g(pi^-1(x)).
inline TruthTable mm_dual(const MMDescriptor& d) {
  d.validate();
  const unsigned m = d.m;
  const auto inv = inverse_permutation(d.pi);
  return TruthTable::from_function(2 * m, [&](std::uint64_t i) {
    const auto x = detail::low_half(i, m);
    const auto y = detail::high_half(i, m);
    return parity(inv[x] & y) != d.g.get(inv[x]);
  });
}

inline MMDescriptor random_mm(unsigned m, std::mt19937_64& rng, bool zero_g = false) {
  MMDescriptor d;
  d.m = m;
  d.pi = random_permutation(std::size_t{1} << m, rng);
  d.g = zero_g ? TruthTable(m) : random_table(m, rng);
  return d;
}

// ---------------------------------------------------------------------------
// Quadratic forms and Dickson normal form

/// f(x) = x Q x^t + L x^t with Q strictly upper triangular.
struct QuadraticForm {
  unsigned n = 0;
  BitMatrix q;
  BitVec l;

  void validate() const {
    if (n < 1) throw DomainError("QuadraticForm: n must be >= 1");
    if (q.rows() != n || q.cols() != n || l.size() != n) {
      throw DomainError("QuadraticForm: dimension mismatch");
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c <= r; ++c) {
        if (q.get(r, c)) throw DomainError("QuadraticForm: Q must be strictly upper triangular");
      }
    }
  }

  /// B = Q + Q^t
  BitMatrix symplectic() const { return q + q.transpose(); }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

inline TruthTable quadratic(const QuadraticForm& qf) {
  qf.validate();
  const auto masks = detail::row_masks(qf.q);
  const std::uint64_t lin = qf.l.to_index();
  std::vector<std::uint64_t> xq(std::size_t{1} << qf.n, 0);
  TruthTable f(qf.n);
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    xq[x] = xq[x & (x - 1)] ^ masks[std::countr_zero(x)];
    f.set(x, parity(xq[x] & x) != parity(lin & x));
  }
  return f;
}

/// (1_h (x) sigma_x) (+) 0_{n-2h}
inline BitMatrix dickson_canonical(std::size_t n, std::size_t h) {
  if (2 * h > n) throw ContractViolation("dickson_canonical: 2h > n");
  BitMatrix d(n, n);
  for (std::size_t i = 0; i < h; ++i) {
    d.set(2 * i, 2 * i + 1, true);
    d.set(2 * i + 1, 2 * i, true);
  }
  return d;
}

inline bool is_symplectic(const BitMatrix& b) {
  if (!b.is_symmetric()) return false;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (b.get(i, i)) return false;
  }
  return true;
}

struct DicksonForm {
  BitMatrix r;     ///< invertible, R B R^t = D
  std::size_t h;   ///< number of hyperbolic pairs; rank(B) = 2h
};

/// Symplectic Gram-Schmidt: pair up basis vectors u, v with u B v^t = 1 and
/// clear every remaining vector against the pair.
inline DicksonForm dickson_normalize(const BitMatrix& b) {
  if (!b.is_square()) throw DomainError("dickson_normalize: B must be square");
  if (!is_symplectic(b)) throw DomainError("dickson_normalize: B must be symmetric with zero diagonal");
  const std::size_t n = b.rows();
  auto form = [&b](const BitVec& u, const BitVec& v) { return vec_mul(u, b).dot(v); };

  std::vector<BitVec> rest;
  for (std::size_t i = 0; i < n; ++i) rest.push_back(BitMatrix::identity(n).row(i));

  std::vector<BitVec> paired;
  for (;;) {
    std::size_t iu = rest.size();
    std::size_t iv = rest.size();
    for (std::size_t i = 0; i < rest.size() && iu == rest.size(); ++i) {
      for (std::size_t j = i + 1; j < rest.size(); ++j) {
        if (form(rest[i], rest[j])) {
          iu = i;
          iv = j;
          break;
        }
      }
    }
    if (iu == rest.size()) break;

    const BitVec u = rest[iu];
    const BitVec v = rest[iv];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(iv));
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(iu));
    for (auto& w : rest) {
      const bool wv = form(w, v);
      const bool wu = form(w, u);
      if (wv) w ^= u;
      if (wu) w ^= v;
    }
    paired.push_back(u);
    paired.push_back(v);
  }

  const std::size_t h = paired.size() / 2;
  paired.insert(paired.end(), rest.begin(), rest.end());
  return {BitMatrix::from_rows(std::move(paired), n), h};
}

/// Random strictly upper triangular Q with rank(Q + Q^t) = n (n even).
inline QuadraticForm random_quadratic_bent(unsigned n, std::mt19937_64& rng) {
  if (n < 2 || n % 2 != 0) throw DomainError("random_quadratic_bent: n must be even and >= 2");
  for (;;) {
    QuadraticForm qf{n, BitMatrix(n, n), random_bitvec(n, rng)};
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) qf.q.set(r, c, rng() & 1u);
    }
    if (rank(qf.symplectic()) == n) return qf;
  }
}

/// Random symmetric zero-diagonal n x n matrix (any rank).
inline BitMatrix random_symplectic(std::size_t n, std::mt19937_64& rng) {
  BitMatrix b(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      const bool bit = rng() & 1u;
      b.set(r, c, bit);
      b.set(c, r, bit);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Partial spreads

/// Lines U_i = {(x, a_i x)} over GF(2^m), 2^(m-1) distinct nonzero slopes.
struct PartialSpreadDescriptor {
  GF2k field;
  std::vector<std::uint32_t> slopes;

  unsigned m() const noexcept { return field.degree(); }

  void validate() const {
    if (m() < 2) throw DomainError("PartialSpreadDescriptor: m must be >= 2");
    if (slopes.size() != (std::size_t{1} << (m() - 1))) {
      throw DomainError("PartialSpreadDescriptor: need exactly 2^(m-1) slopes");
    }
    std::vector<bool> seen(field.order(), false);
    for (auto a : slopes) {
      if (a == 0 || !field.contains(a)) throw DomainError("PartialSpreadDescriptor: slope must be nonzero");
      if (seen[a]) throw DomainError("PartialSpreadDescriptor: duplicate slope");
      seen[a] = true;
    }
  }

  friend bool operator==(const PartialSpreadDescriptor&, const PartialSpreadDescriptor&) = default;
};

/// GF(2) sum of the line indicators. All lines meet at the origin, where the
/// even count 2^(m-1) cancels to f(0, 0) = 0.
inline TruthTable partial_spread(const PartialSpreadDescriptor& d) {
  d.validate();
  const unsigned m = d.m();
  std::vector<bool> is_slope(d.field.order(), false);
  for (auto a : d.slopes) is_slope[a] = true;
  return TruthTable::from_function(2 * m, [&](std::uint64_t i) {
    const auto x = static_cast<std::uint32_t>(detail::low_half(i, m));
    const auto y = static_cast<std::uint32_t>(detail::high_half(i, m));
    if (x == 0) return y == 0 ? (d.slopes.size() % 2 == 1) : false;
    return static_cast<bool>(is_slope[d.field.mul(y, d.field.inv(x))]);
  });
}

/// Slopes {a != 0 : g(a) = 1} for a balanced g with g(0) = 0.
inline PartialSpreadDescriptor partial_spread_from_balanced(const GF2k& field, const TruthTable& g) {
  if (g.n() != field.degree() || !is_balanced(g) || g.get(0)) {
    throw DomainError("partial_spread_from_balanced: g must be balanced on m variables with g(0) = 0");
  }
  PartialSpreadDescriptor d{field, {}};
  for (std::uint32_t a = 1; a < field.order(); ++a) {
    if (g.get(a)) d.slopes.push_back(a);
  }
  return d;
}

inline PartialSpreadDescriptor random_partial_spread(unsigned m, std::mt19937_64& rng) {
  const GF2k field(m);
  std::vector<std::uint32_t> slopes(field.order() - 1);
  std::iota(slopes.begin(), slopes.end(), 1u);
  std::shuffle(slopes.begin(), slopes.end(), rng);
  slopes.resize(std::size_t{1} << (m - 1));
  std::sort(slopes.begin(), slopes.end());
  return {field, slopes};
}

// ---------------------------------------------------------------------------
// Dobbertin

/// f(x, y) = g((x + psi(phi^-1(y))) / phi^-1(y)) for y != 0, and 0 for y = 0.
///
/// The display is evaluated for any descriptor satisfying the invariants, but
/// it is only guaranteed bent when phi and psi are additive (then the support
/// is a partial spread). For m = 3, most non-additive choices are not bent.
struct DobbertinDescriptor {
  GF2k field;
  TruthTable g;
  std::vector<std::uint32_t> phi;
  std::vector<std::uint32_t> psi;

  unsigned m() const noexcept { return field.degree(); }

  void validate() const {
    const std::size_t q = field.order();
    if (g.n() != m()) throw DomainError("DobbertinDescriptor: g must have m variables");
    if (!is_balanced(g)) throw DomainError("DobbertinDescriptor: g must be balanced");
    if (phi.size() != q || !is_permutation(phi)) {
      throw DomainError("DobbertinDescriptor: phi must be a permutation of GF(2^m)");
    }
    if (phi[0] != 0) throw DomainError("DobbertinDescriptor: phi(0) must be 0");
    if (psi.size() != q) throw DomainError("DobbertinDescriptor: psi must be defined on GF(2^m)");
    for (auto v : psi) {
      if (!field.contains(v)) throw DomainError("DobbertinDescriptor: psi value out of range");
    }
  }

  bool is_additive() const { return bentshift::is_additive(phi) && bentshift::is_additive(psi); }

  friend bool operator==(const DobbertinDescriptor&, const DobbertinDescriptor&) = default;
};

inline TruthTable dobbertin(const DobbertinDescriptor& d) {
  d.validate();
  const unsigned m = d.m();
  const auto phi_inv = inverse_permutation(d.phi);
  return TruthTable::from_function(2 * m, [&](std::uint64_t i) {
    const auto x = static_cast<std::uint32_t>(detail::low_half(i, m));
    const auto y = static_cast<std::uint32_t>(detail::high_half(i, m));
    if (y == 0) return false;
    const std::uint32_t z = phi_inv[y];
    return d.g.get(d.field.mul(x ^ d.psi[z], d.field.inv(z)));
  });
}

/// Random descriptor with additive phi (invertible) and psi, hence bent.
inline DobbertinDescriptor random_dobbertin(unsigned m, std::mt19937_64& rng) {
  const GF2k field(m);
  DobbertinDescriptor d{field, random_balanced(m, rng), {}, {}};
  d.phi = linear_map_table(random_invertible(m, rng));
  d.psi = linear_map_table(random_matrix(m, m, rng));
  return d;
}

// ---------------------------------------------------------------------------
// Trace monomials

/// 2^(n/2) - 1
inline std::uint64_t dillon_exponent(unsigned n) { return (std::uint64_t{1} << (n / 2)) - 1; }

/// x -> tr(a x^e) over GF(2^n), as a function on n variables.
inline TruthTable trace_monomial(const GF2k& field, const FieldElement& a, std::uint64_t exponent) {
  if (!(a.field() == field)) throw ContractViolation("trace_monomial: a is not in the given field");
  return TruthTable::from_function(field.degree(), [&](std::uint64_t x) {
    return field.trace(field.mul(a.value(), field.pow(static_cast<std::uint32_t>(x), exponent)));
  });
}

inline TruthTable trace_monomial(const GF2k& field, const FieldElement& a) {
  return trace_monomial(field, a, dillon_exponent(field.degree()));
}

struct TraceMonomial {
  TruthTable table;
  FieldElement a;   ///< image of the subfield element in GF(2^n)
  bool certified;   ///< Kl(a) = -1 over the subfield
};

/// tr(a x^(2^m - 1)) on GF(2^(2m)) for a drawn from the subfield GF(2^m).
inline TraceMonomial trace_monomial_from_subfield(const FieldElement& a_sub) {
  const GF2k& sub = a_sub.field();
  const GF2k big(2 * sub.degree());
  const SubfieldEmbedding embed(sub, big);
  const FieldElement a = embed(a_sub);
  return {trace_monomial(big, a), a, kloosterman(a_sub) == -1};
}

// ---------------------------------------------------------------------------

/// (x, y) -> f(x) xor g(y), x on the low f.n() bits.
inline TruthTable direct_sum(const TruthTable& f, const TruthTable& g) {
  const unsigned nf = f.n();
  return TruthTable::from_function(nf + g.n(), [&](std::uint64_t i) {
    return f.get(detail::low_half(i, nf)) != g.get(detail::high_half(i, nf));
  });
}

}  // namespace bentshift
