#pragma once

// Boolean functions f: Z_2^n -> Z_2 as truth tables, with an exact integer
// Walsh-Hadamard transform.
//
// Table index x encodes the input (x_1, ..., x_n) with x_j = bit (j-1) of x.
// Spectra are stored unnormalized: W(w) = sum_x (-1)^(w.x + f(x)).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

#include "bentshift/errors.hpp"
#include "bentshift/gf2.hpp"

namespace bentshift {

/// Hard cap on variables for anything that materializes a table or spectrum.
inline constexpr unsigned kMaxVariables = 26;

inline bool parity(std::uint64_t x) noexcept { return std::popcount(x) & 1; }

class TruthTable {
 public:
  TruthTable() = default;

  /// The zero function on n variables.
  explicit TruthTable(unsigned n) : n_(checked(n)), bits_(std::size_t{1} << n) {}

  TruthTable(unsigned n, BitVec bits) : n_(checked(n)), bits_(std::move(bits)) {
    if (bits_.size() != (std::size_t{1} << n)) {
      throw ContractViolation("TruthTable: bit vector length must be 2^n");
    }
  }

  template <class Fn>
  static TruthTable from_function(unsigned n, Fn&& fn) {
    TruthTable t(n);
    for (std::uint64_t x = 0; x < t.size(); ++x) t.set(x, static_cast<bool>(fn(x)));
    return t;
  }

  unsigned n() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

  bool get(std::uint64_t x) const noexcept { return bits_.get(x); }
  bool operator()(std::uint64_t x) const noexcept { return get(x); }
  void set(std::uint64_t x, bool v) noexcept { bits_.set(x, v); }

  /// (-1)^f(x)
  int sign(std::uint64_t x) const noexcept { return get(x) ? -1 : 1; }

  std::uint64_t weight() const noexcept { return bits_.popcount(); }
  const BitVec& bits() const noexcept { return bits_; }

  TruthTable& operator^=(const TruthTable& other) {
    if (other.n_ != n_) throw ContractViolation("TruthTable xor: variable count mismatch");
    bits_ ^= other.bits_;
    return *this;
  }
  friend TruthTable operator^(TruthTable a, const TruthTable& b) { return a ^= b; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  static unsigned checked(unsigned n) {
    if (n < 1) throw ContractViolation("TruthTable: n must be >= 1");
    if (n > kMaxVariables) throw ResourceError("TruthTable: n exceeds 26");
    return n;
  }

  unsigned n_ = 0;
  BitVec bits_;
};

/// x -> mask . x
inline TruthTable linear_function(unsigned n, std::uint64_t mask) {
  return TruthTable::from_function(n, [mask](std::uint64_t x) { return parity(x & mask); });
}

struct Spectrum {
  unsigned n = 0;
  std::vector<std::int64_t> coeffs;

  std::int64_t operator[](std::uint64_t w) const noexcept { return coeffs[w]; }
  std::int64_t max_abs() const noexcept {
    std::int64_t m = 0;
    for (auto c : coeffs) m = std::max(m, c < 0 ? -c : c);
    return m;
  }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Unnormalized in-place butterfly: v <- H_{2^n} v with entries +-1.
template <class T>
void fwht_inplace(std::span<T> v) {
  const std::size_t len = v.size();
  if (len == 0 || (len & (len - 1)) != 0) throw ContractViolation("fwht: length must be a power of two");
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = v[j];
        const T b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

inline std::vector<std::int64_t> sign_vector(const TruthTable& f) {
  std::vector<std::int64_t> v(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) v[x] = f.sign(x);
  return v;
}

inline Spectrum wht(const TruthTable& f) {
  Spectrum s{f.n(), sign_vector(f)};
  fwht_inplace(std::span<std::int64_t>(s.coeffs));
  return s;
}

inline bool is_bent(const Spectrum& s) {
  if (s.n % 2 != 0) return false;
  const std::int64_t flat = std::int64_t{1} << (s.n / 2);
  for (auto c : s.coeffs) {
    if (c != flat && c != -flat) return false;
  }
  return true;
}

/// Flat spectrum, |W(w)| = 2^(n/2) everywhere. Odd n is simply false.
inline bool is_bent(const TruthTable& f) { return f.n() % 2 == 0 && is_bent(wht(f)); }

/// Dual bent function: W(w) = 2^(n/2) (-1)^dual(w).
inline TruthTable dual(const Spectrum& s) {
  if (s.n % 2 != 0) throw NotBentError(0, s.coeffs.empty() ? 0 : s.coeffs[0]);
  const std::int64_t flat = std::int64_t{1} << (s.n / 2);
  TruthTable d(s.n);
  for (std::uint64_t w = 0; w < s.coeffs.size(); ++w) {
    const auto c = s.coeffs[w];
    if (c != flat && c != -flat) throw NotBentError(w, c);
    d.set(w, c < 0);
  }
  return d;
}

inline TruthTable dual(const TruthTable& f) { return dual(wht(f)); }

/// g(x) = f(x xor s)
inline TruthTable shift(const TruthTable& f, std::uint64_t s) {
  if (s >= f.size()) throw ContractViolation("shift: s out of range");
  return TruthTable::from_function(f.n(), [&](std::uint64_t x) { return f.get(x ^ s); });
}

inline TruthTable shift(const TruthTable& f, const BitVec& s) {
  if (s.size() != f.n()) throw ContractViolation("shift: s.len != n");
  return shift(f, s.to_index());
}

namespace detail {

inline std::vector<std::uint64_t> row_masks(const BitMatrix& a) {
  std::vector<std::uint64_t> masks(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) masks[r] = a.row(r).to_index();
  return masks;
}

}  // namespace detail

/// g(x) = f(xA + b) for invertible A.
inline TruthTable affine_compose(const TruthTable& f, const BitMatrix& a, const BitVec& b) {
  const unsigned n = f.n();
  if (a.rows() != n || a.cols() != n || b.size() != n) {
    throw ContractViolation("affine_compose: dimension mismatch");
  }
  if (rank(a) != n) throw DomainError("affine_compose: A is singular");
  const auto masks = detail::row_masks(a);
  const std::uint64_t offset = b.to_index();

  // image[x] = xA, built incrementally from x with its lowest bit cleared
  std::vector<std::uint64_t> image(f.size(), 0);
  TruthTable g(n);
  g.set(0, f.get(offset));
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    image[x] = image[x & (x - 1)] ^ masks[static_cast<std::size_t>(std::countr_zero(x))];
    g.set(x, f.get(image[x] ^ offset));
  }
  return g;
}

/// Delta_h f (x) = f(x xor h) xor f(x)
inline TruthTable derivative(const TruthTable& f, std::uint64_t h) {
  if (h >= f.size()) throw ContractViolation("derivative: h out of range");
  return TruthTable::from_function(f.n(), [&](std::uint64_t x) { return f.get(x ^ h) != f.get(x); });
}

inline TruthTable derivative(const TruthTable& f, const BitVec& h) {
  if (h.size() != f.n()) throw ContractViolation("derivative: h.len != n");
  return derivative(f, h.to_index());
}

inline bool is_balanced(const TruthTable& f) { return f.weight() == f.size() / 2; }

/// Algebraic normal form coefficients via the Moebius transform: bit u of the
/// result is the coefficient of the monomial prod_{j in u} x_j.
inline TruthTable anf_table(const TruthTable& f) {
  std::vector<std::uint8_t> a(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) a[x] = f.get(x);
  for (std::uint64_t h = 1; h < f.size(); h <<= 1) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      if (x & h) a[x] ^= a[x ^ h];
    }
  }
  return TruthTable::from_function(f.n(), [&](std::uint64_t u) { return a[u] != 0; });
}

/// Monomials present in the ANF, as variable masks in increasing order.
inline std::vector<std::uint64_t> anf(const TruthTable& f) {
  const auto coeffs = anf_table(f);
  std::vector<std::uint64_t> monomials;
  for (std::uint64_t u = 0; u < coeffs.size(); ++u) {
    if (coeffs.get(u)) monomials.push_back(u);
  }
  return monomials;
}

inline unsigned degree(const TruthTable& f) {
  unsigned d = 0;
  for (auto u : anf(f)) d = std::max(d, static_cast<unsigned>(std::popcount(u)));
  return d;
}

/// Distance to the nearest affine function: 2^(n-1) - max|W|/2.
inline std::uint64_t nonlinearity(const Spectrum& s) {
  return (std::uint64_t{1} << (s.n - 1)) - static_cast<std::uint64_t>(s.max_abs() / 2);
}

inline std::uint64_t nonlinearity(const TruthTable& f) { return nonlinearity(wht(f)); }

/// Convolution intermediates reach 2^(3n); keep them inside int64.
inline constexpr unsigned kMaxConvolveVariables = 20;

/// c[x] = sum_y F(x xor y) G(y) on the +-1 sign vectors, via three transforms.
inline std::vector<std::int64_t> convolve(const TruthTable& f, const TruthTable& g) {
  if (f.n() != g.n()) throw ContractViolation("convolve: variable count mismatch");
  if (f.n() > kMaxConvolveVariables) throw ResourceError("convolve: n exceeds 20");
  const auto wf = wht(f);
  const auto wg = wht(g);
  std::vector<std::int64_t> c(f.size());
  for (std::uint64_t w = 0; w < f.size(); ++w) c[w] = wf[w] * wg[w];
  fwht_inplace(std::span<std::int64_t>(c));
  for (auto& v : c) v >>= f.n();  // exact: every entry is a multiple of 2^n
  return c;
}

}  // namespace bentshift
