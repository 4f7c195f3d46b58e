#pragma once

// Bit-packed vectors and matrices over GF(2).
//
// Bit order is little-endian throughout: bit i of a vector lives in bit
// (i % 64) of word (i / 64). When a vector is read as an integer index
// (truth-table position), coordinate x_{j+1} is bit j of the index.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bentshift/errors.hpp"

namespace bentshift {

class BitVec {
 public:
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  /// Low `len` bits of `value` (len <= 64).
  static BitVec from_index(std::uint64_t value, std::size_t len) {
    if (len > kWordBits) throw ContractViolation("BitVec::from_index: len > 64");
    BitVec v(len);
    if (len > 0) v.words_[0] = value & tail_mask(len);
    return v;
  }

  /// Parses "1011" where character i is bit i.
  static BitVec from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw ContractViolation("BitVec::from_string: expected '0' or '1'");
      }
    }
    return v;
  }

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  bool operator[](std::size_t i) const noexcept { return get(i); }

  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  BitVec& operator^=(const BitVec& other) {
    check_same_length(other, "xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  BitVec& operator&=(const BitVec& other) {
    check_same_length(other, "and");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

  /// Inner product over GF(2).
  bool dot(const BitVec& other) const {
    check_same_length(other, "dot");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  std::size_t popcount() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Index of the lowest set bit, or size() if the vector is zero.
  std::size_t first_set() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return len_;
  }

  std::uint64_t to_index() const {
    if (len_ > kWordBits) throw ContractViolation("BitVec::to_index: len > 64");
    return words_.empty() ? 0 : words_[0];
  }

  /// Bits [offset, offset + count) as a new vector.
  BitVec slice(std::size_t offset, std::size_t count) const {
    if (offset + count > len_) throw ContractViolation("BitVec::slice out of range");
    BitVec out(count);
    for (std::size_t i = 0; i < count; ++i) out.set(i, get(offset + i));
    return out;
  }

  /// this followed by `tail`.
  BitVec concat(const BitVec& tail) const {
    BitVec out(len_ + tail.len_);
    for (std::size_t i = 0; i < len_; ++i) out.set(i, get(i));
    for (std::size_t i = 0; i < tail.len_; ++i) out.set(len_ + i, tail.get(i));
    return out;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

  static std::size_t word_count(std::size_t len) noexcept { return (len + kWordBits - 1) / kWordBits; }

 private:
  static std::uint64_t tail_mask(std::size_t len) noexcept {
    return len >= kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
  }

  void check_same_length(const BitVec& other, const char* op) const {
    if (other.len_ != len_) {
      throw ContractViolation(std::string("BitVec ") + op + ": length mismatch");
    }
  }

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BitMatrix from_rows(std::vector<BitVec> rows, std::size_t cols) {
    for (const auto& r : rows) {
      if (r.size() != cols) throw ContractViolation("BitMatrix::from_rows: ragged rows");
    }
    BitMatrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
  }

  /// Rows given as strings of '0'/'1'; all must have equal length.
  static BitMatrix from_strings(const std::vector<std::string>& rows) {
    std::vector<BitVec> parsed;
    parsed.reserve(rows.size());
    for (const auto& r : rows) parsed.push_back(BitVec::from_string(r));
    const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
    return from_rows(std::move(parsed), cols);
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) noexcept { rows_[r].set(c, v); }

  const BitVec& row(std::size_t r) const noexcept { return rows_[r]; }
  BitVec& row(std::size_t r) noexcept { return rows_[r]; }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) t.set(c, r, true);
      }
    }
    return t;
  }

  bool is_square() const noexcept { return rows() == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = r + 1; c < cols_; ++c) {
        if (get(r, c) != get(c, r)) return false;
      }
    }
    return true;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(rows());
    for (const auto& r : rows_) out.push_back(r.to_string());
    return out;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

/// Row vector times matrix: x * M.
inline BitVec vec_mul(const BitVec& x, const BitMatrix& m) {
  if (x.size() != m.rows()) throw ContractViolation("vec_mul: dimension mismatch");
  BitVec out(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.get(i)) out ^= m.row(i);
  }
  return out;
}

/// Matrix times column vector: M * x^t, returned as a row vector.
inline BitVec mat_vec(const BitMatrix& m, const BitVec& x) {
  if (x.size() != m.cols()) throw ContractViolation("mat_vec: dimension mismatch");
  BitVec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.set(r, m.row(r).dot(x));
  return out;
}

inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw ContractViolation("BitMatrix product: dimension mismatch");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.row(r) = vec_mul(a.row(r), b);
  return out;
}

inline BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractViolation("BitMatrix sum: dimension mismatch");
  }
  BitMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) out.row(r) ^= b.row(r);
  return out;
}

namespace detail {

// Reduced row echelon form in place. Returns the pivot column of each
// nonzero leading row, in order.
inline std::vector<std::size_t> rref(std::vector<BitVec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t p = lead;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[lead], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != lead && rows[r].get(c)) rows[r] ^= rows[lead];
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const BitMatrix& m) {
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return detail::rref(rows, m.cols()).size();
}

struct SolveResult {
  std::optional<BitVec> solution;  ///< empty when the system is inconsistent
  std::vector<BitVec> kernel;      ///< basis of ker(M); independent of b
};

/// Solves M x^t = b^t. Free variables are set to zero in the particular solution.
inline SolveResult solve(const BitMatrix& m, const BitVec& b) {
  if (b.size() != m.rows()) throw ContractViolation("solve: b.len != M.rows");
  const std::size_t n = m.cols();

  std::vector<BitVec> aug;
  aug.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BitVec row = m.row(r).concat(BitVec(1));
    row.set(n, b.get(r));
    aug.push_back(std::move(row));
  }
  const auto pivots = detail::rref(aug, n + 1);

  SolveResult result;
  std::vector<bool> is_pivot(n, false);
  bool consistent = true;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == n) {
      consistent = false;
    } else {
      is_pivot[pivots[i]] = true;
    }
  }

  if (consistent) {
    BitVec x(n);
    for (std::size_t i = 0; i < pivots.size(); ++i) x.set(pivots[i], aug[i].get(n));
    result.solution = std::move(x);
  }

  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitVec k(n);
    k.set(free, true);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (pivots[i] < n && aug[i].get(free)) k.set(pivots[i], true);
    }
    result.kernel.push_back(std::move(k));
  }
  return result;
}

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<BitMatrix> inverse(const BitMatrix& m) {
  if (!m.is_square()) throw ContractViolation("inverse: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<BitVec> aug;
  aug.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    BitVec row = m.row(r).concat(BitVec(n));
    row.set(n + r, true);
    aug.push_back(std::move(row));
  }
  const auto pivots = detail::rref(aug, n);
  if (pivots.size() != n) return std::nullopt;
  BitMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) inv.row(r) = aug[r].slice(n, n);
  return inv;
}

inline BitVec random_bitvec(std::size_t len, std::mt19937_64& rng) {
  BitVec v(len);
  for (std::size_t i = 0; i < len; i += 64) {
    const std::uint64_t word = rng();
    for (std::size_t j = 0; j < 64 && i + j < len; ++j) v.set(i + j, (word >> j) & 1u);
  }
  return v;
}

inline BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.row(r) = random_bitvec(cols, rng);
  return m;
}

/// Uniform element of GL(n, 2) by rejection sampling.
inline BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw ContractViolation("random_invertible: n must be >= 1");
  for (;;) {
    BitMatrix m = random_matrix(n, n, rng);
    if (rank(m) == n) return m;
  }
}

inline BitMatrix random_invertible(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_invertible(n, rng);
}

}  // namespace bentshift
