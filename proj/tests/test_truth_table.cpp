#include <gtest/gtest.h>

#include <random>

#include "bentshift/families.hpp"
#include "bentshift/gf2.hpp"
#include "bentshift/truth_table.hpp"

using namespace bentshift;

namespace {

TruthTable from_bits(unsigned n, std::uint64_t bits) {
  return TruthTable::from_function(n, [bits](std::uint64_t x) { return (bits >> x) & 1; });
}

// W(w) = sum_x (-1)^(w.x + f(x)), double loop
std::vector<std::int64_t> naive_wht(const TruthTable& f) {
  std::vector<std::int64_t> w(f.size(), 0);
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    for (std::uint64_t x = 0; x < f.size(); ++x) w[a] += (parity(a & x) != f.get(x)) ? -1 : 1;
  }
  return w;
}

std::vector<std::int64_t> naive_convolve(const TruthTable& f, const TruthTable& g) {
  std::vector<std::int64_t> c(f.size(), 0);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    for (std::uint64_t y = 0; y < f.size(); ++y) c[x] += f.sign(x ^ y) * g.sign(y);
  }
  return c;
}

TruthTable random_fn(unsigned n, std::mt19937_64& rng) { return TruthTable(n, random_bitvec(std::size_t{1} << n, rng)); }

const TruthTable kAnd = from_bits(2, 0b1000);  // x1 x2

}  // namespace

TEST(TruthTable, Construction) {
  EXPECT_THROW(TruthTable(0), ContractViolation);
  EXPECT_THROW(TruthTable(27), ResourceError);
  EXPECT_THROW(TruthTable(2, BitVec(3)), ContractViolation);
  EXPECT_EQ(TruthTable(3).weight(), 0u);
}

TEST(Wht, SpecExamples) {
  EXPECT_EQ(wht(TruthTable(1)).coeffs, (std::vector<std::int64_t>{2, 0}));
  EXPECT_EQ(wht(kAnd).coeffs, (std::vector<std::int64_t>{2, 2, 2, -2}));
  EXPECT_EQ(wht(linear_function(2, 0b01)).coeffs, (std::vector<std::int64_t>{0, 4, 0, 0}));
}

TEST(Wht, ExhaustiveTwoVariables) {
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto f = from_bits(2, bits);
    EXPECT_EQ(wht(f).coeffs, naive_wht(f)) << bits;
  }
}

TEST(Wht, MatchesNaiveOnRandomFunctions) {
  std::mt19937_64 rng(17);
  for (unsigned n = 1; n <= 10; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_fn(n, rng);
      ASSERT_EQ(wht(f).coeffs, naive_wht(f)) << "n=" << n;
    }
  }
}

TEST(Wht, MatchesNaiveAtFourteen) {
  std::mt19937_64 rng(99);
  const auto f = random_fn(14, rng);
  const auto w = wht(f);
  // spot check a few hundred coefficients against direct sums
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t a = rng() % f.size();
    std::int64_t s = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x) s += (parity(a & x) != f.get(x)) ? -1 : 1;
    ASSERT_EQ(w[a], s);
  }
}

TEST(Wht, ParsevalAndEvenCoefficients) {
  std::mt19937_64 rng(4);
  for (unsigned n = 1; n <= 12; ++n) {
    const auto w = wht(random_fn(n, rng));
    std::int64_t energy = 0;
    for (auto c : w.coeffs) {
      energy += c * c;
      ASSERT_EQ(c % 2, 0);
    }
    ASSERT_EQ(energy, std::int64_t{1} << (2 * n));
  }
}

TEST(Wht, ButterflyTwiceScales) {
  std::mt19937_64 rng(12);
  for (unsigned n = 1; n <= 10; ++n) {
    const auto f = random_fn(n, rng);
    auto v = sign_vector(f);
    const auto orig = v;
    fwht_inplace(std::span<std::int64_t>(v));
    fwht_inplace(std::span<std::int64_t>(v));
    for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(v[i], orig[i] << n);
  }
}

TEST(IsBent, Examples) {
  EXPECT_TRUE(is_bent(kAnd));
  EXPECT_FALSE(is_bent(linear_function(2, 1)));
  std::mt19937_64 rng(1);
  for (unsigned n : {1u, 3u, 5u}) EXPECT_FALSE(is_bent(random_fn(n, rng)));
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual(kAnd), kAnd);
  MMDescriptor d{1, identity_permutation(2), TruthTable(1)};
  EXPECT_EQ(dual(maiorana_mcfarland(d)), kAnd);
}

TEST(Dual, NonBentCarriesFrequency) {
  try {
    dual(linear_function(2, 0b10));
    FAIL() << "expected NotBentError";
  } catch (const NotBentError& e) {
    EXPECT_EQ(e.frequency(), 0u);
    EXPECT_EQ(e.coefficient(), 0);
  }
  EXPECT_THROW(dual(TruthTable(3)), DomainError);
}

TEST(Dual, IsAnInvolution) {
  std::mt19937_64 rng(6);
  for (unsigned m = 1; m <= 5; ++m) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = maiorana_mcfarland(random_mm(m, rng));
      ASSERT_EQ(dual(dual(f)), f);
    }
  }
}

TEST(Shift, Examples) {
  std::mt19937_64 rng(2);
  const auto f = random_fn(5, rng);
  EXPECT_EQ(shift(f, BitVec(5)), f);
  const auto s = random_bitvec(5, rng);
  EXPECT_EQ(shift(shift(f, s), s), f);
  // (x1 + 1) x2 is 1 only at x = (0, 1), index 2
  EXPECT_EQ(shift(kAnd, BitVec::from_string("10")), from_bits(2, 0b0100));
  EXPECT_THROW(shift(f, BitVec(4)), ContractViolation);
}

TEST(Affine, Examples) {
  EXPECT_EQ(affine_compose(kAnd, BitMatrix::identity(2), BitVec(2)), kAnd);
  EXPECT_EQ(affine_compose(kAnd, BitMatrix::from_strings({"01", "10"}), BitVec(2)), kAnd);
  EXPECT_THROW(affine_compose(kAnd, BitMatrix(2, 2), BitVec(2)), DomainError);
}

TEST(Affine, DefinitionPointwise) {
  std::mt19937_64 rng(31);
  for (unsigned n = 1; n <= 8; ++n) {
    const auto f = random_fn(n, rng);
    const auto a = random_invertible(n, rng);
    const auto b = random_bitvec(n, rng);
    const auto g = affine_compose(f, a, b);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      auto xa = vec_mul(BitVec::from_index(x, n), a);
      xa ^= b;
      ASSERT_EQ(g.get(x), f.get(xa.to_index()));
    }
  }
}

TEST(Affine, SpectralLaw) {
  // W_g(w) = (-1)^(w (A^-1)^t . b) W_f(w (A^-1)^t)
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 2 + 2 * (trial % 6);
    const auto f = maiorana_mcfarland(random_mm(n / 2, rng));
    const auto a = random_invertible(n, rng);
    const auto b = random_bitvec(n, rng);
    const auto g = affine_compose(f, a, b);
    ASSERT_TRUE(is_bent(g));
    const auto wf = wht(f);
    const auto wg = wht(g);
    const auto ainv_t = inverse(a)->transpose();
    for (std::uint64_t w = 0; w < f.size(); ++w) {
      const auto u = vec_mul(BitVec::from_index(w, n), ainv_t);
      const std::int64_t expect = u.dot(b) ? -wf[u.to_index()] : wf[u.to_index()];
      ASSERT_EQ(wg[w], expect) << "trial " << trial << " w=" << w;
    }
  }
}

TEST(Derivative, Examples) {
  std::mt19937_64 rng(3);
  const auto f = random_fn(4, rng);
  EXPECT_EQ(derivative(f, 0).weight(), 0u);
  const auto d = derivative(kAnd, BitVec::from_string("01"));
  EXPECT_EQ(d, linear_function(2, 0b01));
  EXPECT_TRUE(is_balanced(d));
}

TEST(Derivative, BentImpliesBalanced) {
  std::mt19937_64 rng(8);
  const auto f = maiorana_mcfarland(random_mm(3, rng));
  for (std::uint64_t h = 1; h < f.size(); ++h) ASSERT_TRUE(is_balanced(derivative(f, h)));
}

TEST(Anf, Examples) {
  EXPECT_TRUE(anf(TruthTable(3)).empty());
  EXPECT_EQ(degree(TruthTable(3)), 0u);
  EXPECT_EQ(anf(kAnd), (std::vector<std::uint64_t>{0b11}));
  EXPECT_EQ(degree(kAnd), 2u);
}

TEST(Anf, EvaluatesBackToTable) {
  std::mt19937_64 rng(13);
  for (unsigned n = 1; n <= 8; ++n) {
    const auto f = random_fn(n, rng);
    const auto monomials = anf(f);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      bool v = false;
      for (auto u : monomials) v ^= (x & u) == u;
      ASSERT_EQ(v, f.get(x));
    }
  }
}

TEST(Anf, QuadraticBentHasDegreeTwo) {
  std::mt19937_64 rng(21);
  for (unsigned n = 2; n <= 12; n += 2) EXPECT_LE(degree(quadratic(random_quadratic_bent(n, rng))), 2u);
}

TEST(Nonlinearity, BentReachesCoveringBound) {
  std::mt19937_64 rng(5);
  for (unsigned m = 1; m <= 4; ++m) {
    const auto f = maiorana_mcfarland(random_mm(m, rng));
    const std::uint64_t n = 2 * m;
    EXPECT_EQ(nonlinearity(f), (std::uint64_t{1} << (n - 1)) - (std::uint64_t{1} << (m - 1)));
  }
}

TEST(Convolve, Examples) {
  EXPECT_EQ(convolve(TruthTable(1), TruthTable(1)), (std::vector<std::int64_t>{2, 2}));
  std::mt19937_64 rng(9);
  const auto f = random_fn(6, rng);
  EXPECT_EQ(convolve(f, f)[0], 64);
  const auto b = maiorana_mcfarland(random_mm(3, rng));
  const auto c = convolve(b, b);
  for (std::uint64_t x = 1; x < c.size(); ++x) EXPECT_EQ(c[x], 0);
  EXPECT_THROW(convolve(f, TruthTable(5)), ContractViolation);
}

TEST(Convolve, MatchesNaive) {
  std::mt19937_64 rng(10);
  for (unsigned n = 1; n <= 8; ++n) {
    const auto f = random_fn(n, rng);
    const auto g = random_fn(n, rng);
    ASSERT_EQ(convolve(f, g), naive_convolve(f, g)) << "n=" << n;
  }
}
