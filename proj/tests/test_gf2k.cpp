#include <gtest/gtest.h>

#include <random>

#include "bentshift/gf2k.hpp"

using namespace bentshift;

namespace {

// schoolbook multiply then reduce one bit at a time
std::uint32_t naive_mul(std::uint32_t a, std::uint32_t b, unsigned k, std::uint32_t poly) {
  std::uint64_t prod = 0;
  for (unsigned i = 0; i < k; ++i) {
    if ((b >> i) & 1) prod ^= std::uint64_t{a} << i;
  }
  for (int bit = 2 * static_cast<int>(k) - 2; bit >= static_cast<int>(k); --bit) {
    if ((prod >> bit) & 1) prod ^= std::uint64_t{poly} << (bit - k);
  }
  return static_cast<std::uint32_t>(prod);
}

// sum of Frobenius powers, all with naive_mul
bool naive_trace(std::uint32_t u, unsigned k, std::uint32_t poly) {
  std::uint32_t acc = 0;
  std::uint32_t p = u;
  for (unsigned i = 0; i < k; ++i) {
    acc ^= p;
    p = naive_mul(p, p, k, poly);
  }
  EXPECT_LE(acc, 1u);
  return acc == 1;
}

std::uint32_t naive_inv(std::uint32_t u, unsigned k, std::uint32_t poly) {
  for (std::uint32_t v = 1; v < (1u << k); ++v) {
    if (naive_mul(u, v, k, poly) == 1) return v;
  }
  return 0;
}

std::int64_t naive_kloosterman(std::uint32_t a, unsigned k, std::uint32_t poly) {
  std::int64_t s = 0;
  for (std::uint32_t x = 1; x < (1u << k); ++x) {
    s += naive_trace(naive_inv(x, k, poly) ^ naive_mul(a, x, k, poly), k, poly) ? -1 : 1;
  }
  return s;
}

}  // namespace

TEST(Poly, DefaultPolynomials) {
  EXPECT_EQ(GF2k::default_poly(2), 0x7u);
  EXPECT_EQ(GF2k::default_poly(3), 0xbu);
  EXPECT_EQ(GF2k::default_poly(4), 0x13u);
  EXPECT_EQ(GF2k::default_poly(8), 0x11bu);
}

TEST(Poly, RejectsReducible) {
  EXPECT_THROW(GF2k(2, 0x5), DomainError);  // x^2 + 1 = (x + 1)^2
  EXPECT_THROW(GF2k(4, 0x15), DomainError);  // x^4 + x^2 + 1 = (x^2 + x + 1)^2
  EXPECT_NO_THROW(GF2k(4, 0x19));
  EXPECT_THROW(GF2k(17), ResourceError);
}

TEST(Field, Gf4Multiplication) {
  const GF2k f(2);
  const std::uint32_t omega = 2;
  EXPECT_EQ(f.mul(omega, omega), omega ^ 1u);
  for (std::uint32_t u = 0; u < 4; ++u) EXPECT_EQ(f.mul(u, 1), u);
  EXPECT_EQ(f.inv(1), 1u);
  EXPECT_THROW(f.inv(0), DomainError);
}

TEST(Field, MatchesSchoolbook) {
  for (unsigned k = 1; k <= 8; ++k) {
    const GF2k f(k);
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      for (std::uint32_t b = 0; b < f.order(); ++b) {
        ASSERT_EQ(f.mul(a, b), naive_mul(a, b, k, f.poly())) << k << " " << a << " " << b;
      }
    }
  }
}

TEST(Field, Axioms) {
  std::mt19937_64 rng(1);
  for (unsigned k = 2; k <= 8; ++k) {
    const GF2k f(k);
    for (int trial = 0; trial < 500; ++trial) {
      const FieldElement a(f, rng() % f.order());
      const FieldElement b(f, rng() % f.order());
      const FieldElement c(f, rng() % f.order());
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero()) {
        ASSERT_EQ((a * a.inv()).value(), 1u);
      }
    }
  }
}

TEST(Field, MixedFieldsRejected) {
  const FieldElement a(GF2k(3), 1);
  const FieldElement b(GF2k(4), 1);
  EXPECT_THROW(a * b, ContractViolation);
  EXPECT_THROW(FieldElement(GF2k(3), 8), ContractViolation);
}

TEST(Trace, Examples) {
  const GF2k f(2);
  EXPECT_FALSE(f.trace(0));
  EXPECT_FALSE(f.trace(1));
}

TEST(Trace, HalfTheFieldHasTraceZero) {
  for (unsigned k = 1; k <= 8; ++k) {
    const GF2k f(k);
    std::uint32_t zeros = 0;
    for (std::uint32_t u = 0; u < f.order(); ++u) zeros += !f.trace(u);
    EXPECT_EQ(zeros, f.order() / 2) << "k=" << k;
  }
}

TEST(Trace, LinearAndMatchesNaive) {
  for (unsigned k = 2; k <= 8; ++k) {
    const GF2k f(k);
    for (std::uint32_t u = 0; u < f.order(); ++u) {
      ASSERT_EQ(f.trace(u), naive_trace(u, k, f.poly()));
      const std::uint32_t v = (u * 37 + 11) % f.order();
      ASSERT_EQ(f.trace(u ^ v), f.trace(u) != f.trace(v));
    }
  }
}

TEST(Kloosterman, Gf4Values) {
  const GF2k f(2);
  EXPECT_EQ(kloosterman(f, 0), -1);
  EXPECT_EQ(kloosterman(f, 1), 3);
  EXPECT_EQ(kloosterman(f, 2), -1);
}

TEST(Kloosterman, AtZeroIsMinusOne) {
  for (unsigned k = 2; k <= 8; ++k) EXPECT_EQ(kloosterman(GF2k(k), 0), -1) << "k=" << k;
}

TEST(Kloosterman, MatchesNaiveSummation) {
  for (unsigned k = 2; k <= 6; ++k) {
    const GF2k f(k);
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      ASSERT_EQ(kloosterman(f, a), naive_kloosterman(a, k, f.poly())) << "k=" << k << " a=" << a;
    }
  }
}

TEST(Kloosterman, FindZero) {
  const auto w = find_kloosterman_zero(GF2k(2));
  EXPECT_TRUE(w.value() == 2 || w.value() == 3);
  for (unsigned k = 2; k <= 8; ++k) {
    const auto a = find_kloosterman_zero(GF2k(k));
    EXPECT_FALSE(a.is_zero());
    EXPECT_EQ(kloosterman(a), -1);
  }
}

TEST(Kloosterman, NoZeroInGf2) {
  // over GF(2) the only nonzero element has Kl(1) = 1
  EXPECT_THROW(find_kloosterman_zero(GF2k(1)), SearchExhausted);
}

TEST(Names, RoundTrip) {
  const GF2k f(4);
  EXPECT_EQ(f.name(), "gf2_4_poly13");
  EXPECT_EQ(GF2k::from_name(f.name()), f);
  EXPECT_EQ(GF2k::from_name("gf2_4_poly19").poly(), 0x19u);
  EXPECT_THROW(GF2k::from_name("gf4_poly13"), DomainError);
  EXPECT_EQ(parse_element(f, "a").value(), 10u);
  EXPECT_EQ(FieldElement(f, 10).to_hex(), "a");
  EXPECT_THROW(parse_element(f, "1f"), DomainError);
}

TEST(Subfield, EmbeddingIsAHomomorphism) {
  for (unsigned d : {2u, 3u, 4u}) {
    const GF2k sub(d);
    const GF2k big(2 * d);
    const SubfieldEmbedding emb(sub, big);
    for (std::uint32_t a = 0; a < sub.order(); ++a) {
      for (std::uint32_t b = 0; b < sub.order(); ++b) {
        const FieldElement x(sub, a), y(sub, b);
        ASSERT_EQ(emb(x + y), emb(x) + emb(y));
        ASSERT_EQ(emb(x * y), emb(x) * emb(y));
      }
    }
  }
}
