#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "bentshift/quantum.hpp"

using namespace bentshift;

namespace {

std::shared_ptr<const HiddenShiftInstance> share(HiddenShiftInstance inst) {
  return std::make_shared<const HiddenShiftInstance>(std::move(inst));
}

double chi_square_p(const std::vector<std::uint64_t>& counts, double expected) {
  double stat = 0.0;
  for (auto c : counts) stat += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

bool on_hyperplane(const BitVec& a, const BitVec& s) { return a.get(0) == a.slice(1, s.size()).dot(s); }

constexpr double kTol = 1e-12;

}  // namespace

TEST(StateVector, HadamardExamples) {
  StateVector one(1);
  apply_hadamard(one, 0);
  EXPECT_NEAR(one[0], 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(one[1], 1 / std::sqrt(2.0), kTol);
  apply_hadamard(one, 0);
  EXPECT_NEAR(one[0], 1.0, kTol);
  EXPECT_NEAR(one[1], 0.0, kTol);

  StateVector psi(6);
  hadamard_all(psi, Register{0, 6});
  for (std::uint64_t i = 0; i < psi.size(); ++i) EXPECT_NEAR(psi[i], 0.125, kTol);
  EXPECT_THROW(hadamard_all(psi, Register{4, 3}), ContractViolation);
  EXPECT_THROW(StateVector(26), ResourceError);
}

TEST(StateVector, PhaseOracleExamples) {
  StateVector psi(2);
  hadamard_all(psi, Register{0, 2});
  const auto before = std::vector<double>(psi.amplitudes().begin(), psi.amplitudes().end());
  phase_oracle(psi, TruthTable(2), Register{0, 2});
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(psi[i], before[i]);

  const auto x1 = linear_function(2, 0b01);
  phase_oracle(psi, x1, Register{0, 2});
  EXPECT_NEAR(psi[0], 0.5, kTol);
  EXPECT_NEAR(psi[1], -0.5, kTol);
  EXPECT_NEAR(psi[2], 0.5, kTol);
  EXPECT_NEAR(psi[3], -0.5, kTol);
  phase_oracle(psi, x1, Register{0, 2});
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(psi[i], before[i]);

  EXPECT_THROW(phase_oracle(psi, TruthTable(3), Register{0, 2}), ContractViolation);
}

TEST(StateVector, NormPreservedByEveryGate) {
  std::mt19937_64 rng(4);
  StateVector psi(7);
  hadamard_all(psi, Register{0, 7});
  for (int step = 0; step < 200; ++step) {
    switch (rng() % 4) {
      case 0: apply_hadamard(psi, rng() % 7); break;
      case 1: phase_oracle(psi, random_table(3, rng), Register{static_cast<unsigned>(rng() % 5), 3}); break;
      case 2: cnot_block(psi, Register{0, 3}, Register{3, 3}); break;
      default: fredkin(psi, 6, Register{0, 3}, Register{3, 3}); break;
    }
    ASSERT_NEAR(psi.norm_squared(), 1.0, kTol);
  }
}

TEST(StateVector, FredkinCompilesControlledPhase) {
  // Controlled U_f from a Fredkin pair around an uncontrolled U_f, with the
  // swap steering the query into an ancilla |00> when the control is 0.
  // Exact when f(0) = 0.
  std::mt19937_64 rng(2);
  const Register reg{1, 2};
  const Register anc{3, 2};
  for (std::uint64_t bits = 0; bits < 16; bits += 2) {  // f(0) = 0
    const auto f = TruthTable::from_function(2, [bits](std::uint64_t x) { return (bits >> x) & 1; });
    StateVector direct(5);
    for (std::uint64_t i = 0; i < direct.size(); ++i) {
      direct[i] = anc.extract(i) == 0 ? std::normal_distribution<double>()(rng) : 0.0;
    }
    StateVector compiled = direct;

    controlled_phase_oracle(direct, f, reg, 0, true);

    // swap reg and ancilla when control = 0: flip control, Fredkin, flip back
    auto flip = [](StateVector& psi) {
      for (std::uint64_t i = 0; i < psi.size(); i += 2) std::swap(psi[i], psi[i + 1]);
    };
    flip(compiled);
    fredkin(compiled, 0, reg, anc);
    flip(compiled);
    phase_oracle(compiled, f, reg);
    flip(compiled);
    fredkin(compiled, 0, reg, anc);
    flip(compiled);

    for (std::uint64_t i = 0; i < direct.size(); ++i) ASSERT_NEAR(direct[i], compiled[i], kTol) << bits;
  }
}

TEST(StateVector, MeasureFollowsAmplitudes) {
  StateVector psi = StateVector::basis(3, 5);
  std::mt19937_64 rng(0);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(measure(psi, rng), 5u);
}

TEST(A1, InnerProductExample) {
  auto o = ShiftOracle::with_dual(share(make_instance(InnerProductFamily{2}, BitVec::from_string("1011"))));
  EXPECT_EQ(run_a1(o), BitVec::from_string("1011"));
  EXPECT_EQ(o.stats().phase_g, 1u);
  EXPECT_EQ(o.stats().phase_dual, 1u);
  EXPECT_EQ(o.stats().total(), 2u);
}

TEST(A1, ZeroShift) {
  auto o = ShiftOracle::with_dual(share(make_instance(InnerProductFamily{3}, BitVec(6))));
  EXPECT_TRUE(run_a1(o).is_zero());
}

TEST(A1, FinalStateIsABasisVector) {
  std::mt19937_64 rng(12);
  for (const char* tag : {"ip", "mm", "quadratic", "ps", "dobbertin", "trace"}) {
    for (unsigned m = 1; m <= 4; ++m) {
      if (m == 1 && std::string(tag) != "ip" && std::string(tag) != "mm") continue;
      const auto inst = share(make_instance(random_family(tag, m, rng), rng()));
      auto o = ShiftOracle::with_dual(inst);
      RunTranscript t;
      const auto psi = a1_circuit(o, &t);
      const auto s = inst->s.to_index();
      for (std::uint64_t i = 0; i < psi.size(); ++i) {
        ASSERT_NEAR(psi[i], i == s ? 1.0 : 0.0, kTol) << tag << " m=" << m;
      }
      for (const auto& step : t.steps) ASSERT_NEAR(step.norm_squared, 1.0, kTol);
    }
  }
}

TEST(A1, HundredRandomMaioranaMcFarlandAtFour) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = share(make_instance(random_family("mm", 4, rng), rng()));
    auto o = ShiftOracle::with_dual(inst);
    ASSERT_EQ(run_a1(o, rng()), inst->s);
    ASSERT_EQ(o.stats().phase_g, 1u);
    ASSERT_EQ(o.stats().phase_dual, 1u);
  }
}

TEST(A1, RequiresDual) {
  auto o = ShiftOracle::standard(share(make_instance(InnerProductFamily{2}, BitVec(4))));
  EXPECT_THROW(run_a1(o), AccessDenied);
}

TEST(A2, SamplesLieOnHyperplane) {
  std::mt19937_64 rng(5);
  for (unsigned m = 1; m <= 4; ++m) {
    const auto inst = share(make_instance(random_family("mm", m, rng), rng()));
    auto o = ShiftOracle::standard(inst);
    for (int i = 0; i < 200; ++i) ASSERT_TRUE(on_hyperplane(run_a2_sample(o, rng), inst->s));
    EXPECT_EQ(o.stats().phase_f, 200u);
    EXPECT_EQ(o.stats().phase_g, 200u);
    EXPECT_EQ(o.stats().classical(), 0u);
  }
}

TEST(A2, ZeroShiftHasClearLeadingBit) {
  auto o = ShiftOracle::standard(share(make_instance(InnerProductFamily{2}, BitVec(4))));
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> counts(16, 0);
  for (int i = 0; i < 4000; ++i) {
    const auto a = run_a2_sample(o, rng);
    ASSERT_FALSE(a.get(0));
    ++counts[a.slice(1, 4).to_index()];
  }
  EXPECT_GT(chi_square_p(counts, 250.0), 0.001);
}

TEST(A2, ExactDistributionIsUniformOnHyperplane) {
  std::mt19937_64 rng(77);
  for (unsigned m = 1; m <= 3; ++m) {
    const auto inst = share(make_instance(random_family("mm", m, rng), rng()));
    auto o = ShiftOracle::standard(inst);
    const auto psi = a2_circuit(o);
    const unsigned n = 2 * m;
    std::map<std::uint64_t, double> marginal;
    for (std::uint64_t i = 0; i < psi.size(); ++i) marginal[a2_outcome(i, n).to_index()] += psi[i] * psi[i];
    const double expected = 1.0 / static_cast<double>(std::uint64_t{1} << n);
    for (std::uint64_t a = 0; a < (std::uint64_t{2} << n); ++a) {
      const bool ok = on_hyperplane(BitVec::from_index(a, n + 1), inst->s);
      ASSERT_NEAR(marginal[a], ok ? expected : 0.0, kTol);
    }
  }
}

TEST(A2, ChiSquareUniformOnInnerProduct) {
  const auto inst = share(make_instance(InnerProductFamily{2}, BitVec::from_string("0110")));
  auto o = ShiftOracle::standard(inst);
  std::mt19937_64 rng(2718);
  // index hyperplane vectors by their x part; b is determined by x . s
  std::vector<std::uint64_t> counts(16, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto a = run_a2_sample(o, rng);
    ASSERT_TRUE(on_hyperplane(a, inst->s));
    ++counts[a.slice(1, 4).to_index()];
  }
  EXPECT_GT(chi_square_p(counts, 10000.0 / 16), 0.001);
}

TEST(A2, RecoversShift) {
  std::mt19937_64 rng(31);
  int ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = share(make_instance(random_family("mm", 3, rng), rng()));
    auto o = ShiftOracle::standard(inst);
    const auto r = run_a2(o, default_a2_rounds(6), rng());
    EXPECT_EQ(r.queries.phase_f, r.rounds);
    EXPECT_EQ(r.queries.phase_g, r.rounds);
    if (r.shift) {
      ASSERT_EQ(*r.shift, inst->s);
      ASSERT_EQ(shift(inst->f, *r.shift), inst->g);
      ++ok;
    }
  }
  EXPECT_GE(ok, 196);
}

TEST(A2, FailsCleanlyWhenRoundsRunOut) {
  auto o = ShiftOracle::standard(share(make_instance(InnerProductFamily{3}, BitVec(6))));
  const auto r = run_a2(o, 2, 1);
  EXPECT_FALSE(r.shift);
  EXPECT_EQ(r.rounds, 2u);
  EXPECT_EQ(r.queries.phase_f, 2u);
}

TEST(A2, SizeCap) {
  auto o = ShiftOracle::standard(share(make_instance(InnerProductFamily{7}, BitVec(14))));
  std::mt19937_64 rng(0);
  EXPECT_THROW(run_a2_sample(o, rng), ResourceError);
}
