#pragma once

// Real-amplitude state-vector simulation of the two hidden-shift circuits.
//
// Qubit q is bit q of the basis-state index. A Register is a contiguous run of
// qubits; its content for basis state i is (i >> offset) & (2^width - 1).

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bentshift/errors.hpp"
#include "bentshift/gf2.hpp"
#include "bentshift/oracle.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

inline constexpr unsigned kMaxQubits = 25;

struct Register {
  unsigned offset = 0;
  unsigned width = 0;

  std::uint64_t mask() const noexcept { return ((std::uint64_t{1} << width) - 1) << offset; }
  std::uint64_t extract(std::uint64_t index) const noexcept {
    return (index >> offset) & ((std::uint64_t{1} << width) - 1);
  }
};

class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw ContractViolation("StateVector: need at least one qubit");
    if (num_qubits > kMaxQubits) throw ResourceError("StateVector: more than 25 qubits");
    amplitudes_.assign(std::size_t{1} << num_qubits, 0.0);
    amplitudes_[0] = 1.0;
  }

  static StateVector basis(unsigned num_qubits, std::uint64_t index) {
    StateVector psi(num_qubits);
    if (index >= psi.size()) throw ContractViolation("StateVector::basis: index out of range");
    psi.amplitudes_[0] = 0.0;
    psi.amplitudes_[index] = 1.0;
    return psi;
  }

  unsigned num_qubits() const noexcept { return num_qubits_; }
  std::uint64_t size() const noexcept { return amplitudes_.size(); }
  double operator[](std::uint64_t i) const noexcept { return amplitudes_[i]; }
  double& operator[](std::uint64_t i) noexcept { return amplitudes_[i]; }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  std::span<double> amplitudes() noexcept { return amplitudes_; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (double a : amplitudes_) s += a * a;
    return s;
  }

  void check(const Register& r) const {
    if (r.width == 0 || r.offset + r.width > num_qubits_) {
      throw ContractViolation("register out of range");
    }
  }
  void check(unsigned qubit) const {
    if (qubit >= num_qubits_) throw ContractViolation("qubit out of range");
  }

 private:
  unsigned num_qubits_;
  std::vector<double> amplitudes_;
};

inline void apply_hadamard(StateVector& psi, unsigned qubit) {
  psi.check(qubit);
  const double r = 1.0 / std::sqrt(2.0);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  auto amp = psi.amplitudes();
  for (std::uint64_t i = 0; i < amp.size(); ++i) {
    if (i & bit) continue;
    const double a = amp[i];
    const double b = amp[i | bit];
    amp[i] = (a + b) * r;
    amp[i | bit] = (a - b) * r;
  }
}

/// H on every qubit of the register.
inline void hadamard_all(StateVector& psi, const Register& reg) {
  psi.check(reg);
  for (unsigned q = reg.offset; q < reg.offset + reg.width; ++q) apply_hadamard(psi, q);
}

/// U_f : |x> -> (-1)^f(x) |x> on the register.
inline void phase_oracle(StateVector& psi, const TruthTable& f, const Register& reg) {
  psi.check(reg);
  if (f.n() != reg.width) throw ContractViolation("phase_oracle: table width != register width");
  auto amp = psi.amplitudes();
  for (std::uint64_t i = 0; i < amp.size(); ++i) {
    if (f.get(reg.extract(i))) amp[i] = -amp[i];
  }
}

/// U_f applied only where `control` holds `control_value` (open or closed dot).
inline void controlled_phase_oracle(StateVector& psi, const TruthTable& f, const Register& reg,
                                    unsigned control, bool control_value) {
  psi.check(reg);
  psi.check(control);
  if (f.n() != reg.width) throw ContractViolation("controlled_phase_oracle: width mismatch");
  if (reg.mask() & (std::uint64_t{1} << control)) {
    throw ContractViolation("controlled_phase_oracle: control inside target register");
  }
  auto amp = psi.amplitudes();
  for (std::uint64_t i = 0; i < amp.size(); ++i) {
    if (static_cast<bool>((i >> control) & 1u) == control_value && f.get(reg.extract(i))) amp[i] = -amp[i];
  }
}

/// Bitwise CNOT block: target_j ^= control_j.
inline void cnot_block(StateVector& psi, const Register& control, const Register& target) {
  psi.check(control);
  psi.check(target);
  if (control.width != target.width || (control.mask() & target.mask())) {
    throw ContractViolation("cnot_block: registers must have equal width and be disjoint");
  }
  auto amp = psi.amplitudes();
  for (std::uint64_t i = 0; i < amp.size(); ++i) {
    const std::uint64_t j = i ^ (control.extract(i) << target.offset);
    if (i < j) std::swap(amp[i], amp[j]);
  }
}

/// Controlled swap of two equal-width registers.
inline void fredkin(StateVector& psi, unsigned control, const Register& a, const Register& b) {
  psi.check(control);
  psi.check(a);
  psi.check(b);
  if (a.width != b.width || (a.mask() & b.mask())) {
    throw ContractViolation("fredkin: registers must have equal width and be disjoint");
  }
  auto amp = psi.amplitudes();
  const std::uint64_t keep = ~(a.mask() | b.mask());
  for (std::uint64_t i = 0; i < amp.size(); ++i) {
    if (!((i >> control) & 1u)) continue;
    const std::uint64_t j = (i & keep) | (a.extract(i) << b.offset) | (b.extract(i) << a.offset);
    if (i < j) std::swap(amp[i], amp[j]);
  }
}

/// Sample a basis state by inverting the cumulative distribution of |amp|^2.
inline std::uint64_t measure(const StateVector& psi, std::mt19937_64& rng) {
  const double total = psi.norm_squared();
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * total;
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    const double p = psi[i] * psi[i];
    if (p == 0.0) continue;
    acc += p;
    last_nonzero = i;
    if (u < acc) return i;
  }
  return last_nonzero;
}

/// Flip the global sign so the largest-magnitude amplitude is positive.
inline void normalize_global_sign(StateVector& psi) {
  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < psi.size(); ++i) {
    if (std::abs(psi[i]) > std::abs(psi[best])) best = i;
  }
  if (psi[best] < 0) {
    for (auto& a : psi.amplitudes()) a = -a;
  }
}

struct TranscriptStep {
  std::string label;
  double norm_squared;
};

/// Optional record of a run: state norm after each gate, measurements, counters.
struct RunTranscript {
  std::vector<TranscriptStep> steps;
  std::vector<std::uint64_t> outcomes;
  QueryStats queries;

  void note(const std::string& label, const StateVector& psi) { steps.push_back({label, psi.norm_squared()}); }
};

namespace detail {
inline void note(RunTranscript* t, const char* label, const StateVector& psi) {
  if (t != nullptr) t->note(label, psi);
}
}  // namespace detail

/// The A1 circuit up to measurement: H, U_g, H, U_dual, H. Leaves +-|s>.
inline StateVector a1_circuit(ShiftOracle& oracle, RunTranscript* transcript = nullptr) {
  if (!oracle.has_dual()) throw AccessDenied("A1 needs an oracle with dual access");
  const unsigned n = oracle.n();
  const Register reg{0, n};
  StateVector psi(n);
  hadamard_all(psi, reg);
  detail::note(transcript, "H", psi);
  oracle.phase_query(Channel::g, [&](const TruthTable& g) { phase_oracle(psi, g, reg); });
  detail::note(transcript, "U_g", psi);
  hadamard_all(psi, reg);
  detail::note(transcript, "H", psi);
  oracle.phase_query(Channel::dual, [&](const TruthTable& d) { phase_oracle(psi, d, reg); });
  detail::note(transcript, "U_dual", psi);
  hadamard_all(psi, reg);
  detail::note(transcript, "H", psi);
  normalize_global_sign(psi);
  return psi;
}

/// Zero-error recovery of s with one g-phase and one dual-phase query.
inline BitVec run_a1(ShiftOracle& oracle, std::uint64_t seed = 0, RunTranscript* transcript = nullptr) {
  StateVector psi = a1_circuit(oracle, transcript);
  std::mt19937_64 rng(seed);
  const std::uint64_t outcome = measure(psi, rng);
  if (transcript != nullptr) {
    transcript->outcomes.push_back(outcome);
    transcript->queries = oracle.stats();
  }
  return BitVec::from_index(outcome, oracle.n());
}

/// Qubit layout of the A2 circuit on 2n + 1 qubits.
struct A2Layout {
  Register x;
  Register y;
  unsigned b;

  explicit A2Layout(unsigned n) : x{0, n}, y{n, n}, b(2 * n) {}
};

inline constexpr unsigned kMaxA2Variables = 12;

/// One pass of the A2 circuit up to measurement: H on everything, CNOT x->y,
/// U_g on y controlled by b = 1, U_f on y controlled by b = 0, CNOT x->y,
/// H on (b, x). The controlled phases realize the conditional oracle directly.
inline StateVector a2_circuit(ShiftOracle& oracle, RunTranscript* transcript = nullptr) {
  const unsigned n = oracle.n();
  if (n > kMaxA2Variables) throw ResourceError("A2 simulation supports n <= 12");
  const A2Layout L(n);
  StateVector psi(2 * n + 1);
  hadamard_all(psi, Register{0, 2 * n + 1});
  detail::note(transcript, "H", psi);
  cnot_block(psi, L.x, L.y);
  detail::note(transcript, "CNOT", psi);
  oracle.phase_query(Channel::g, [&](const TruthTable& g) { controlled_phase_oracle(psi, g, L.y, L.b, true); });
  detail::note(transcript, "C-U_g", psi);
  oracle.phase_query(Channel::f, [&](const TruthTable& f) { controlled_phase_oracle(psi, f, L.y, L.b, false); });
  detail::note(transcript, "C0-U_f", psi);
  cnot_block(psi, L.x, L.y);
  detail::note(transcript, "CNOT", psi);
  hadamard_all(psi, L.x);
  apply_hadamard(psi, L.b);
  detail::note(transcript, "H", psi);
  return psi;
}

/// Measured (b, x) packed as a in Z_2^(n+1): bit 0 is b, bits 1..n are x.
inline BitVec a2_outcome(std::uint64_t basis_index, unsigned n) {
  const A2Layout L(n);
  const std::uint64_t packed = ((basis_index >> L.b) & 1u) | (L.x.extract(basis_index) << 1);
  return BitVec::from_index(packed, n + 1);
}

/// One sample a with a . (1, s) = 0.
inline BitVec run_a2_sample(ShiftOracle& oracle, std::mt19937_64& rng, RunTranscript* transcript = nullptr) {
  const StateVector psi = a2_circuit(oracle, transcript);
  const std::uint64_t outcome = measure(psi, rng);
  if (transcript != nullptr) transcript->outcomes.push_back(outcome);
  return a2_outcome(outcome, oracle.n());
}

struct A2Result {
  std::optional<BitVec> shift;  ///< empty if the samples never reached rank n
  std::size_t rounds = 0;
  std::vector<BitVec> samples;
  QueryStats queries;
};

inline std::size_t default_a2_rounds(unsigned n) { return 3 * (static_cast<std::size_t>(n) + 1); }

/// Sample until the span has rank n, then read s off the one-dimensional
/// kernel {0, (1, s)}.
inline A2Result run_a2(ShiftOracle& oracle, std::size_t max_rounds, std::uint64_t seed,
                       RunTranscript* transcript = nullptr) {
  const unsigned n = oracle.n();
  std::mt19937_64 rng(seed);
  A2Result result;
  while (result.rounds < max_rounds) {
    result.samples.push_back(run_a2_sample(oracle, rng, transcript));
    ++result.rounds;
    const BitMatrix m = BitMatrix::from_rows(result.samples, n + 1);
    if (rank(m) < n) continue;
    const SolveResult sol = solve(m, BitVec(m.rows()));
    if (sol.kernel.size() == 1 && sol.kernel.front().get(0)) {
      result.shift = sol.kernel.front().slice(1, n);
    }
    break;
  }
  result.queries = oracle.stats();
  if (transcript != nullptr) transcript->queries = oracle.stats();
  return result;
}

}  // namespace bentshift
