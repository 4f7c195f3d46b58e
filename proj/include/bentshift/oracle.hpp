#pragma once

// Hidden shift instances behind query-counting oracles.
//
// The oracle holds full truth tables; the counters are what keeps solvers
// honest. Every classical evaluation and every application of a phase
// unitary increments exactly one counter.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "bentshift/descriptor.hpp"
#include "bentshift/errors.hpp"
#include "bentshift/gf2.hpp"
#include "bentshift/truth_table.hpp"

namespace bentshift {

enum class Channel { f, g, dual };

inline const char* channel_name(Channel c) {
  switch (c) {
    case Channel::f: return "f";
    case Channel::g: return "g";
    case Channel::dual: return "dual";
  }
  return "?";
}

struct QueryStats {
  std::uint64_t f = 0;
  std::uint64_t g = 0;
  std::uint64_t dual = 0;
  std::uint64_t phase_f = 0;
  std::uint64_t phase_g = 0;
  std::uint64_t phase_dual = 0;

  std::uint64_t classical() const noexcept { return f + g + dual; }
  std::uint64_t quantum() const noexcept { return phase_f + phase_g + phase_dual; }
  std::uint64_t total() const noexcept { return classical() + quantum(); }

  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

struct HiddenShiftInstance {
  FamilyDescriptor family;
  TruthTable f;
  BitVec s;
  TruthTable g;                     ///< g(x) = f(x + s)
  std::optional<TruthTable> f_dual;

  unsigned n() const noexcept { return f.n(); }
};

/// Builds f from the descriptor, rejects non-bent f, and attaches g = f(. + s)
/// and the dual (closed form where available, cross-checked by transform).
inline HiddenShiftInstance make_instance(const FamilyDescriptor& family, const BitVec& s) {
  TruthTable f = build_function(family);
  if (s.size() != f.n()) throw ContractViolation("make_instance: shift length does not match n");
  const Spectrum spectrum = wht(f);
  if (!is_bent(spectrum)) throw DomainError("make_instance: " + family_tag(family) + " descriptor is not bent");
  TruthTable f_dual = dual(spectrum);
  if (auto closed = closed_form_dual(family); closed && !(*closed == f_dual)) {
    throw DomainError("make_instance: closed-form dual disagrees with transform");
  }
  TruthTable g = shift(f, s);
  return {family, std::move(f), s, std::move(g), std::move(f_dual)};
}

/// Same, with s drawn uniformly from a generator seeded by `seed`.
inline HiddenShiftInstance make_instance(const FamilyDescriptor& family, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return make_instance(family, random_bitvec(variable_count(family), rng));
}

struct QueryRecord {
  Channel channel;
  std::uint64_t input;
  bool answer;
};

/// O_f (f and g) or O_{f, dual} (f, g and the dual bent function).
class ShiftOracle {
 public:
  static ShiftOracle standard(std::shared_ptr<const HiddenShiftInstance> instance) {
    return ShiftOracle(std::move(instance), false);
  }

  static ShiftOracle with_dual(std::shared_ptr<const HiddenShiftInstance> instance) {
    if (!instance->f_dual) throw DomainError("ShiftOracle: instance carries no dual");
    return ShiftOracle(std::move(instance), true);
  }

  ShiftOracle(ShiftOracle&&) noexcept = default;
  ShiftOracle& operator=(ShiftOracle&&) noexcept = default;
  ShiftOracle(const ShiftOracle&) = delete;
  ShiftOracle& operator=(const ShiftOracle&) = delete;

  /// Same instance and access level, zeroed counters.
  ShiftOracle fresh() const { return ShiftOracle(instance_, dual_access_); }

  unsigned n() const noexcept { return instance_->n(); }
  bool has_dual() const noexcept { return dual_access_; }
  const FamilyDescriptor& family() const noexcept { return instance_->family; }
  const QueryStats& stats() const noexcept { return stats_; }
  const std::vector<QueryRecord>& log() const noexcept { return log_; }

  /// The per-query log is on by default; large readouts can switch it off.
  void keep_log(bool on) noexcept { logging_ = on; }

  bool query_f(std::uint64_t x) { return record(Channel::f, x, stats_.f); }
  bool query_g(std::uint64_t x) { return record(Channel::g, x, stats_.g); }
  bool query_dual(std::uint64_t w) {
    require_dual();
    return record(Channel::dual, w, stats_.dual);
  }

  bool query_f(const BitVec& x) { return query_f(index_of(x)); }
  bool query_g(const BitVec& x) { return query_g(index_of(x)); }
  bool query_dual(const BitVec& w) { return query_dual(index_of(w)); }

  /// One application of the phase unitary for `channel`: `gate` receives the
  /// table and must apply it exactly once. Counted once regardless of width.
  template <class Gate>
  void phase_query(Channel channel, Gate&& gate) {
    switch (channel) {
      case Channel::f: ++stats_.phase_f; break;
      case Channel::g: ++stats_.phase_g; break;
      case Channel::dual:
        require_dual();
        ++stats_.phase_dual;
        break;
    }
    gate(table(channel));
  }

 private:
  ShiftOracle(std::shared_ptr<const HiddenShiftInstance> instance, bool dual_access)
      : instance_(std::move(instance)), dual_access_(dual_access) {}

  const TruthTable& table(Channel c) const {
    switch (c) {
      case Channel::f: return instance_->f;
      case Channel::g: return instance_->g;
      case Channel::dual: return *instance_->f_dual;
    }
    return instance_->f;
  }

  void require_dual() const {
    if (!dual_access_) throw AccessDenied("dual channel is not available on an O_f oracle");
  }

  std::uint64_t index_of(const BitVec& x) const {
    if (x.size() != n()) throw ContractViolation("oracle query: input length != n");
    return x.to_index();
  }

  bool record(Channel c, std::uint64_t x, std::uint64_t& counter) {
    if (x >= (std::uint64_t{1} << n())) throw ContractViolation("oracle query: input out of range");
    const bool answer = table(c).get(x);
    ++counter;
    if (logging_) log_.push_back({c, x, answer});
    return answer;
  }

  std::shared_ptr<const HiddenShiftInstance> instance_;
  bool dual_access_;
  QueryStats stats_;
  bool logging_ = true;
  std::vector<QueryRecord> log_;
};

}  // namespace bentshift
