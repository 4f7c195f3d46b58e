#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bentshift {

/// Caller broke a precondition: mismatched lengths, out-of-range registers.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by dual() when the spectrum is not flat at `frequency`.
class NotBentError : public DomainError {
 public:
  NotBentError(std::uint64_t frequency, std::int64_t coefficient)
      : DomainError("function is not bent: |W(" + std::to_string(frequency) +
                    ")| = " + std::to_string(coefficient < 0 ? -coefficient : coefficient)),
        frequency_(frequency),
        coefficient_(coefficient) {}

  std::uint64_t frequency() const noexcept { return frequency_; }
  std::int64_t coefficient() const noexcept { return coefficient_; }

 private:
  std::uint64_t frequency_;
  std::int64_t coefficient_;
};

/// Oracle channel not available (e.g. dual query on an O_f oracle).
class AccessDenied : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested size exceeds a hard memory/time cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data that was promised to be consistent is not (e.g. g is not a shift of f).
class InconsistentInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t offset, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", offset " +
                           std::to_string(offset) + ": " + what),
        line_(line),
        offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

}  // namespace bentshift
