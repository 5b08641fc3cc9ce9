#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace supreg {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  ModulusMismatch,
  ZeroInverse,
  ParseError,
  DenominatorZeroModP,
  NonResidue,
  DegenerateLinear,
  IndexOutOfRange,
  ZeroScalar,
  DegreeTooHigh,
  CoefficientOverflow,
  PrefixLengthMismatch,
  DenominatorVanishes,
  DeadPrefix,
  FieldTooSmall,
  VariantInapplicable,
  NoWitness,
  DeadEnd,
  DataCorrupt,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace supreg
