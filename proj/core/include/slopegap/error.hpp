#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slopegap {

enum class ErrorKind {
  ZeroAtPrecision,
  ZeroInput,
  WindowExhausted,
  PrecisionExhausted,
  NotAUnit,
  NotInvertible,
  NonIntegralTwist,
  IncompatiblePower,
  ZeroDeterminantAtPrecision,
  DecayTooSlow,
  NotIntegrable,
  NonIntegralExponent,
  NotRegularSingular,
  WitnessFailure,
  CompatibilityDefect,
  NotInShape,
  GenerationFailed,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the kernel carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace slopegap
