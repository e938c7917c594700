#include "slopegap/error.hpp"

namespace slopegap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroAtPrecision: return "ZeroAtPrecision";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::WindowExhausted: return "WindowExhausted";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NonIntegralTwist: return "NonIntegralTwist";
    case ErrorKind::IncompatiblePower: return "IncompatiblePower";
    case ErrorKind::ZeroDeterminantAtPrecision: return "ZeroDeterminantAtPrecision";
    case ErrorKind::DecayTooSlow: return "DecayTooSlow";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorKind::NotRegularSingular: return "NotRegularSingular";
    case ErrorKind::WitnessFailure: return "WitnessFailure";
    case ErrorKind::CompatibilityDefect: return "CompatibilityDefect";
    case ErrorKind::NotInShape: return "NotInShape";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

}  // namespace slopegap
