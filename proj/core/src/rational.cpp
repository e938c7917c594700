#include "slopegap/rational.hpp"

#include <charconv>

#include "slopegap/error.hpp"

namespace slopegap {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || s.empty())
      throw Error(ErrorKind::Parse, "not a rational number: '" + text + "'");
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
  return Rational(parse_int(std::string_view(text).substr(0, slash)), den);
}

}  // namespace slopegap
