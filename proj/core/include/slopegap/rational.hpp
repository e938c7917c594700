#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace slopegap {

using Rational = boost::rational<std::int64_t>;

// "a/b", or "a" when the denominator is one.
std::string to_string(const Rational& r);

// Accepts "a", "-a", "a/b". Throws Error(Parse) on malformed input.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace slopegap
