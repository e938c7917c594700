#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "slopegap/scalar.hpp"

namespace slopegap {

constexpr int kMaxVariables = 4;

using Exponent = std::array<std::int32_t, kMaxVariables>;

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : e) h = (h ^ static_cast<std::uint32_t>(x)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

// Variables 0..n-1 are torus coordinates (T_i^{+-1}); n..n+m-1 are affine.
struct RingShape {
  int p = 5;
  int n = 1;
  int m = 0;
  // Exponents outside [-box, box] are never stored.
  std::int64_t box = std::int64_t{1} << 20;

  int variables() const noexcept { return n + m; }
  bool operator==(const RingShape&) const = default;
};

constexpr std::int64_t kUnbounded = std::int64_t{1} << 50;

// Per-variable interval of exponents on which coefficients are exactly known
// modulo p^N. A side equal to +-kUnbounded means nothing unknown lies beyond it.
struct Window {
  std::array<std::int64_t, kMaxVariables> lo{-kUnbounded, -kUnbounded, -kUnbounded, -kUnbounded};
  std::array<std::int64_t, kMaxVariables> hi{kUnbounded, kUnbounded, kUnbounded, kUnbounded};

  static Window full() { return {}; }
  static Window box(const RingShape& shape, std::int64_t radius);

  bool complete() const noexcept;
  bool contains(const Exponent& e, int variables) const noexcept;
  bool empty(int variables) const noexcept;
  Window intersect(const Window& other) const noexcept;
  bool operator==(const Window&) const = default;
};

/**
 * Finitely stored multivariate Laurent series with a flat absolute precision N
 * and a guaranteed window. Stored coefficients are nonzero modulo p^N; every
 * exponent inside the window that is not stored has coefficient 0 mod p^N.
 */
class LaurentSeries {
 public:
  using Terms = std::map<Exponent, PadicScalar>;

  LaurentSeries() = default;
  // The zero series, complete, at absolute precision N.
  LaurentSeries(const RingShape& shape, int precision);

  static LaurentSeries from_terms(const RingShape& shape, int precision, const Terms& terms,
                                  const Window& window = Window::full());
  static LaurentSeries constant(const RingShape& shape, int precision, const PadicScalar& c);
  static LaurentSeries integer(const RingShape& shape, int precision, std::int64_t value);
  static LaurentSeries monomial(const RingShape& shape, int precision, const Exponent& e,
                                const PadicScalar& c);

  const RingShape& shape() const noexcept { return shape_; }
  int prime() const noexcept { return shape_.p; }
  int precision() const noexcept { return precision_; }
  const Window& window() const noexcept { return window_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_complete() const noexcept { return window_.complete(); }

  PadicScalar coefficient(const Exponent& e) const;

  // Minimum coefficient valuation. Throws Error(ZeroAtPrecision) on zero.
  int gauss_valuation() const;
  // Gauss valuation, or N for the zero series: x is known to be 0 mod p^result.
  int valuation_bound() const noexcept;

  // Smallest and largest stored degree in variable i.
  std::optional<std::pair<std::int32_t, std::int32_t>> degree_range(int i) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y);
  LaurentSeries& operator+=(const LaurentSeries& y) { return *this = *this + y; }
  LaurentSeries& operator-=(const LaurentSeries& y) { return *this = *this - y; }
  LaurentSeries& operator*=(const LaurentSeries& y) { return *this = *this * y; }

  LaurentSeries scale(const PadicScalar& c) const;
  LaurentSeries scale_by_p_power(int k) const;
  LaurentSeries shift(const Exponent& e) const;

  LaurentSeries with_precision(int precision) const;
  LaurentSeries restrict_to(const Window& window) const;

  bool operator==(const LaurentSeries&) const = default;

  std::string to_string() const;

 private:
  void normalize();

  RingShape shape_;
  int precision_ = 0;
  Window window_;
  Terms terms_;
};

// x and y agree modulo p^k on their common window.
bool congruent(const LaurentSeries& x, const LaurentSeries& y, int k);

Exponent unit_exponent(int i);

inline std::ostream& operator<<(std::ostream& os, const LaurentSeries& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const PadicScalar& x) { return os << x.to_string(); }

}  // namespace slopegap
