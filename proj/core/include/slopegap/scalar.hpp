#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace slopegap {

/**
 * Element of Q_p at bounded precision, stored as p^v * u with u a unit
 * residue modulo p^R.
 *
 * The value is known modulo p^(v+R) (its absolute precision). Zero is the
 * special case u == 0, R == 0, where v records the absolute precision: the
 * element is "zero mod p^v". Relative precision is capped so that p^R fits
 * in 62 bits; precision beyond the cap is silently forgotten, which is
 * always sound.
 *
 * The coefficient Frobenius is the identity (residue field F_p), so no
 * Frobenius action lives here.
 */
class PadicScalar {
 public:
  PadicScalar() = default;

  static PadicScalar zero(int p, int absolute_precision);
  static PadicScalar from_integer(int p, std::int64_t value, int absolute_precision);
  static PadicScalar from_rational(int p, std::int64_t num, std::int64_t den,
                                   int absolute_precision);
  // Normalizing constructor: strips factors of p from u and reduces it.
  static PadicScalar make(int p, int v, std::int64_t u, int relative_precision);
  // p^k exactly, carried to the given relative precision.
  static PadicScalar power_of_p(int p, int k, int relative_precision);

  // Largest R with p^R < 2^62.
  static int max_relative_precision(int p);

  int prime() const noexcept { return p_; }
  // For zero this is the absolute precision (a lower bound on the true valuation).
  int valuation() const noexcept { return v_; }
  std::uint64_t unit() const noexcept { return u_; }
  int relative_precision() const noexcept { return r_; }
  int absolute_precision() const noexcept { return v_ + r_; }
  bool is_zero() const noexcept { return u_ == 0; }

  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
  PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
  PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
  PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }

  // Structural equality: same digits at the same precision.
  friend bool operator==(const PadicScalar& a, const PadicScalar& b) = default;

  // Throws Error(ZeroAtPrecision) when the value is zero.
  PadicScalar inverse() const;
  PadicScalar pow(std::int64_t k) const;

  // Forget digits beyond p^absolute_precision (never adds digits).
  PadicScalar with_absolute_precision(int absolute_precision) const;

  // True iff a - b is zero modulo p^k and both sides are known that far.
  friend bool congruent(const PadicScalar& a, const PadicScalar& b, int k);

  // The integer n with |n| < p^(v+R)/2 congruent to this value, when the
  // value is integral and that representative fits in an int64.
  std::optional<std::int64_t> symmetric_integer() const;

  std::string unit_string() const { return std::to_string(u_); }
  std::string to_string() const;

 private:
  std::uint64_t u_ = 0;
  int v_ = 0;
  int r_ = 0;
  int p_ = 0;
};

// Teichmueller representative of t in F_p^x at relative precision R:
// zeta^(p-1) = 1 mod p^R and zeta = t mod p. Throws Error(ZeroInput) if p | t.
PadicScalar teichmuller(int p, std::int64_t t, int precision);

namespace detail {
// p^k as an unsigned 64-bit value; k must satisfy p^k < 2^63.
std::uint64_t ipow(int p, int k);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
// Inverse of a unit a modulo m.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
int padic_valuation(std::int64_t value, int p);
}  // namespace detail

}  // namespace slopegap
