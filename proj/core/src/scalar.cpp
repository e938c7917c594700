#include "slopegap/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <vector>

#include "slopegap/error.hpp"

namespace slopegap {

namespace detail {

namespace {

const std::vector<std::uint64_t>& power_table(int p) {
  thread_local int cached_prime = 0;
  thread_local std::vector<std::uint64_t> table;
  if (cached_prime != p) {
    table.assign(1, 1);
    const auto bp = static_cast<std::uint64_t>(p);
    while (table.back() <= (std::uint64_t{1} << 63) / bp) table.push_back(table.back() * bp);
    cached_prime = p;
  }
  return table;
}

}  // namespace

std::uint64_t ipow(int p, int k) {
  const auto& table = power_table(p);
  assert(k >= 0 && static_cast<std::size_t>(k) < table.size());
  return table[static_cast<std::size_t>(k)];
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw Error(ErrorKind::ZeroAtPrecision, "residue is not invertible");
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % sm) + sm) % sm);
}

int padic_valuation(std::int64_t value, int p) {
  assert(value != 0);
  int v = 0;
  while (value % p == 0) {
    value /= p;
    ++v;
  }
  return v;
}

}  // namespace detail

using detail::ipow;
using detail::mulmod;

int PadicScalar::max_relative_precision(int p) {
  int r = 0;
  unsigned __int128 acc = 1;
  while (acc * static_cast<unsigned>(p) < (static_cast<unsigned __int128>(1) << 62)) {
    acc *= static_cast<unsigned>(p);
    ++r;
  }
  return r;
}

PadicScalar PadicScalar::zero(int p, int absolute_precision) {
  PadicScalar z;
  z.p_ = p;
  z.v_ = absolute_precision;
  return z;
}

PadicScalar PadicScalar::make(int p, int v, std::int64_t u, int relative_precision) {
  int r = std::min(relative_precision, max_relative_precision(p));
  if (r <= 0) return zero(p, v + relative_precision);
  const auto m = static_cast<std::int64_t>(ipow(p, r));
  std::int64_t reduced = u % m;
  if (reduced < 0) reduced += m;
  if (reduced == 0) return zero(p, v + r);
  while (reduced % p == 0) {
    reduced /= p;
    ++v;
    --r;
  }
  PadicScalar s;
  s.p_ = p;
  s.v_ = v;
  s.r_ = r;
  s.u_ = static_cast<std::uint64_t>(reduced);
  return s;
}

PadicScalar PadicScalar::from_integer(int p, std::int64_t value, int absolute_precision) {
  if (value == 0) return zero(p, absolute_precision);
  const int v = detail::padic_valuation(value, p);
  std::int64_t rest = value;
  for (int i = 0; i < v; ++i) rest /= p;
  if (absolute_precision <= v) return zero(p, absolute_precision);
  return make(p, v, rest, absolute_precision - v);
}

PadicScalar PadicScalar::from_rational(int p, std::int64_t num, std::int64_t den,
                                       int absolute_precision) {
  if (den == 0) throw Error(ErrorKind::ZeroAtPrecision, "rational with zero denominator");
  if (num == 0) return zero(p, absolute_precision);
  const int vn = detail::padic_valuation(num, p);
  const int vd = detail::padic_valuation(den, p);
  for (int i = 0; i < vn; ++i) num /= p;
  for (int i = 0; i < vd; ++i) den /= p;
  const int v = vn - vd;
  const int r = std::min(absolute_precision - v, max_relative_precision(p));
  if (r <= 0) return zero(p, absolute_precision);
  const auto m = ipow(p, r);
  auto to_residue = [m](std::int64_t x) {
    const auto sm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((x % sm) + sm) % sm);
  };
  const std::uint64_t u = mulmod(to_residue(num), detail::invmod(to_residue(den), m), m);
  return make(p, v, static_cast<std::int64_t>(u), r);
}

PadicScalar PadicScalar::power_of_p(int p, int k, int relative_precision) {
  return make(p, k, 1, relative_precision);
}

PadicScalar PadicScalar::operator-() const {
  if (is_zero()) return *this;
  PadicScalar out = *this;
  out.u_ = ipow(p_, r_) - u_;
  return out;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  assert(a.p_ == b.p_);
  const int p = a.p_;
  const int abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
  if (a.is_zero() && b.is_zero()) return PadicScalar::zero(p, abs_prec);
  if (a.is_zero()) return b.with_absolute_precision(abs_prec);
  if (b.is_zero()) return a.with_absolute_precision(abs_prec);
  const int v = std::min(a.v_, b.v_);
  const int r = abs_prec - v;
  if (r <= 0) return PadicScalar::zero(p, abs_prec);
  const std::uint64_t m = ipow(p, r);
  auto aligned = [&](const PadicScalar& x) -> std::uint64_t {
    const int shift = x.v_ - v;
    if (shift >= r) return 0;
    return mulmod(x.u_ % m, ipow(p, shift), m);
  };
  const std::uint64_t sum = (aligned(a) + aligned(b)) % m;
  return PadicScalar::make(p, v, static_cast<std::int64_t>(sum), r);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  assert(a.p_ == b.p_);
  if (a.is_zero() || b.is_zero()) return PadicScalar::zero(a.p_, a.v_ + b.v_);
  PadicScalar out;
  out.p_ = a.p_;
  out.r_ = std::min(a.r_, b.r_);
  out.v_ = a.v_ + b.v_;
  const std::uint64_t m = ipow(a.p_, out.r_);
  out.u_ = mulmod(a.u_ % m, b.u_ % m, m);
  return out;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inverse(); }

PadicScalar PadicScalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroAtPrecision, "inverting zero at precision " + std::to_string(v_));
  PadicScalar out = *this;
  out.v_ = -v_;
  out.u_ = detail::invmod(u_, ipow(p_, r_));
  return out;
}

PadicScalar PadicScalar::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  if (is_zero()) return k == 0 ? make(p_, 0, 1, max_relative_precision(p_)) : zero(p_, static_cast<int>(v_ * k));
  PadicScalar result = make(p_, 0, 1, r_);
  PadicScalar base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

PadicScalar PadicScalar::with_absolute_precision(int absolute_precision) const {
  if (absolute_precision >= this->absolute_precision()) return *this;
  if (is_zero()) return zero(p_, absolute_precision);
  const int r = absolute_precision - v_;
  if (r <= 0) return zero(p_, absolute_precision);
  PadicScalar out = *this;
  out.r_ = r;
  out.u_ = u_ % ipow(p_, r);
  return out;
}

bool congruent(const PadicScalar& a, const PadicScalar& b, int k) {
  if (a.absolute_precision() < k || b.absolute_precision() < k) return false;
  const PadicScalar d = a - b;
  return d.valuation() >= k;
}

std::optional<std::int64_t> PadicScalar::symmetric_integer() const {
  if (is_zero()) return 0;
  if (v_ < 0) return std::nullopt;
  const int total = v_ + r_;
  if (total > max_relative_precision(p_)) return std::nullopt;
  const std::uint64_t m = ipow(p_, total);
  const std::uint64_t value = mulmod(u_, ipow(p_, v_), m);
  const auto sm = static_cast<std::int64_t>(m);
  auto signed_value = static_cast<std::int64_t>(value);
  if (signed_value > sm / 2) signed_value -= sm;
  return signed_value;
}

std::string PadicScalar::to_string() const {
  std::ostringstream out;
  if (is_zero()) {
    out << "O(" << p_ << "^" << v_ << ")";
  } else {
    out << u_ << "*" << p_ << "^" << v_ << " + O(" << p_ << "^" << absolute_precision() << ")";
  }
  return out.str();
}

PadicScalar teichmuller(int p, std::int64_t t, int precision) {
  std::int64_t residue = t % p;
  if (residue < 0) residue += p;
  if (residue == 0) throw Error(ErrorKind::ZeroInput, "Teichmueller lift of 0");
  const int r = std::min(precision, PadicScalar::max_relative_precision(p));
  const std::uint64_t m = ipow(p, r);
  std::uint64_t z = static_cast<std::uint64_t>(residue);
  // z -> z^p contracts towards the root of unity congruent to t.
  for (int step = 1; step < r; ++step) {
    std::uint64_t acc = 1, base = z;
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = mulmod(acc, base, m);
      base = mulmod(base, base, m);
    }
    z = acc;
  }
  return PadicScalar::make(p, 0, static_cast<std::int64_t>(z), r);
}

}  // namespace slopegap
