#include "slopegap/polyannulus.hpp"

#include <algorithm>

#include "slopegap/error.hpp"

namespace slopegap {

namespace {

template <class Keep>
LaurentSeries filter(const LaurentSeries& x, const Window& window, Keep keep) {
  LaurentSeries::Terms t;
  for (const auto& [e, c] : x.terms())
    if (keep(e)) t.emplace(e, c);
  return LaurentSeries::from_terms(x.shape(), x.precision(), t, window);
}

void require_torus(const LaurentSeries& x, int i) {
  if (i < 0 || i >= x.shape().n)
    throw Error(ErrorKind::WindowExhausted, "variable " + std::to_string(i + 1) + " is not a torus coordinate");
}

std::int64_t scale_bound(std::int64_t bound, std::int64_t factor, std::int64_t box) {
  if (bound == kUnbounded || bound == -kUnbounded) return bound;
  if (bound > 0) return bound > box / factor ? box : bound * factor;
  if (bound < 0) return -bound > box / factor ? -box : bound * factor;
  return 0;
}

}  // namespace

LaurentSeries truncate_below(int i, const LaurentSeries& x) {
  require_torus(x, i);
  Window w = x.window();
  w.hi[i] = kUnbounded;
  return filter(x, w, [i](const Exponent& e) { return e[i] <= -2; });
}

LaurentSeries truncate_at_least(int i, const LaurentSeries& x) {
  require_torus(x, i);
  Window w = x.window();
  w.lo[i] = -kUnbounded;
  return filter(x, w, [i](const Exponent& e) { return e[i] >= 0; });
}

LaurentSeries residue_term(int i, const LaurentSeries& x) {
  require_torus(x, i);
  const Window& src = x.window();
  if (src.lo[i] > -1 || src.hi[i] < -1)
    throw Error(ErrorKind::WindowExhausted, "T^-1 slice lies outside the window");
  Window w = src;
  w.lo[i] = -kUnbounded;
  w.hi[i] = kUnbounded;
  return filter(x, w, [i](const Exponent& e) { return e[i] == -1; });
}

LaurentSeries residue(int i, const LaurentSeries& x) {
  return residue_term(i, x).shift(unit_exponent(i));
}

std::optional<std::int64_t> partial_valuation(int i, int j, const LaurentSeries& x) {
  if (j >= x.precision())
    throw Error(ErrorKind::PrecisionExhausted,
                "partial valuation at level " + std::to_string(j) + " needs precision above " +
                    std::to_string(x.precision()));
  std::optional<std::int64_t> w;
  for (const auto& [e, c] : x.terms())
    if (c.valuation() <= j && (!w || e[i] < *w)) w = e[i];
  return w;
}

LaurentSeries primitive(int i, const LaurentSeries& x) {
  require_torus(x, i);
  if (x.is_zero()) return x;
  const int p = x.prime();
  const auto range = x.degree_range(i);
  if (range->second > -2)
    throw Error(ErrorKind::WindowExhausted, "primitive needs T_i-degrees <= -2");
  // Digits lost to the worst denominator anywhere in the known degree range.
  const std::int64_t lowest = x.window().lo[i] == -kUnbounded ? range->first : x.window().lo[i];
  int lost = 0;
  for (std::int64_t pk = p; pk <= -(lowest + 1); pk *= p) ++lost;

  const int out_precision = x.precision() - lost;
  if (out_precision <= 0) throw Error(ErrorKind::PrecisionExhausted, "primitive lost every significant digit");
  const int carry = x.precision() + PadicScalar::max_relative_precision(p);
  LaurentSeries::Terms t;
  for (const auto& [e, c] : x.terms()) {
    Exponent up = e;
    up[i] += 1;
    t.emplace(up, c * PadicScalar::from_rational(p, 1, e[i] + 1, carry));
  }
  Window w = x.window();
  if (w.lo[i] != -kUnbounded) w.lo[i] += 1;
  w.hi[i] = kUnbounded;
  return LaurentSeries::from_terms(x.shape(), out_precision, t, w);
}

namespace {

LaurentSeries multiply_by_degree(int i, const LaurentSeries& x, int step) {
  const int p = x.prime();
  const int carry = x.precision() + PadicScalar::max_relative_precision(p);
  LaurentSeries::Terms t;
  for (const auto& [e, c] : x.terms()) {
    if (e[i] == 0) continue;
    Exponent down = e;
    down[i] -= step;
    t.emplace(down, c * PadicScalar::from_integer(p, e[i], carry));
  }
  Window w = x.window();
  if (w.lo[i] != -kUnbounded) w.lo[i] -= step;
  if (w.hi[i] != kUnbounded) w.hi[i] -= step;
  return LaurentSeries::from_terms(x.shape(), x.precision(), t, w);
}

}  // namespace

LaurentSeries derivative(int i, const LaurentSeries& x) { return multiply_by_degree(i, x, 1); }

LaurentSeries theta(int i, const LaurentSeries& x) { return multiply_by_degree(i, x, 0); }

LaurentSeries frobenius_power(int f, const LaurentSeries& x) {
  if (f == 0) return x;
  const RingShape& shape = x.shape();
  std::int64_t factor = 1;
  for (int k = 0; k < f; ++k) factor = std::min<std::int64_t>(factor * shape.p, shape.box + 1);
  Window w = x.window();
  for (int i = 0; i < shape.variables(); ++i) {
    w.lo[i] = scale_bound(w.lo[i], factor, shape.box);
    w.hi[i] = scale_bound(w.hi[i], factor, shape.box);
  }
  LaurentSeries::Terms t;
  bool dropped[kMaxVariables][2] = {};
  for (const auto& [e, c] : x.terms()) {
    Exponent scaled{};
    bool inside = true;
    for (int i = 0; i < shape.variables(); ++i) {
      const std::int64_t d = static_cast<std::int64_t>(e[i]) * factor;
      if (d > shape.box || d < -shape.box) {
        dropped[i][d > 0] = true;
        inside = false;
      } else {
        scaled[i] = static_cast<std::int32_t>(d);
      }
    }
    if (inside) t.emplace(scaled, c);
  }
  for (int i = 0; i < shape.variables(); ++i) {
    if (dropped[i][0]) w.lo[i] = std::max(w.lo[i], -shape.box);
    if (dropped[i][1]) w.hi[i] = std::min(w.hi[i], shape.box);
  }
  return LaurentSeries::from_terms(shape, x.precision(), t, w);
}

std::optional<std::pair<Exponent, PadicScalar>> leading_term(const LaurentSeries& x) {
  if (x.is_zero()) return std::nullopt;
  const int g = x.gauss_valuation();
  std::optional<std::pair<Exponent, PadicScalar>> lead;
  for (const auto& [e, c] : x.terms()) {
    if (c.valuation() != g) continue;
    if (lead) return std::nullopt;
    lead = std::make_pair(e, c);
  }
  return lead;
}

LaurentSeries invert_unit(const LaurentSeries& x, const Window& target) {
  if (x.is_zero() || x.gauss_valuation() != 0)
    throw Error(ErrorKind::NotAUnit, "series does not have Gauss valuation 0");
  const auto lead = leading_term(x);
  if (!lead) throw Error(ErrorKind::NotAUnit, "reduction mod p is not a monomial");
  const auto& [a, c] = *lead;
  for (int i = x.shape().n; i < x.shape().variables(); ++i)
    if (a[i] != 0) throw Error(ErrorKind::NotAUnit, "reduction mod p involves an affine variable");

  const int precision = x.precision();
  Exponent minus_a{};
  for (int i = 0; i < kMaxVariables; ++i) minus_a[i] = -a[i];
  const PadicScalar c_inv = c.inverse();
  const LaurentSeries one = LaurentSeries::integer(x.shape(), precision, 1);
  const LaurentSeries minus_y = one - x.shift(minus_a).scale(c_inv);

  LaurentSeries sum = one;
  LaurentSeries power = one;
  while (true) {
    power = (power * minus_y).with_precision(precision);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.shift(minus_a).scale(c_inv).with_precision(precision).restrict_to(target);
}

LaurentSeries invert(const LaurentSeries& x, const Window& target) {
  const int g = x.gauss_valuation();
  return invert_unit(x.scale_by_p_power(-g), target).scale_by_p_power(-g);
}

LaurentSeries exp_series(const LaurentSeries& z) {
  const int p = z.prime();
  const int precision = z.precision();
  LaurentSeries sum = LaurentSeries::integer(z.shape(), precision, 1);
  if (z.is_zero()) return sum;
  const int vz = z.gauss_valuation();
  if (vz < 1) throw Error(ErrorKind::PrecisionExhausted, "exponential series does not converge");
  const int carry = precision + PadicScalar::max_relative_precision(p);
  LaurentSeries term = sum;
  // v(z^k / k!) >= k*vz - (k-1)/(p-1)
  for (std::int64_t k = 1; static_cast<std::int64_t>(k) * vz * (p - 1) - (k - 1) < std::int64_t{precision} * (p - 1); ++k) {
    term = (term * z).scale(PadicScalar::from_rational(p, 1, k, carry));
    sum += term.with_precision(precision);
  }
  return sum;
}

}  // namespace slopegap
