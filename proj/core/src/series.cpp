#include "slopegap/series.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "slopegap/error.hpp"

namespace slopegap {

Window Window::box(const RingShape& shape, std::int64_t radius) {
  Window w;
  for (int i = 0; i < shape.variables(); ++i) {
    if (i < shape.n) w.lo[i] = -radius;
    w.hi[i] = radius;
  }
  return w;
}

bool Window::complete() const noexcept {
  for (int i = 0; i < kMaxVariables; ++i)
    if (lo[i] != -kUnbounded || hi[i] != kUnbounded) return false;
  return true;
}

bool Window::contains(const Exponent& e, int variables) const noexcept {
  for (int i = 0; i < variables; ++i)
    if (e[i] < lo[i] || e[i] > hi[i]) return false;
  return true;
}

bool Window::empty(int variables) const noexcept {
  for (int i = 0; i < variables; ++i)
    if (lo[i] > hi[i]) return true;
  return false;
}

Window Window::intersect(const Window& other) const noexcept {
  Window w;
  for (int i = 0; i < kMaxVariables; ++i) {
    w.lo[i] = std::max(lo[i], other.lo[i]);
    w.hi[i] = std::min(hi[i], other.hi[i]);
  }
  return w;
}

Exponent unit_exponent(int i) {
  Exponent e{};
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

LaurentSeries::LaurentSeries(const RingShape& shape, int precision)
    : shape_(shape), precision_(precision) {
  assert(shape.variables() <= kMaxVariables);
}

LaurentSeries LaurentSeries::from_terms(const RingShape& shape, int precision, const Terms& terms,
                                        const Window& window) {
  LaurentSeries s(shape, precision);
  s.window_ = window;
  s.terms_ = terms;
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::constant(const RingShape& shape, int precision, const PadicScalar& c) {
  return monomial(shape, precision, Exponent{}, c);
}

LaurentSeries LaurentSeries::integer(const RingShape& shape, int precision, std::int64_t value) {
  return constant(shape, precision, PadicScalar::from_integer(shape.p, value, precision));
}

LaurentSeries LaurentSeries::monomial(const RingShape& shape, int precision, const Exponent& e,
                                      const PadicScalar& c) {
  Terms t;
  t.emplace(e, c);
  return from_terms(shape, precision, t);
}

void LaurentSeries::normalize() {
  const int nv = shape_.variables();
  for (int i = nv; i < kMaxVariables; ++i) {
    window_.lo[i] = -kUnbounded;
    window_.hi[i] = kUnbounded;
  }
  for (int i = shape_.n; i < nv; ++i) window_.lo[i] = -kUnbounded;
  if (window_.empty(nv)) throw Error(ErrorKind::WindowExhausted, "guaranteed window became empty");
  for (auto it = terms_.begin(); it != terms_.end();) {
    bool keep = window_.contains(it->first, nv);
    for (int i = 0; keep && i < nv; ++i) {
      const std::int64_t d = it->first[i];
      if (d > shape_.box) {
        window_.hi[i] = std::min(window_.hi[i], shape_.box);
        keep = false;
      } else if (d < -shape_.box) {
        window_.lo[i] = std::max(window_.lo[i], -shape_.box);
        keep = false;
      }
    }
    if (keep) {
      it->second = it->second.with_absolute_precision(precision_);
      keep = !it->second.is_zero();
    }
    it = keep ? std::next(it) : terms_.erase(it);
  }
}

PadicScalar LaurentSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? PadicScalar::zero(shape_.p, precision_) : it->second;
}

int LaurentSeries::gauss_valuation() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroAtPrecision, "Gauss valuation of a series that is zero at precision");
  return valuation_bound();
}

int LaurentSeries::valuation_bound() const noexcept {
  int v = precision_;
  for (const auto& [e, c] : terms_) v = std::min(v, c.valuation());
  return v;
}

std::optional<std::pair<std::int32_t, std::int32_t>> LaurentSeries::degree_range(int i) const {
  if (terms_.empty()) return std::nullopt;
  std::int32_t lo = terms_.begin()->first[i], hi = lo;
  for (const auto& [e, c] : terms_) {
    lo = std::min(lo, e[i]);
    hi = std::max(hi, e[i]);
  }
  return std::make_pair(lo, hi);
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) {
  assert(x.shape_ == y.shape_);
  LaurentSeries out(x.shape_, std::min(x.precision_, y.precision_));
  out.window_ = x.window_.intersect(y.window_);
  out.terms_ = x.terms_;
  for (const auto& [e, c] : y.terms_) {
    auto [it, inserted] = out.terms_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  out.normalize();
  return out;
}

LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y) { return x + (-y); }

namespace {

std::int64_t shifted(std::int64_t bound, std::int64_t by) {
  if (bound == kUnbounded || bound == -kUnbounded) return bound;
  return bound + by;
}

// Window of x*y when x is complete: y's window shrinks by x's support.
Window product_window(const LaurentSeries& complete, const Window& other, int variables) {
  Window w = other;
  for (int i = 0; i < variables; ++i) {
    auto range = complete.degree_range(i);
    if (!range) continue;
    w.lo[i] = shifted(other.lo[i], range->second);
    w.hi[i] = shifted(other.hi[i], range->first);
  }
  return w;
}

struct ResidueTerm {
  Exponent e;
  std::uint64_t r;
};

}  // namespace

LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) {
  assert(x.shape_ == y.shape_);
  const RingShape& shape = x.shape_;
  const int nv = shape.variables();
  const int gx = x.valuation_bound();
  const int gy = y.valuation_bound();
  int out_precision = std::min(x.precision_ + gy, y.precision_ + gx);

  Window window;
  if (x.is_complete() && y.is_complete()) {
    window = Window::full();
  } else if (x.is_complete()) {
    window = product_window(x, y.window_, nv);
  } else if (y.is_complete()) {
    window = product_window(y, x.window_, nv);
  } else {
    throw Error(ErrorKind::WindowExhausted, "product of two truncated series");
  }

  LaurentSeries out(shape, out_precision);
  out.window_ = window;
  if (x.is_zero() || y.is_zero()) {
    out.normalize();
    return out;
  }

  const int p = shape.p;
  const int g0 = gx + gy;
  int r = out_precision - g0;
  const int rmax = PadicScalar::max_relative_precision(p);
  if (r > rmax) {
    r = rmax;
    out.precision_ = out_precision = g0 + rmax;
  }
  if (r <= 0) {
    out.normalize();
    return out;
  }
  const std::uint64_t mod = detail::ipow(p, r);

  auto reduce = [&](const PadicScalar& c, int base) -> std::pair<int, std::uint64_t> {
    const int shift = c.valuation() - base;
    if (shift >= r) return {shift, 0};
    return {shift, detail::mulmod(c.unit() % mod, detail::ipow(p, shift), mod)};
  };

  std::map<int, std::vector<ResidueTerm>> groups;
  for (const auto& [e, c] : y.terms_) {
    auto [shift, residue] = reduce(c, gy);
    if (shift < r) groups[shift].push_back({e, residue});
  }

  std::unordered_map<Exponent, std::uint64_t, ExponentHash> acc;
  acc.reserve(x.terms_.size() * 4);
  for (const auto& [ea, a] : x.terms_) {
    auto [da, ra] = reduce(a, gx);
    if (da >= r) continue;
    for (const auto& [db, list] : groups) {
      if (da + db >= r) break;
      for (const auto& [eb, rb] : list) {
        Exponent e;
        for (int i = 0; i < kMaxVariables; ++i) e[i] = ea[i] + eb[i];
        auto& slot = acc[e];
        slot = (slot + detail::mulmod(ra, rb, mod)) % mod;
      }
    }
  }

  for (const auto& [e, value] : acc) {
    if (value == 0 || !window.contains(e, nv)) continue;
    out.terms_.emplace(e, PadicScalar::make(p, g0, static_cast<std::int64_t>(value), r));
  }
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::scale(const PadicScalar& c) const {
  const int g = valuation_bound();
  LaurentSeries out(shape_, std::min(precision_ + c.valuation(), c.absolute_precision() + g));
  out.window_ = window_;
  if (!c.is_zero()) {
    for (const auto& [e, a] : terms_) out.terms_.emplace(e, a * c);
  }
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::scale_by_p_power(int k) const {
  LaurentSeries out = *this;
  out.precision_ += k;
  for (auto& [e, a] : out.terms_)
    a = PadicScalar::make(shape_.p, a.valuation() + k, static_cast<std::int64_t>(a.unit()),
                          a.relative_precision());
  return out;
}

LaurentSeries LaurentSeries::shift(const Exponent& by) const {
  LaurentSeries out(shape_, precision_);
  const int nv = shape_.variables();
  for (int i = 0; i < nv; ++i) {
    out.window_.lo[i] = shifted(window_.lo[i], by[i]);
    out.window_.hi[i] = shifted(window_.hi[i], by[i]);
  }
  for (const auto& [e, a] : terms_) {
    Exponent moved = e;
    for (int i = 0; i < nv; ++i) moved[i] += by[i];
    out.terms_.emplace(moved, a);
  }
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::with_precision(int precision) const {
  if (precision >= precision_) return *this;
  LaurentSeries out = *this;
  out.precision_ = precision;
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::restrict_to(const Window& window) const {
  LaurentSeries out = *this;
  out.window_ = window_.intersect(window);
  out.normalize();
  return out;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    for (int i = 0; i < shape_.variables(); ++i)
      if (e[i] != 0) out << "*T" << i + 1 << "^" << e[i];
  }
  if (first) out << "0";
  out << " + O(" << shape_.p << "^" << precision_ << ")";
  return out.str();
}

bool congruent(const LaurentSeries& x, const LaurentSeries& y, int k) {
  return (x - y).valuation_bound() >= k;
}

}  // namespace slopegap
