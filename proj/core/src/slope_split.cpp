#include "slopegap/slope_split.hpp"

#include <algorithm>

#include "slopegap/error.hpp"
#include "slopegap/polyannulus.hpp"

namespace slopegap {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a <= 0 ? 0 : (a + b - 1) / b; }

LaurentSeries torus_power(const RingShape& shape, int precision, int i, std::int64_t k) {
  Exponent e{};
  e[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(k);
  return LaurentSeries::monomial(shape, precision, e, PadicScalar::from_integer(shape.p, 1, precision));
}

std::optional<std::int64_t> min_w(int i, int level, const std::vector<LaurentSeries>& xs) {
  std::optional<std::int64_t> out;
  for (const auto& x : xs) {
    const auto w = partial_valuation(i, level, x);
    if (w && (!out || *w < *out)) out = w;
  }
  return out;
}

NamedCheck vanishes_to(const std::string& name, const SeriesMatrix& residual, int order) {
  const int v = std::min(residual.valuation_bound(), residual.precision());
  return {name, v >= order, v, order};
}

DecayWitness sharp_witness(const std::vector<LaurentSeries>& xs, const Rational& s, int precision,
                           const std::string& what) {
  const double r = 1.0 / to_double(s);
  const auto c = minimal_constant(xs, DecayKind::Sharp, r, 0, precision - 1);
  if (!c) throw Error(ErrorKind::WitnessFailure, what + " has a pole at level 0");
  return {DecayKind::Sharp, r, static_cast<double>(*c), 0, precision - 1};
}

}  // namespace

int omega_exponent(const SigmaNablaModule& m, const Rational& s) {
  const Rational fs = s * m.f;
  if (fs.denominator() != 1 || fs.numerator() <= 0)
    throw Error(ErrorKind::NotInShape, "f * s = " + to_string(fs) + " is not a positive integer");
  return static_cast<int>(fs.numerator());
}

void check_split_shape(const SigmaNablaModule& m, const Rational& s) {
  const int w = omega_exponent(m, s);
  const int d = m.rank();
  if (d < 2) throw Error(ErrorKind::NotInShape, "splitting needs rank at least 2");
  const int precision = m.effective_precision();
  if (w >= precision)
    throw Error(ErrorKind::PrecisionExhausted, "w = p^" + std::to_string(w) + " is invisible at precision " + std::to_string(precision));
  const LaurentSeries& a11 = m.A(0, 0);
  if (a11.valuation_bound() != 0 || !leading_term(a11)) throw Error(ErrorKind::NotAUnit, "A11 is not a unit");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == 0 && j == 0) continue;
      if (m.A(i, j).valuation_bound() < w)
        throw Error(ErrorKind::NotInShape, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                               ") is not divisible by p^" + std::to_string(w));
    }
}

NormalizedModule normalize_entry_growth(const SigmaNablaModule& m, const Rational& s) {
  check_split_shape(m, s);
  const int w = omega_exponent(m, s);
  const int d = m.rank();
  const std::int64_t q = m.q();
  NormalizedModule out{m, {}, {}};
  for (int i = 0; i < m.shape.n; ++i) {
    SigmaNablaModule& cur = out.module;
    const int precision = cur.effective_precision();
    const auto w11 = partial_valuation(i, 0, invert_unit(cur.A(0, 0)));
    const std::int64_t k1 = w11 ? ceil_div(-*w11, q - 1) : 0;
    if (k1 > 0) {
      SeriesMatrix c = SeriesMatrix::identity(m.shape, precision, d);
      SeriesMatrix c_inv = c;
      c(0, 0) = torus_power(m.shape, precision, i, k1);
      c_inv(0, 0) = torus_power(m.shape, precision, i, -k1);
      cur = change_basis(cur, c, c_inv);
    }
    std::vector<LaurentSeries> top, rest;
    for (int j = 1; j < d; ++j) top.push_back(cur.A(0, j));
    for (int a = 1; a < d; ++a)
      for (int b = 1; b < d; ++b) rest.push_back(cur.A(a, b));
    const auto w12 = min_w(i, w, top);
    const auto w22 = min_w(i, w, rest);
    std::int64_t k2 = 0;
    if (w22) k2 = std::max(k2, ceil_div(-*w22, q - 1));
    if (w12) k2 = std::max(k2, ceil_div(-*w12, q));
    if (k2 > 0) {
      const int pr = cur.effective_precision();
      SeriesMatrix dm = SeriesMatrix::identity(m.shape, pr, d);
      SeriesMatrix d_inv = dm;
      for (int j = 1; j < d; ++j) {
        dm(j, j) = torus_power(m.shape, pr, i, -k2);
        d_inv(j, j) = torus_power(m.shape, pr, i, k2);
      }
      cur = change_basis(cur, dm, d_inv);
    }
    out.k1.push_back(k1);
    out.k2.push_back(k2);
  }
  return out;
}

SplitResult unit_root_split(const SigmaNablaModule& m, const Rational& s, int K) {
  check_split_shape(m, s);
  SplitResult out;
  const int w = omega_exponent(m, s);
  const int precision = m.effective_precision();
  const int d = m.rank();
  if (K <= 0) K = precision / w;
  if (K * w > precision)
    throw Error(ErrorKind::PrecisionExhausted, "w^" + std::to_string(K) + " exceeds precision " + std::to_string(precision));
  out.omega = w;
  out.K = K;

  LaurentSeries a11 = m.A(0, 0);
  SeriesMatrix a12 = m.A.block(0, 1, 1, d - 1);
  SeriesMatrix a21 = m.A.block(1, 0, d - 1, 1);
  SeriesMatrix a22 = m.A.block(1, 1, d - 1, d - 1);
  SeriesMatrix n21 = SeriesMatrix::zero(m.shape, precision, d - 1, 1);
  for (int k = 0; k < K; ++k) {
    const SeriesMatrix x = -a21.scale(invert_unit(a11));
    const SeriesMatrix xs = frobenius_power(m.f, x);
    const SeriesMatrix t = x * a12 + a22;
    const LaurentSeries next11 = a11 - (a12 * xs)(0, 0);
    a21 = x.scale(a11) + a21 - t * xs;
    a11 = next11;
    a22 = t;
    n21 = n21 + x;
    out.iterates.push_back(n21);
  }

  out.N = SeriesMatrix::identity(m.shape, precision, d);
  out.N.set_block(1, 0, n21);
  out.N_inv = SeriesMatrix::identity(m.shape, precision, d);
  out.N_inv.set_block(1, 0, -n21);
  out.A_split = m.A;
  out.A_split(0, 0) = a11;
  out.A_split.set_block(1, 0, a21);
  out.A_split.set_block(1, 1, a22);

  const SeriesMatrix product = out.N * m.A * frobenius_power(m.f, out.N_inv);
  const SeriesMatrix lower = product.block(1, 0, d - 1, 1);
  const int lower_v = std::min(lower.valuation_bound(), lower.precision());
  out.order_achieved = std::min(K, lower_v / w);
  out.checks.push_back(vanishes_to("multiply_back", product - out.A_split, (product - out.A_split).precision()));
  out.checks.push_back(vanishes_to("lower_left", lower, std::min(w * K, precision)));
  for (int k = 1; k <= K; ++k) {
    const SeriesMatrix prev = k == 1 ? SeriesMatrix::zero(m.shape, precision, d - 1, 1) : out.iterates[static_cast<std::size_t>(k - 2)];
    const SeriesMatrix diff = out.iterates[static_cast<std::size_t>(k - 1)] - prev;
    out.checks.push_back(vanishes_to("stability_" + std::to_string(k), diff, std::min(w * k, diff.precision())));
  }

  out.witness = sharp_witness(n21.entries(), s, precision, "N21");
  out.checks.push_back({"n21_witness", !check_decay_witness(n21.entries(), out.witness), 0, precision});
  return out;
}

UnitRootResult extract_unit_root(const SigmaNablaModule& m, const SplitResult& split, const Rational& s) {
  const int w = omega_exponent(m, s);
  const int d = m.rank();
  UnitRootResult out;
  out.transformed = change_basis(m, split.N, split.N_inv);
  const int precision = out.transformed.effective_precision();
  out.K_prime = std::min({split.K, split.order_achieved, precision / w});
  for (int i = 0; i < m.shape.variables(); ++i)
    out.checks.push_back(vanishes_to("connection_lower_left_" + std::to_string(i + 1),
                                     out.transformed.G[static_cast<std::size_t>(i)].block(1, 0, d - 1, 1), w * out.K_prime));

  const int unit_precision = std::min(precision, w * out.K_prime);
  SigmaNablaModule& u = out.unit_root;
  u.shape = m.shape;
  u.f = m.f;
  u.precision = unit_precision;
  u.A = SeriesMatrix(1, 1, out.transformed.A(0, 0).with_precision(unit_precision));
  std::vector<LaurentSeries> rs;
  for (const auto& g : out.transformed.G) {
    u.G.emplace_back(1, 1, g(0, 0).with_precision(unit_precision));
    rs.push_back(u.G.back()(0, 0));
  }

  out.checks.push_back(vanishes_to("unit_congruent", SeriesMatrix(1, 1, u.A(0, 0) - m.A(0, 0)), std::min(w, unit_precision)));
  const CheckReport compat = check_compatibility(u);
  out.checks.push_back(named("unit_root_compatibility", compat));
  if (!compat.ok())
    throw Error(ErrorKind::CompatibilityDefect, "unit-root compatibility residual has valuation " + std::to_string(compat.valuation));

  out.witness = sharp_witness(rs, s, unit_precision, "R");
  out.checks.push_back({"r_witness", !check_decay_witness(rs, out.witness), 0, unit_precision});
  return out;
}

}  // namespace slopegap
