#include "slopegap/generate.hpp"

#include <cmath>
#include <random>

#include "slopegap/error.hpp"
#include "slopegap/newton.hpp"
#include "slopegap/polyannulus.hpp"

namespace slopegap {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t ipow(int p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

PadicScalar random_unit(Rng& rng, int p, int precision) {
  return PadicScalar::from_integer(p, uniform(rng, 1, p - 1) + p * uniform(rng, 0, p * p - 1), precision);
}

Exponent random_exponent(Rng& rng, const RingShape& shape, std::int64_t lo, std::int64_t hi) {
  Exponent e{};
  for (int i = 0; i < shape.variables(); ++i)
    e[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(uniform(rng, i < shape.n ? lo : 0, hi));
  return e;
}

LaurentSeries random_polynomial(Rng& rng, const RingShape& shape, int precision, int terms, std::int64_t lo,
                                std::int64_t hi) {
  const int p = shape.p;
  LaurentSeries::Terms t;
  for (int k = 0; k < terms; ++k) {
    const Exponent e = random_exponent(rng, shape, lo, hi);
    t[e] = PadicScalar::from_integer(p, uniform(rng, 1, p * p - 1), precision);
  }
  return LaurentSeries::from_terms(shape, precision, t);
}

Exponent torus_monomial(const RingShape& shape, const std::vector<std::int64_t>& n) {
  Exponent e{};
  for (int i = 0; i < shape.n; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(n[static_cast<std::size_t>(i)]);
  return e;
}

}  // namespace

SigmaNablaModule generate_split_instance(const SplitInstanceSpec& spec, std::uint64_t seed) {
  const RingShape& shape = spec.shape;
  const int p = shape.p;
  const int N = spec.precision;
  const int d = spec.rank;
  const Rational fs = spec.gap * spec.f;
  if (fs.denominator() != 1 || fs.numerator() <= 0)
    throw Error(ErrorKind::GenerationFailed, "f * gap must be a positive integer, got " + to_string(fs));
  if (d < 2) throw Error(ErrorKind::GenerationFailed, "rank must be at least 2");
  const auto w = static_cast<int>(fs.numerator());
  const PadicScalar omega = PadicScalar::power_of_p(p, w, N);

  std::vector<Rational> expected(static_cast<std::size_t>(d), spec.gap);
  expected[0] = Rational(0);

  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    Rng rng(seed + attempt * 0x9e3779b97f4a7c15ULL);
    auto scalar = [&](std::int64_t hi) {
      return LaurentSeries::integer(shape, N, uniform(rng, 0, hi));
    };
    SeriesMatrix a0 = SeriesMatrix::zero(shape, N, d, d);
    a0(0, 0) = LaurentSeries::constant(shape, N, random_unit(rng, p, N));
    for (int j = 1; j < d; ++j) {
      a0(0, j) = scalar(p * p - 1).scale(omega);
      a0(j, 0) = scalar(p * p - 1).scale(omega);
    }
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) {
        LaurentSeries e = i == j ? LaurentSeries::constant(shape, N, random_unit(rng, p, N)) : scalar(p - 1).scale_by_p_power(1);
        a0(i, j) = e.scale(omega);
      }

    SeriesMatrix b = SeriesMatrix::identity(shape, N, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int terms = static_cast<int>(uniform(rng, 1, 2));
        const std::int64_t radius = spec.constant ? 0 : spec.spread;
        const bool off_block = (i == 0) != (j == 0);
        b(i, j) += random_polynomial(rng, shape, N, terms, -radius, radius).scale_by_p_power(off_block ? w : 1);
      }
    const SeriesMatrix b_inv = inverse(b);

    SigmaNablaModule m;
    m.shape = shape;
    m.precision = N;
    m.f = spec.f;
    m.A = b * a0 * frobenius_power(spec.f, b_inv);
    for (int i = 0; i < shape.variables(); ++i) m.G.push_back(-(theta(i, b) * b_inv));
    m.precision = m.effective_precision();

    if (!check_integrability(m).ok() || !check_compatibility(m).ok()) continue;
    bool shaped = true;
    for (const auto& x : default_points(shape, seed, 16)) {
      if (newton_polygon_at_point(m, x).slopes != expected) {
        shaped = false;
        break;
      }
    }
    if (shaped) return m;
  }
  throw Error(ErrorKind::GenerationFailed, "no instance with the prescribed slopes after 8 attempts");
}

SigmaNablaModule jumping_instance(const RingShape& shape, int precision, int t0, std::uint64_t seed) {
  const int p = shape.p;
  if (shape.n < 1) throw Error(ErrorKind::GenerationFailed, "a jumping instance needs a torus variable");
  if (t0 % p == 0) throw Error(ErrorKind::GenerationFailed, "t0 must be a unit modulo p");
  Rng rng(seed);
  const PadicScalar one = PadicScalar::from_integer(p, 1, precision);
  const PadicScalar zeta = teichmuller(p, t0, precision);
  const PadicScalar alpha = PadicScalar::from_integer(p, uniform(rng, 1, p - 1), precision);
  const PadicScalar beta = PadicScalar::from_integer(p, uniform(rng, 1, p - 1), precision);

  SigmaNablaModule m = trivial_module(shape, precision, 1, 2);
  m.A(0, 0) = LaurentSeries::monomial(shape, precision, unit_exponent(0), one) -
              LaurentSeries::constant(shape, precision, zeta) +
              LaurentSeries::constant(shape, precision, alpha).scale_by_p_power(2);
  m.A(0, 1) = -LaurentSeries::constant(shape, precision, beta).scale_by_p_power(1);
  m.A(1, 0) = LaurentSeries::integer(shape, precision, 1);
  m.A(1, 1) = LaurentSeries(shape, precision);
  return m;
}

RankOneConnection generate_log_decay_connection(const RingShape& shape, int precision, double r,
                                                std::uint64_t seed, int max_degree) {
  const int p = shape.p;
  Rng rng(seed);
  LaurentSeries u(shape, precision);
  for (int j = 1; j < precision; ++j) {
    const auto reach = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(p), r * j) + 1e-9));
    const std::int64_t lo = -std::min<std::int64_t>(max_degree, std::max<std::int64_t>(0, reach - 1));
    LaurentSeries::Terms t;
    for (int k = 0; k < 2; ++k)
      t[random_exponent(rng, shape, lo, 3)] = PadicScalar::make(p, j, uniform(rng, 1, p - 1), precision - j);
    u += LaurentSeries::from_terms(shape, precision, t);
  }
  RankOneConnection c;
  c.shape = shape;
  for (int i = 0; i < shape.variables(); ++i) {
    LaurentSeries g = theta(i, u);
    if (i < shape.n) g += LaurentSeries::integer(shape, precision, uniform(rng, 0, p - 1));
    c.g.push_back(g);
  }
  return c;
}

SigmaNablaModule generate_regular_rank_one(const RingShape& shape, int precision, int f, std::uint64_t seed,
                                           bool corrupt) {
  const int p = shape.p;
  Rng rng(seed);
  const LaurentSeries b = LaurentSeries::integer(shape, precision, 1) +
                          random_polynomial(rng, shape, precision, 3, 0, 2).scale_by_p_power(1);
  const LaurentSeries b_inv = invert_unit(b);
  std::vector<std::int64_t> n;
  for (int i = 0; i < shape.n; ++i) n.push_back(uniform(rng, -3, 3));
  const PadicScalar lambda = random_unit(rng, p, precision);

  SigmaNablaModule m = trivial_module(shape, precision, f, 1);
  const std::int64_t q = ipow(p, f);
  m.A(0, 0) = (b * frobenius_power(f, b_inv)).shift(torus_monomial(shape, n)).scale(lambda);
  for (int i = 0; i < shape.variables(); ++i) {
    LaurentSeries g = -(theta(i, b) * b_inv);
    if (i < shape.n)
      g += LaurentSeries::constant(shape, precision, PadicScalar::from_rational(p, n[static_cast<std::size_t>(i)], q - 1, precision));
    m.G[static_cast<std::size_t>(i)](0, 0) = g;
  }
  if (corrupt) {
    const std::int64_t den = p == 3 ? 2 : 3;
    m.G[0](0, 0) += LaurentSeries::constant(shape, precision, PadicScalar::from_rational(p, 1, den, precision));
  }
  m.precision = m.effective_precision();
  return m;
}

}  // namespace slopegap
