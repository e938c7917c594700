#include "slopegap/module.hpp"

#include <algorithm>
#include <limits>

#include "slopegap/error.hpp"
#include "slopegap/polyannulus.hpp"

namespace slopegap {

std::int64_t SigmaNablaModule::q() const {
  std::int64_t q = 1;
  for (int k = 0; k < f; ++k) q *= shape.p;
  return q;
}

int SigmaNablaModule::effective_precision() const {
  int n = std::min(precision, A.precision());
  for (const auto& g : G) n = std::min(n, g.precision());
  return n;
}

SigmaNablaModule trivial_module(const RingShape& shape, int precision, int f, int d) {
  SigmaNablaModule m;
  m.shape = shape;
  m.precision = precision;
  m.f = f;
  m.A = SeriesMatrix::identity(shape, precision, d);
  m.G.assign(static_cast<std::size_t>(shape.variables()), SeriesMatrix::zero(shape, precision, d, d));
  return m;
}

CheckReport summarize(const std::vector<SeriesMatrix>& residuals) {
  CheckReport r{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  for (const auto& m : residuals) {
    r.valuation = std::min(r.valuation, m.valuation_bound());
    r.precision = std::min(r.precision, m.precision());
  }
  return r;
}

std::vector<SeriesMatrix> curvature(const SigmaNablaModule& m) {
  std::vector<SeriesMatrix> out;
  const int nv = m.shape.variables();
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      const auto& gi = m.G[static_cast<std::size_t>(i)];
      const auto& gj = m.G[static_cast<std::size_t>(j)];
      out.push_back(theta(i, gj) - theta(j, gi) + commutator(gi, gj));
    }
  return out;
}

std::vector<SeriesMatrix> compatibility_defect(const SigmaNablaModule& m) {
  std::vector<SeriesMatrix> out;
  const auto q = PadicScalar::from_integer(m.shape.p, m.q(), m.precision + 64);
  for (int i = 0; i < m.shape.variables(); ++i) {
    const auto& g = m.G[static_cast<std::size_t>(i)];
    out.push_back(theta(i, m.A) + g * m.A - (m.A * frobenius_power(m.f, g)).scale(q));
  }
  return out;
}

CheckReport check_integrability(const SigmaNablaModule& m) {
  auto residuals = curvature(m);
  if (residuals.empty()) return {m.effective_precision(), m.effective_precision()};
  auto r = summarize(residuals);
  r.precision = std::min(r.precision, m.effective_precision());
  return r;
}

CheckReport check_compatibility(const SigmaNablaModule& m) {
  auto r = summarize(compatibility_defect(m));
  r.precision = std::min(r.precision, m.effective_precision());
  return r;
}

SigmaNablaModule change_basis(const SigmaNablaModule& m, const SeriesMatrix& b) {
  return change_basis(m, b, inverse(b));
}

SigmaNablaModule change_basis(const SigmaNablaModule& m, const SeriesMatrix& b, const SeriesMatrix& b_inv) {
  SigmaNablaModule out = m;
  out.A = b * m.A * frobenius_power(m.f, b_inv);
  for (int i = 0; i < m.shape.variables(); ++i) {
    const auto& g = m.G[static_cast<std::size_t>(i)];
    out.G[static_cast<std::size_t>(i)] = b * g * b_inv - theta(i, b) * b_inv;
  }
  out.precision = out.effective_precision();
  return out;
}

SigmaNablaModule rank_one_tensor_power(const SigmaNablaModule& m, int k) {
  if (m.rank() != 1) throw Error(ErrorKind::NotInShape, "tensor power of a module of rank " + std::to_string(m.rank()));
  SigmaNablaModule out = m;
  LaurentSeries base = m.A(0, 0);
  LaurentSeries a = LaurentSeries::integer(m.shape, base.precision(), 1);
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) a *= base;
    if (e > 1) base *= base;
  }
  out.A(0, 0) = a;
  const auto kk = PadicScalar::from_integer(m.shape.p, k, m.precision + 64);
  for (auto& g : out.G) g = g.scale(kk);
  out.precision = out.effective_precision();
  return out;
}

SigmaNablaModule determinant_module(const SigmaNablaModule& m) {
  SigmaNablaModule out;
  out.shape = m.shape;
  out.f = m.f;
  out.A = SeriesMatrix(1, 1, determinant(m.A));
  for (const auto& g : m.G) out.G.push_back(SeriesMatrix(1, 1, trace(g)));
  out.precision = m.precision;
  out.precision = out.effective_precision();
  return out;
}

SigmaNablaModule twist(const SigmaNablaModule& m, const Rational& t) {
  const Rational ft = t * m.f;
  if (ft.denominator() != 1)
    throw Error(ErrorKind::NonIntegralTwist, "f*t = " + to_string(ft) + " is not an integer");
  SigmaNablaModule out = m;
  out.A = m.A.scale_by_p_power(-static_cast<int>(ft.numerator()));
  out.precision = out.effective_precision();
  return out;
}

SigmaNablaModule iterate_frobenius(const SigmaNablaModule& m, int f_new) {
  if (f_new < m.f || f_new % m.f != 0)
    throw Error(ErrorKind::IncompatiblePower,
                std::to_string(f_new) + " is not a multiple of " + std::to_string(m.f));
  SigmaNablaModule out = m;
  SeriesMatrix a = m.A;
  for (int k = m.f; k < f_new; k += m.f) a = a * frobenius_power(k, m.A);
  out.A = a;
  out.f = f_new;
  out.precision = out.effective_precision();
  return out;
}

SigmaNablaModule exterior_power(const SigmaNablaModule& m, int k) {
  SigmaNablaModule out;
  out.shape = m.shape;
  out.f = m.f;
  out.A = exterior_power(m.A, k);
  for (const auto& g : m.G) out.G.push_back(exterior_derivation(g, k));
  out.precision = m.precision;
  out.precision = out.effective_precision();
  return out;
}

}  // namespace slopegap
