#include "slopegap/newton.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "slopegap/error.hpp"

namespace slopegap {

std::string PointSpec::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? "," : "") << coords[i];
  out << ")";
  return out.str();
}

std::string NewtonPolygon::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < slopes.size(); ++i) out << (i ? ", " : "") << slopegap::to_string(slopes[i]);
  out << "]";
  return out.str();
}

PadicScalar evaluate(const LaurentSeries& s, const PointSpec& x) {
  if (!s.is_complete()) throw Error(ErrorKind::WindowExhausted, "cannot evaluate a truncated series at a point");
  const RingShape& shape = s.shape();
  const int p = shape.p;
  const int rmax = PadicScalar::max_relative_precision(p);
  std::vector<std::vector<PadicScalar>> powers(static_cast<std::size_t>(shape.variables()));
  for (int i = 0; i < shape.variables(); ++i) {
    const int t = x.coords[static_cast<std::size_t>(i)];
    if (t % p == 0) continue;
    const PadicScalar zeta = teichmuller(p, t, rmax);
    auto& row = powers[static_cast<std::size_t>(i)];
    row.push_back(PadicScalar::from_integer(p, 1, rmax));
    for (int k = 1; k < p - 1; ++k) row.push_back(row.back() * zeta);
  }
  PadicScalar sum = PadicScalar::zero(p, s.precision());
  for (const auto& [e, c] : s.terms()) {
    PadicScalar term = c;
    bool vanishes = false;
    for (int i = 0; i < shape.variables() && !vanishes; ++i) {
      const auto& row = powers[static_cast<std::size_t>(i)];
      if (row.empty()) {
        vanishes = e[i] != 0;
        continue;
      }
      const int k = ((e[i] % (p - 1)) + (p - 1)) % (p - 1);
      term *= row[static_cast<std::size_t>(k)];
    }
    if (!vanishes) sum += term;
  }
  return sum;
}

namespace {

// Polynomial in lambda with p-adic coefficients; an empty vector is exact zero.
struct Poly {
  std::vector<PadicScalar> c;

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly out;
    for (std::size_t i = 0; i < std::max(a.c.size(), b.c.size()); ++i) {
      if (i >= a.c.size()) out.c.push_back(b.c[i]);
      else if (i >= b.c.size()) out.c.push_back(a.c[i]);
      else out.c.push_back(a.c[i] + b.c[i]);
    }
    return out;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly nb = b;
    for (auto& x : nb.c) x = -x;
    return a + nb;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly out;
    out.c.resize(a.c.size() + b.c.size() - 1);
    std::vector<bool> set(out.c.size(), false);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) {
        PadicScalar t = a.c[i] * b.c[j];
        out.c[i + j] = set[i + j] ? out.c[i + j] + t : t;
        set[i + j] = true;
      }
    return out;
  }
};

}  // namespace

std::vector<PadicScalar> characteristic_polynomial(const std::vector<std::vector<PadicScalar>>& m) {
  const std::size_t d = m.size();
  if (d == 0) return {};
  const int p = m[0][0].prime();
  const PadicScalar one = PadicScalar::from_integer(p, 1, PadicScalar::max_relative_precision(p));
  std::vector<std::vector<Poly>> lm(d, std::vector<Poly>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      lm[i][j].c.push_back(-m[i][j]);
      if (i == j) lm[i][j].c.push_back(one);
    }
  Poly det = laplace_determinant(lm, Poly{}, Poly{{one}});
  det.c.resize(d + 1, PadicScalar::zero(p, 0));
  return det.c;
}

NewtonPolygon newton_polygon(const std::vector<PadicScalar>& coeffs, int f) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  const auto& c0 = coeffs.front();
  if (c0.is_zero())
    throw Error(ErrorKind::ZeroDeterminantAtPrecision,
                "determinant vanishes modulo p^" + std::to_string(c0.absolute_precision()));
  struct Pt {
    std::int64_t x, y;
  };
  std::vector<Pt> known;
  for (int i = 0; i <= d; ++i) {
    const auto& c = coeffs[static_cast<std::size_t>(d - i)];
    if (!c.is_zero()) known.push_back({i, c.valuation()});
  }
  std::vector<Pt> hull;
  for (const auto& pt : known) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      const std::int64_t cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  // A coefficient that is zero at precision must sit on or above the hull.
  for (int i = 0; i <= d; ++i) {
    const auto& c = coeffs[static_cast<std::size_t>(d - i)];
    if (!c.is_zero()) continue;
    for (std::size_t k = 1; k < hull.size(); ++k) {
      const Pt& a = hull[k - 1];
      const Pt& b = hull[k];
      if (i < a.x || i > b.x) continue;
      // hull(i) > A  <=>  a.y*(b.x-a.x) + (b.y-a.y)*(i-a.x) > A*(b.x-a.x)
      if (a.y * (b.x - a.x) + (b.y - a.y) * (i - a.x) > static_cast<std::int64_t>(c.absolute_precision()) * (b.x - a.x))
        throw Error(ErrorKind::PrecisionExhausted,
                    "coefficient of lambda^" + std::to_string(d - i) + " is not resolved at precision " +
                        std::to_string(c.absolute_precision()));
      break;
    }
  }
  NewtonPolygon np;
  for (const auto& pt : hull) np.vertices.emplace_back(static_cast<int>(pt.x), Rational(pt.y, f));
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const Rational slope(hull[k].y - hull[k - 1].y, (hull[k].x - hull[k - 1].x) * f);
    for (std::int64_t t = hull[k - 1].x; t < hull[k].x; ++t) np.slopes.push_back(slope);
  }
  return np;
}

NewtonPolygon newton_polygon_at_point(const SigmaNablaModule& m, const PointSpec& x) {
  const int d = m.rank();
  std::vector<std::vector<PadicScalar>> values(static_cast<std::size_t>(d), std::vector<PadicScalar>(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = evaluate(m.A(i, j), x);
  return newton_polygon(characteristic_polynomial(values), m.f);
}

ConstancyReport newton_constancy_scan(const SigmaNablaModule& m, const std::vector<PointSpec>& points) {
  if (points.empty()) throw Error(ErrorKind::Parse, "empty point set");
  ConstancyReport report;
  for (const auto& x : points) {
    NewtonPolygon np = newton_polygon_at_point(m, x);
    if (report.per_point.empty()) {
      report.common = np;
    } else if (report.constant && !(np == report.common)) {
      report.constant = false;
      report.witness = x;
    }
    report.per_point.emplace_back(x, std::move(np));
  }
  if (report.constant) {
    const auto& s = report.common.slopes;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] != s[0]) {
        report.first_break = static_cast<int>(i);
        report.gap = s[i] - s[i - 1];
        break;
      }
  }
  return report;
}

std::vector<PointSpec> default_points(const RingShape& shape, std::uint64_t seed, std::size_t limit) {
  const int nv = shape.variables();
  std::uint64_t count = 1;
  std::vector<int> radix;
  for (int i = 0; i < nv; ++i) {
    radix.push_back(i < shape.n ? shape.p - 1 : shape.p);
    count *= static_cast<std::uint64_t>(radix.back());
  }
  auto decode = [&](std::uint64_t index) {
    PointSpec pt;
    pt.coords.assign(static_cast<std::size_t>(nv), 0);
    for (int i = nv - 1; i >= 0; --i) {
      const auto r = static_cast<std::uint64_t>(radix[static_cast<std::size_t>(i)]);
      const int digit = static_cast<int>(index % r);
      index /= r;
      pt.coords[static_cast<std::size_t>(i)] = i < shape.n ? digit + 1 : digit;
    }
    return pt;
  };
  std::vector<PointSpec> out;
  if (count <= limit) {
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(decode(k));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, count - 1);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < limit) chosen.insert(pick(rng));
  for (auto k : chosen) out.push_back(decode(k));
  return out;
}

}  // namespace slopegap
