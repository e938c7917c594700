#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slopegap/module.hpp"
#include "slopegap/rational.hpp"

namespace slopegap {

// A degree-one point: torus coordinates in 1..p-1, affine coordinates in 0..p-1.
struct PointSpec {
  std::vector<int> coords;

  bool operator==(const PointSpec&) const = default;
  auto operator<=>(const PointSpec&) const = default;
  std::string to_string() const;
};

struct NewtonPolygon {
  std::vector<std::pair<int, Rational>> vertices;
  std::vector<Rational> slopes;

  bool operator==(const NewtonPolygon&) const = default;
  std::string to_string() const;
};

// Value at the Teichmueller lift of x. Throws Error(WindowExhausted) on a truncated series.
PadicScalar evaluate(const LaurentSeries& s, const PointSpec& x);

// Coefficients c_0..c_d of det(lambda - M), lowest degree first.
std::vector<PadicScalar> characteristic_polynomial(const std::vector<std::vector<PadicScalar>>& m);

// Lower hull of (i, v(c_{d-i})) for a monic polynomial, slopes divided by f.
NewtonPolygon newton_polygon(const std::vector<PadicScalar>& coeffs, int f);

NewtonPolygon newton_polygon_at_point(const SigmaNablaModule& m, const PointSpec& x);

struct ConstancyReport {
  bool constant = true;
  NewtonPolygon common;
  std::vector<std::pair<PointSpec, NewtonPolygon>> per_point;
  std::optional<PointSpec> witness;
  // Number of slopes equal to the smallest one, when a larger slope exists.
  std::optional<int> first_break;
  Rational gap{0};
};

ConstancyReport newton_constancy_scan(const SigmaNablaModule& m, const std::vector<PointSpec>& points);

// Every degree-one point when there are at most `limit`, else a seeded sample of `limit`.
std::vector<PointSpec> default_points(const RingShape& shape, std::uint64_t seed, std::size_t limit = 256);

}  // namespace slopegap
