#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "slopegap/series.hpp"

namespace slopegap {

// Terms with T_i-degree <= -2.
LaurentSeries truncate_below(int i, const LaurentSeries& x);
// Terms with T_i-degree >= 0.
LaurentSeries truncate_at_least(int i, const LaurentSeries& x);
// Coefficient of T_i^{-1}, as a series free of T_i.
LaurentSeries residue(int i, const LaurentSeries& x);
// The T_i^{-1} slice left in place, so x = below + residue_term + at_least.
LaurentSeries residue_term(int i, const LaurentSeries& x);

// Smallest T_i-degree whose slice has Gauss valuation <= j; nullopt is +infinity.
std::optional<std::int64_t> partial_valuation(int i, int j, const LaurentSeries& x);

// Term-wise antiderivative in T_i of a series with T_i-degrees <= -2.
LaurentSeries primitive(int i, const LaurentSeries& x);
LaurentSeries derivative(int i, const LaurentSeries& x);
// T_i * d/dT_i.
LaurentSeries theta(int i, const LaurentSeries& x);
// T_i -> T_i^{p^f} for every variable.
LaurentSeries frobenius_power(int f, const LaurentSeries& x);

// The single term of minimal valuation, when there is exactly one.
std::optional<std::pair<Exponent, PadicScalar>> leading_term(const LaurentSeries& x);

// Inverse of an element of O^x (Gauss valuation 0, reduction a monomial in the torus variables).
LaurentSeries invert_unit(const LaurentSeries& x, const Window& target = Window::full());
// Inverse of p^g * (unit).
LaurentSeries invert(const LaurentSeries& x, const Window& target = Window::full());

// sum z^k / k!; requires z to be divisible by p.
LaurentSeries exp_series(const LaurentSeries& z);

}  // namespace slopegap
