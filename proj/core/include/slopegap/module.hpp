#pragma once

#include <cstdint>
#include <vector>

#include "slopegap/matrix.hpp"
#include "slopegap/rational.hpp"

namespace slopegap {

/**
 * Rank-d (sigma^f, nabla)-module in matrix form.
 *
 * In coordinates (columns y in the chosen basis) Frobenius acts by
 * y -> A * sigma^f(y) and the connection by
 * nabla_{T_i d/dT_i} y = theta_i(y) + G[i] * y.
 */
struct SigmaNablaModule {
  RingShape shape;
  int precision = 0;
  int f = 1;
  SeriesMatrix A;
  std::vector<SeriesMatrix> G;

  int rank() const { return A.rows(); }
  std::int64_t q() const;
  // Smallest precision among all stored entries, capped by `precision`.
  int effective_precision() const;
};

SigmaNablaModule trivial_module(const RingShape& shape, int precision, int f, int d);

// Residual summary: the residual is 0 mod p^valuation, and it was computed
// to absolute precision `precision`. ok() means it vanishes at that precision.
struct CheckReport {
  int valuation = 0;
  int precision = 0;

  bool ok() const noexcept { return valuation >= precision; }
  bool holds_mod(int k) const noexcept { return valuation >= k; }
};

CheckReport summarize(const std::vector<SeriesMatrix>& residuals);

// theta_i(G_j) - theta_j(G_i) + [G_i, G_j] for all i < j.
std::vector<SeriesMatrix> curvature(const SigmaNablaModule& m);
// theta_i(A) + G_i A - q A sigma^f(G_i) for all i.
std::vector<SeriesMatrix> compatibility_defect(const SigmaNablaModule& m);

CheckReport check_integrability(const SigmaNablaModule& m);
CheckReport check_compatibility(const SigmaNablaModule& m);

// Coordinates y' = B y: A' = B A sigma^f(B)^{-1}, G'_i = B G_i B^{-1} - theta_i(B) B^{-1}.
SigmaNablaModule change_basis(const SigmaNablaModule& m, const SeriesMatrix& b);
SigmaNablaModule change_basis(const SigmaNablaModule& m, const SeriesMatrix& b, const SeriesMatrix& b_inv);

SigmaNablaModule rank_one_tensor_power(const SigmaNablaModule& m, int k);
// (det A, trace G).
SigmaNablaModule determinant_module(const SigmaNablaModule& m);
// A -> p^{-f t} A; throws Error(NonIntegralTwist) unless f*t is an integer.
SigmaNablaModule twist(const SigmaNablaModule& m, const Rational& t);
// A -> A sigma^f(A) ... sigma^{f'-f}(A); throws Error(IncompatiblePower) unless f | f'.
SigmaNablaModule iterate_frobenius(const SigmaNablaModule& m, int f_new);
SigmaNablaModule exterior_power(const SigmaNablaModule& m, int k);

}  // namespace slopegap
