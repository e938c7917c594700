#pragma once

#include <cstdint>

#include "slopegap/module.hpp"
#include "slopegap/rational.hpp"
#include "slopegap/regularization.hpp"

namespace slopegap {

struct SplitInstanceSpec {
  RingShape shape;
  int precision = 10;
  int f = 1;
  int rank = 2;
  // Slope of the non-unit block; f * gap must be a positive integer.
  Rational gap{2};
  // Use a constant change of basis (no T-dependence anywhere).
  bool constant = false;
  // Degree radius of the random change of basis.
  int spread = 1;
};

// A = B A0 sigma^f(B)^{-1}, G_i = -theta_i(B) B^{-1} with A0 = [[u, w P], [w Q, w R]]
// constant, w = p^{f gap}, and B = 1 + p X with the off-diagonal blocks of X divisible by w / p,
// so A keeps the block shape. Slopes are (0, gap, ..., gap) at every point.
// Throws Error(GenerationFailed) when the checks fail after bounded retries.
SigmaNablaModule generate_split_instance(const SplitInstanceSpec& spec, std::uint64_t seed);

// [[T_1 - [t0] + p^2 a, -p b], [1, 0]]: slopes (1/2, 1/2) at T_1 = [t0] and (0, 1) elsewhere.
SigmaNablaModule jumping_instance(const RingShape& shape, int precision, int t0, std::uint64_t seed);

// g_i = theta_i(u) + c_i with u of valuation >= 1 whose level-j terms have
// torus degrees >= 1 - p^{r j} (capped at `max_degree`); f_i then passes the
// (r, 1) log-decay witness.
RankOneConnection generate_log_decay_connection(const RingShape& shape, int precision, double r,
                                                std::uint64_t seed, int max_degree = 60);

// a = lambda T^n b / sigma^f(b), g_i = n_i / (q - 1) - theta_i(b) / b with b = 1 + p (polynomial).
// `corrupt` adds 1/3 to g_1, which breaks compatibility and the exponent relation.
SigmaNablaModule generate_regular_rank_one(const RingShape& shape, int precision, int f, std::uint64_t seed,
                                           bool corrupt = false);

}  // namespace slopegap
