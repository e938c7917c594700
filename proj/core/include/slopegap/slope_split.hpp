#pragma once

#include <vector>

#include "slopegap/decay.hpp"
#include "slopegap/module.hpp"
#include "slopegap/rational.hpp"
#include "slopegap/regularization.hpp"

namespace slopegap {

// p-adic exponent of w = p^{f s}. Throws Error(NotInShape) unless f*s is a positive integer.
int omega_exponent(const SigmaNablaModule& m, const Rational& s);

// Verifies A = [[unit, w *], [w *, w *]] at precision; throws Error(NotInShape) or Error(NotAUnit).
void check_split_shape(const SigmaNablaModule& m, const Rational& s);

struct NormalizedModule {
  SigmaNablaModule module;
  // Exponents of the conjugations diag(T_i^{k1}, 1) and diag(1, T_i^{-k2}), per torus variable.
  std::vector<std::int64_t> k1;
  std::vector<std::int64_t> k2;
};

// Conjugates so that w_0(A11^{-1}), w_0(A12) and w_0(A22) are >= 0 in every torus variable,
// where A12 and A22 are the blocks with w divided out.
NormalizedModule normalize_entry_growth(const SigmaNablaModule& m, const Rational& s);

struct SplitResult {
  int omega = 0;
  int K = 0;
  // Order of w reached by the lower-left block of the transformed Frobenius.
  int order_achieved = 0;
  // [[1, 0], [N21, 1]].
  SeriesMatrix N;
  SeriesMatrix N_inv;
  // N A sigma^f(N)^{-1} as produced by the iteration.
  SeriesMatrix A_split;
  // N21 after steps 1..K.
  std::vector<SeriesMatrix> iterates;
  DecayWitness witness;
  std::vector<NamedCheck> checks;
};

// K <= 0 selects floor(N / (f s)). Throws NotAUnit, PrecisionExhausted, WitnessFailure.
SplitResult unit_root_split(const SigmaNablaModule& m, const Rational& s, int K = 0);

struct UnitRootResult {
  SigmaNablaModule transformed;
  SigmaNablaModule unit_root;
  int K_prime = 0;
  DecayWitness witness;
  std::vector<NamedCheck> checks;
};

// Throws CompatibilityDefect, WitnessFailure.
UnitRootResult extract_unit_root(const SigmaNablaModule& m, const SplitResult& split, const Rational& s);

}  // namespace slopegap
