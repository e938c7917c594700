#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slopegap/decay.hpp"
#include "slopegap/module.hpp"

namespace slopegap {

struct NamedCheck {
  std::string name;
  bool passed = false;
  int valuation = 0;
  int precision = 0;
};

NamedCheck named(const std::string& name, const CheckReport& report);

// Rank-one connection in dlog form: nabla e = sum g_i e dT_i/T_i.
struct RankOneConnection {
  RingShape shape;
  std::vector<LaurentSeries> g;

  // f_i = g_i / T_i, the dT_i coefficients.
  std::vector<LaurentSeries> differential() const;
  static RankOneConnection from_differential(const std::vector<LaurentSeries>& f);
  static RankOneConnection of(const SigmaNablaModule& m);
};

// theta_i g_j - theta_j g_i for i < j.
CheckReport check_integrability(const RankOneConnection& conn);

struct ResidueReport {
  bool constant = true;
  std::vector<LaurentSeries> residues;
  std::vector<int> offending;
};

// Res_i(f_i) for each torus variable; throws Error(NotIntegrable).
ResidueReport check_residue_constancy(const RankOneConnection& conn);

struct RegularizationResult {
  int tau = 0;
  std::vector<LaurentSeries> h;
  LaurentSeries H;
  RankOneConnection connection_out;
  std::vector<PadicScalar> exponents;
  std::vector<NamedCheck> checks;
};

// Removes every W< part from the p^tau-th tensor power by the basis change
// exp(-p^tau H). Throws DecayTooSlow, NotIntegrable, PrecisionExhausted.
RegularizationResult regularize_rank_one(const RankOneConnection& conn, const DecayWitness& witness);

// The rank-one module M^{p^tau} written in the basis exp(-p^tau H) e^{p^tau}.
SigmaNablaModule regularized_module(const SigmaNablaModule& m, const RegularizationResult& reg);

struct ExtensionResult {
  std::vector<PadicScalar> c;
  std::vector<std::int64_t> n;
  SigmaNablaModule extended;
  std::vector<NamedCheck> checks;
};

// For a regular-singular rank-one module: exponents c_i with (q-1)c_i = n_i and
// M^{q-1} in the basis T^{-n} e^{q-1}, checked to be free of poles.
ExtensionResult exponents_and_extension(const SigmaNablaModule& m);

struct OverconvergenceReport {
  RegularizationResult regularization;
  ExtensionResult extension;
  bool success = false;
};

OverconvergenceReport overconvergence_witness(const SigmaNablaModule& m, const DecayWitness& witness);

}  // namespace slopegap
