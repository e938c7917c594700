#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slopegap/series.hpp"

namespace slopegap {

enum class DecayKind {
  Overconvergent,  // w_j >= -c*j
  LogDecay,        // w_j >= -c*p^(r*j)
  Sharp,           // w_0 >= 0 and w_j >= -c*p^(r*j) for j > 0
};

std::string to_string(DecayKind kind);

struct DecayWitness {
  DecayKind kind = DecayKind::LogDecay;
  double r = 0.0;
  double c = 1.0;
  // Inclusive range of p-adic levels j checked; clamped below the series precision.
  int j_lo = 0;
  int j_hi = 0;
};

struct WitnessViolation {
  int variable = 0;
  int j = 0;
  std::int64_t w = 0;
  double bound = 0.0;
};

// Lower bound the witness imposes on w_j.
double decay_bound(const DecayWitness& witness, int p, int j);

std::optional<WitnessViolation> check_decay_witness(const LaurentSeries& x,
                                                    const DecayWitness& witness);
std::optional<WitnessViolation> check_decay_witness(const std::vector<LaurentSeries>& xs,
                                                    const DecayWitness& witness);

// Smallest integer c >= 1 for which the witness of the given kind and r passes;
// nullopt when no c works (a pole at level 0 under the sharp or overconvergent form).
std::optional<std::int64_t> minimal_constant(const std::vector<LaurentSeries>& xs, DecayKind kind,
                                             double r, int j_lo, int j_hi);

}  // namespace slopegap
