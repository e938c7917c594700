#include "slopegap/decay.hpp"

#include <algorithm>
#include <cmath>

#include "slopegap/polyannulus.hpp"

namespace slopegap {

namespace {

constexpr double kRelativeSlack = 1e-12;

double growth(DecayKind kind, double r, int p, int j) {
  if (kind == DecayKind::Overconvergent) return static_cast<double>(j);
  return std::pow(static_cast<double>(p), r * j);
}

}  // namespace

std::string to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::Overconvergent: return "overconvergent";
    case DecayKind::LogDecay: return "log-decay";
    case DecayKind::Sharp: return "sharp";
  }
  return "unknown";
}

double decay_bound(const DecayWitness& witness, int p, int j) {
  if (witness.kind == DecayKind::Sharp && j == 0) return 0.0;
  return -witness.c * growth(witness.kind, witness.r, p, j);
}

std::optional<WitnessViolation> check_decay_witness(const LaurentSeries& x,
                                                    const DecayWitness& witness) {
  const int j_hi = std::min(witness.j_hi, x.precision() - 1);
  for (int i = 0; i < x.shape().n; ++i) {
    for (int j = std::max(0, witness.j_lo); j <= j_hi; ++j) {
      const auto w = partial_valuation(i, j, x);
      if (!w) continue;
      const double bound = decay_bound(witness, x.prime(), j);
      if (static_cast<double>(*w) < bound - kRelativeSlack * std::max(1.0, std::abs(bound)))
        return WitnessViolation{i, j, *w, bound};
    }
  }
  return std::nullopt;
}

std::optional<WitnessViolation> check_decay_witness(const std::vector<LaurentSeries>& xs,
                                                    const DecayWitness& witness) {
  for (const auto& x : xs)
    if (auto v = check_decay_witness(x, witness)) return v;
  return std::nullopt;
}

std::optional<std::int64_t> minimal_constant(const std::vector<LaurentSeries>& xs, DecayKind kind,
                                             double r, int j_lo, int j_hi) {
  std::int64_t c = 1;
  for (const auto& x : xs) {
    const int top = std::min(j_hi, x.precision() - 1);
    for (int i = 0; i < x.shape().n; ++i) {
      for (int j = std::max(0, j_lo); j <= top; ++j) {
        const auto w = partial_valuation(i, j, x);
        if (!w || *w >= 0) continue;
        const double g = growth(kind, r, x.prime(), j);
        if ((kind == DecayKind::Sharp && j == 0) || g <= 0.0) return std::nullopt;
        const double need = static_cast<double>(-*w) / g;
        c = std::max(c, static_cast<std::int64_t>(std::ceil(need - kRelativeSlack * need)));
      }
    }
  }
  return c;
}

}  // namespace slopegap
