#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slopegap/error.hpp"
#include "slopegap/json_io.hpp"
#include "slopegap/newton.hpp"
#include "slopegap/regularization.hpp"
#include "slopegap/slope_split.hpp"

namespace slopegap {

struct PipelineOptions {
  std::uint64_t seed = 0;
  std::size_t point_limit = 256;
  // Explicit points override the default sample.
  std::vector<PointSpec> points;
  // Split iterations; 0 selects floor(N / (f s)).
  int K = 0;
};

enum class Verdict { Witnessed, NoClaim, CheckFailure, Aborted };

std::string to_string(Verdict v);

struct StageFailure {
  std::string stage;
  // Empty when the stage ran but its outcome fails the hypotheses (a jumping Newton polygon).
  std::optional<ErrorKind> kind;
  std::string message;
};

struct PipelineReport {
  ConstancyReport analysis;
  // Exterior power taken so the smallest slope is simple, and the twist making it 0.
  int exterior_power = 1;
  Rational twist{0};
  std::optional<Rational> gap;
  std::optional<SplitResult> split;
  std::optional<UnitRootResult> unit_root;
  std::optional<DecayWitness> witness;
  std::optional<RegularizationResult> regularization;
  std::optional<ExtensionResult> extension;
  Verdict verdict = Verdict::Aborted;
  std::optional<StageFailure> failure;

  // 0 witnessed, 2 no-claim, 3 check failure, 4 precision or window exhaustion, 5 I/O.
  int exit_code() const;
};

int exit_code_for(ErrorKind kind);

std::vector<PointSpec> pipeline_points(const RingShape& shape, const PipelineOptions& options);

ConstancyReport analyze(const SigmaNablaModule& m, const PipelineOptions& options);

struct SplitStage {
  NormalizedModule normalized;
  SplitResult split;
  UnitRootResult unit_root;
};

SplitStage split_stage(const SigmaNablaModule& m, const Rational& s, int K);

// Log-decay witness with r = 1/s and the least constant passing on the unit-root differentials.
DecayWitness regularization_witness(const SigmaNablaModule& unit_root, const Rational& s);

PipelineReport run_pipeline(const SigmaNablaModule& m, const PipelineOptions& options);

Json to_json(const PipelineReport& r);
std::string summary(const PipelineReport& r);

}  // namespace slopegap
