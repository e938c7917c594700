#include "slopegap/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace slopegap {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Witnessed: return "witnessed";
    case Verdict::NoClaim: return "no-claim";
    case Verdict::CheckFailure: return "check-failure";
    case Verdict::Aborted: return "aborted";
  }
  return "aborted";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WindowExhausted:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::ZeroAtPrecision:
    case ErrorKind::ZeroDeterminantAtPrecision:
      return 4;
    case ErrorKind::Io:
    case ErrorKind::Parse:
      return 5;
    default:
      return 3;
  }
}

int PipelineReport::exit_code() const {
  switch (verdict) {
    case Verdict::Witnessed: return 0;
    case Verdict::NoClaim: return 2;
    case Verdict::CheckFailure: return 3;
    case Verdict::Aborted: return failure && failure->kind ? exit_code_for(*failure->kind) : 3;
  }
  return 3;
}

std::vector<PointSpec> pipeline_points(const RingShape& shape, const PipelineOptions& options) {
  if (options.points.empty()) return default_points(shape, options.seed, options.point_limit);
  for (const auto& x : options.points) {
    if (static_cast<int>(x.coords.size()) != shape.variables())
      throw Error(ErrorKind::Parse, "point " + x.to_string() + " needs " + std::to_string(shape.variables()) + " coordinates");
    for (int i = 0; i < shape.variables(); ++i) {
      const int t = x.coords[static_cast<std::size_t>(i)];
      const bool ok = i < shape.n ? (t >= 1 && t < shape.p) : (t >= 0 && t < shape.p);
      if (!ok) throw Error(ErrorKind::Parse, "point " + x.to_string() + " is not a degree-one point");
    }
  }
  return options.points;
}

ConstancyReport analyze(const SigmaNablaModule& m, const PipelineOptions& options) {
  return newton_constancy_scan(m, pipeline_points(m.shape, options));
}

SplitStage split_stage(const SigmaNablaModule& m, const Rational& s, int K) {
  SplitStage st;
  st.normalized = normalize_entry_growth(m, s);
  st.split = unit_root_split(st.normalized.module, s, K);
  st.unit_root = extract_unit_root(st.normalized.module, st.split, s);
  return st;
}

DecayWitness regularization_witness(const SigmaNablaModule& unit_root, const Rational& s) {
  const auto f = RankOneConnection::of(unit_root).differential();
  const double r = 1.0 / to_double(s);
  const int hi = unit_root.effective_precision() - 1;
  const auto c = minimal_constant(f, DecayKind::LogDecay, r, 0, hi);
  if (!c) throw Error(ErrorKind::WitnessFailure, "no log-decay constant fits the unit-root connection");
  return {DecayKind::LogDecay, r, static_cast<double>(*c), 0, hi};
}

namespace {

bool all_passed(const std::vector<NamedCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

}  // namespace

PipelineReport run_pipeline(const SigmaNablaModule& m, const PipelineOptions& options) {
  PipelineReport report;
  auto stage = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
      return true;
    } catch (const Error& e) {
      report.failure = StageFailure{name, e.kind(), e.detail()};
      report.verdict = Verdict::Aborted;
      return false;
    }
  };

  if (!stage("analyze", [&] { report.analysis = analyze(m, options); })) return report;
  if (!report.analysis.constant) {
    report.failure = StageFailure{"analyze", std::nullopt,
                                  "Newton polygon changes at point " + report.analysis.witness->to_string()};
    report.verdict = Verdict::Aborted;
    return report;
  }
  const auto& slopes = report.analysis.common.slopes;
  if (!report.analysis.first_break) {
    report.verdict = Verdict::NoClaim;
    return report;
  }
  const int k = *report.analysis.first_break;
  report.gap = report.analysis.gap;

  SigmaNablaModule reduced = m;
  if (!stage("reduce", [&] {
        if (k > 1) {
          if (m.rank() > 6) throw Error(ErrorKind::NotInShape, "exterior-power reduction is limited to rank 6");
          reduced = exterior_power(m, k);
          report.exterior_power = k;
        }
        report.twist = slopes[0] * Rational(k);
        if (report.twist != Rational(0)) reduced = twist(reduced, report.twist);
      }))
    return report;

  if (*report.gap <= Rational(1)) {
    report.verdict = Verdict::NoClaim;
    return report;
  }
  const Rational s = *report.gap;

  if (!stage("split", [&] {
        SplitStage st = split_stage(reduced, s, options.K);
        report.split = std::move(st.split);
        report.unit_root = std::move(st.unit_root);
      }))
    return report;
  const SigmaNablaModule& unit = report.unit_root->unit_root;

  if (!stage("regularization", [&] {
        report.witness = regularization_witness(unit, s);
        report.regularization = regularize_rank_one(RankOneConnection::of(unit), *report.witness);
      }))
    return report;

  if (!stage("extension", [&] { report.extension = exponents_and_extension(regularized_module(unit, *report.regularization)); }))
    return report;

  const bool ok = all_passed(report.split->checks) && all_passed(report.unit_root->checks) &&
                  all_passed(report.regularization->checks) && all_passed(report.extension->checks) &&
                  report.witness->r < 1.0;
  report.verdict = ok ? Verdict::Witnessed : Verdict::CheckFailure;
  return report;
}

Json to_json(const PipelineReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["exit_code"] = r.exit_code();
  if (r.failure) {
    j["failure"] = {{"stage", r.failure->stage},
                    {"kind", r.failure->kind ? Json(std::string(to_string(*r.failure->kind))) : Json(nullptr)},
                    {"message", r.failure->message}};
  } else {
    j["failure"] = nullptr;
  }
  j["analysis"] = to_json(r.analysis);
  j["reduction"] = {{"exterior_power", r.exterior_power},
                    {"twist", to_string(r.twist)},
                    {"gap", r.gap ? Json(to_string(*r.gap)) : Json(nullptr)},
                    {"r", r.gap ? Json(to_string(Rational(1) / *r.gap)) : Json(nullptr)}};
  j["split"] = r.split && r.unit_root ? to_json(*r.split, *r.unit_root) : Json(nullptr);
  j["regularization_witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["regularization"] = r.regularization ? to_json(*r.regularization) : Json(nullptr);
  j["extension"] = r.extension ? to_json(*r.extension) : Json(nullptr);
  return j;
}

std::string summary(const PipelineReport& r) {
  std::ostringstream out;
  out << "verdict: " << to_string(r.verdict) << "\n";
  out << "newton polygon: " << (r.analysis.constant ? "constant " + r.analysis.common.to_string() : "not constant")
      << " over " << r.analysis.per_point.size() << " points\n";
  if (r.gap) out << "gap: " << to_string(*r.gap) << " (r = " << to_string(Rational(1) / *r.gap) << ")\n";
  if (r.split && r.unit_root)
    out << "split: K = " << r.split->K << ", order " << r.split->order_achieved << ", K' = " << r.unit_root->K_prime
        << ", N21 constant c = " << r.split->witness.c << "\n";
  if (r.regularization) out << "regularization: tau = " << r.regularization->tau << "\n";
  if (r.extension) {
    out << "extension: n =";
    for (auto n : r.extension->n) out << " " << n;
    out << "\n";
  }
  if (r.failure) out << "stopped at " << r.failure->stage << ": " << r.failure->message << "\n";
  return out.str();
}

}  // namespace slopegap
