#include <gtest/gtest.h>

#include "slopegap/generate.hpp"
#include "slopegap/json_io.hpp"
#include "slopegap/pipeline.hpp"

using namespace slopegap;

namespace {

const RingShape kOne{5, 1, 0};

SigmaNablaModule instance(int gap, std::uint64_t seed, int rank = 2, const RingShape& shape = kOne) {
  SplitInstanceSpec spec;
  spec.shape = shape;
  spec.rank = rank;
  spec.gap = Rational(gap);
  return generate_split_instance(spec, seed);
}

std::string parse_error(const Json& j) {
  try {
    module_from_json(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Json, ScalarForms) {
  EXPECT_EQ(scalar_from_json(Json(7), 5, 10), PadicScalar::from_integer(5, 7, 10));
  EXPECT_EQ(scalar_from_json(Json("-1/4"), 5, 10), PadicScalar::from_rational(5, -1, 4, 10));
  const auto x = PadicScalar::from_rational(5, 3, 25, 10);
  EXPECT_EQ(scalar_from_json(to_json(x), 5, 10), x);
  EXPECT_THROW(scalar_from_json(Json("x"), 5, 10), Error);
}

TEST(Json, ModuleRoundTrip) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto m = instance(2, seed, 3, RingShape{5, 1, 1});
    const auto back = module_from_json(Json::parse(to_json(m).dump()));
    EXPECT_EQ(back.A, m.A);
    EXPECT_EQ(back.G, m.G);
    EXPECT_EQ(back.shape, m.shape);
    EXPECT_EQ(back.precision, m.precision);
  }
}

TEST(Json, WindowRoundTrip) {
  LaurentSeries::Terms t;
  t.emplace(Exponent{-3, 0, 0, 0}, PadicScalar::from_integer(5, 2, 8));
  Window w;
  w.lo[0] = -10;
  const auto s = LaurentSeries::from_terms(kOne, 8, t, w);
  EXPECT_EQ(series_from_json(to_json(s), kOne, 8), s);

  const auto text = R"({"n":1,"m":0,"N":8,"window":[[-10,null]],"terms":[{"e":[-3],"v":0,"u":"2"}]})";
  EXPECT_EQ(series_from_json(Json::parse(text), kOne, 8), s);
  EXPECT_EQ(to_json(s).dump(), text);
}

TEST(Json, TermsAreCanonical) {
  const auto text = R"({"n":1,"m":0,"N":6,"terms":[{"e":[4],"v":1,"u":"3"},{"e":[-2],"v":0,"u":"1"},{"e":[4],"v":1,"u":"2"}]})";
  const auto s = series_from_json(Json::parse(text), kOne, 6);
  EXPECT_EQ(to_json(s).dump(),
            R"({"n":1,"m":0,"N":6,"window":[[null,null]],"terms":[{"e":[-2],"v":0,"u":"1"},{"e":[4],"v":2,"u":"1"}]})");
  EXPECT_THROW(series_from_json(Json::parse(R"({"n":2,"terms":[]})"), kOne, 6), Error);
  EXPECT_THROW(series_from_json(Json::parse(R"({"terms":[{"e":[1],"v":0,"u":"5"}]})"), kOne, 6), Error);
}

TEST(Json, ParseErrorsNameTheLocation) {
  auto j = to_json(trivial_module(kOne, 10, 1, 2));
  j["A"][0][1] = "one";
  EXPECT_NE(parse_error(j).find("module.A[0][1]"), std::string::npos);
  auto k = to_json(trivial_module(kOne, 10, 1, 2));
  k["p"] = 6;
  EXPECT_NE(parse_error(k).find("module.p"), std::string::npos);
  auto l = to_json(trivial_module(kOne, 10, 1, 2));
  l["G"] = Json::array();
  EXPECT_NE(parse_error(l).find("module.G"), std::string::npos);
}

TEST(Pipeline, GapTwoIsWitnessed) {
  const auto r = run_pipeline(instance(2, 11), {});
  EXPECT_EQ(r.verdict, Verdict::Witnessed);
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_TRUE(r.gap);
  EXPECT_EQ(Rational(1) / *r.gap, Rational(1, 2));
  EXPECT_EQ(r.witness->r, 0.5);
  EXPECT_EQ(to_json(r)["reduction"]["r"], "1/2");
}

TEST(Pipeline, GapOneIsNoClaim) {
  const auto r = run_pipeline(instance(1, 11), {});
  EXPECT_EQ(r.verdict, Verdict::NoClaim);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_FALSE(r.split);
}

TEST(Pipeline, JumpAbortsAtAnalysis) {
  const auto r = run_pipeline(jumping_instance(kOne, 10, 2, 5), {});
  EXPECT_EQ(r.verdict, Verdict::Aborted);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->stage, "analyze");
  ASSERT_TRUE(r.analysis.witness);
  EXPECT_EQ(r.analysis.witness->coords, std::vector<int>{2});
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Pipeline, BrokenCompatibilityIsNeverWitnessed) {
  auto m = instance(2, 4);
  m.G[0](0, 0) += LaurentSeries::integer(kOne, 10, 1).scale_by_p_power(3);
  const auto r = run_pipeline(m, {});
  EXPECT_NE(r.verdict, Verdict::Witnessed);
  EXPECT_NE(r.exit_code(), 0);
}

TEST(Pipeline, DeterministicReports) {
  const auto a = to_json(run_pipeline(instance(2, 9, 3), {})).dump();
  const auto b = to_json(run_pipeline(instance(2, 9, 3), {})).dump();
  EXPECT_EQ(a, b);
}

TEST(Pipeline, StagesCompose) {
  const auto m = instance(2, 21);
  PipelineOptions options;
  const auto full = to_json(run_pipeline(m, options));

  const auto scan = analyze(m, options);
  EXPECT_EQ(to_json(scan), full["analysis"]);
  const auto st = split_stage(m, scan.gap, 0);
  EXPECT_EQ(to_json(st.split, st.unit_root), full["split"]);
  const auto witness = regularization_witness(st.unit_root.unit_root, scan.gap);
  const auto reg = regularize_rank_one(RankOneConnection::of(st.unit_root.unit_root), witness);
  EXPECT_EQ(to_json(reg), full["regularization"]);
  const auto ext = exponents_and_extension(regularized_module(st.unit_root.unit_root, reg));
  EXPECT_EQ(to_json(ext), full["extension"]);
}

TEST(Pipeline, FileRoundTripGivesTheSameReport) {
  const auto m = instance(2, 5);
  const auto direct = to_json(run_pipeline(m, {})).dump();
  const auto reread = to_json(run_pipeline(module_from_json(Json::parse(to_json(m).dump())), {})).dump();
  EXPECT_EQ(direct, reread);
}

TEST(Pipeline, ExplicitPointsAreValidated) {
  PipelineOptions o;
  o.points = {PointSpec{{0}}};
  EXPECT_THROW(analyze(instance(2, 1), o), Error);
  o.points = {PointSpec{{1}}, PointSpec{{4}}};
  EXPECT_EQ(analyze(instance(2, 1), o).per_point.size(), 2u);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::PrecisionExhausted), 4);
  EXPECT_EQ(exit_code_for(ErrorKind::WindowExhausted), 4);
  EXPECT_EQ(exit_code_for(ErrorKind::Io), 5);
  EXPECT_EQ(exit_code_for(ErrorKind::Parse), 5);
  EXPECT_EQ(exit_code_for(ErrorKind::CompatibilityDefect), 3);
}
