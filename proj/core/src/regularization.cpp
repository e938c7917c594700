#include "slopegap/regularization.hpp"

#include <algorithm>

#include "slopegap/error.hpp"
#include "slopegap/polyannulus.hpp"

namespace slopegap {

NamedCheck named(const std::string& name, const CheckReport& report) {
  return {name, report.ok(), report.valuation, report.precision};
}

namespace {

Exponent minus_unit(int i) {
  Exponent e{};
  e[static_cast<std::size_t>(i)] = -1;
  return e;
}

NamedCheck zero_check(const std::string& name, const LaurentSeries& residual) {
  return {name, residual.is_zero(), residual.valuation_bound(), residual.precision()};
}

bool has_negative_degree(const LaurentSeries& x, int i) {
  if (!x.is_complete()) return true;
  const auto range = x.degree_range(i);
  return range && range->first < 0;
}

bool is_constant(const LaurentSeries& x) {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [](const auto& t) { return t.first == Exponent{}; });
}

}  // namespace

std::vector<LaurentSeries> RankOneConnection::differential() const {
  std::vector<LaurentSeries> f;
  for (int i = 0; i < shape.variables(); ++i) f.push_back(g[static_cast<std::size_t>(i)].shift(minus_unit(i)));
  return f;
}

RankOneConnection RankOneConnection::from_differential(const std::vector<LaurentSeries>& f) {
  RankOneConnection c;
  c.shape = f.front().shape();
  for (int i = 0; i < c.shape.variables(); ++i) c.g.push_back(f[static_cast<std::size_t>(i)].shift(unit_exponent(i)));
  return c;
}

RankOneConnection RankOneConnection::of(const SigmaNablaModule& m) {
  if (m.rank() != 1) throw Error(ErrorKind::NotInShape, "expected a rank-one module");
  RankOneConnection c;
  c.shape = m.shape;
  for (const auto& g : m.G) c.g.push_back(g(0, 0));
  return c;
}

CheckReport check_integrability(const RankOneConnection& conn) {
  std::vector<SeriesMatrix> residuals;
  const int nv = conn.shape.variables();
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      residuals.emplace_back(1, 1, theta(i, conn.g[static_cast<std::size_t>(j)]) - theta(j, conn.g[static_cast<std::size_t>(i)]));
  if (residuals.empty()) {
    const int n = conn.g.front().precision();
    return {n, n};
  }
  return summarize(residuals);
}

ResidueReport check_residue_constancy(const RankOneConnection& conn) {
  const auto integrable = check_integrability(conn);
  if (!integrable.ok())
    throw Error(ErrorKind::NotIntegrable, "curvature has valuation " + std::to_string(integrable.valuation));
  ResidueReport report;
  const auto f = conn.differential();
  for (int i = 0; i < conn.shape.n; ++i) {
    report.residues.push_back(residue(i, f[static_cast<std::size_t>(i)]));
    if (!is_constant(report.residues.back())) {
      report.constant = false;
      report.offending.push_back(i);
    }
  }
  return report;
}

RegularizationResult regularize_rank_one(const RankOneConnection& conn, const DecayWitness& witness) {
  if (witness.r >= 1.0)
    throw Error(ErrorKind::DecayTooSlow, "log-decay rate r = " + std::to_string(witness.r) + " is not below 1");
  const auto f = conn.differential();
  for (int i = 0; i < conn.shape.n; ++i) {
    if (auto v = check_decay_witness(f[static_cast<std::size_t>(i)], witness))
      throw Error(ErrorKind::DecayTooSlow, "f_" + std::to_string(i + 1) + " has w_" + std::to_string(v->j) + " = " +
                                               std::to_string(v->w) + " below " + std::to_string(v->bound));
  }
  const auto integrable = check_integrability(conn);
  if (!integrable.ok())
    throw Error(ErrorKind::NotIntegrable, "curvature has valuation " + std::to_string(integrable.valuation));

  RegularizationResult out;
  const int precision = conn.g.front().precision();
  std::vector<LaurentSeries> cur = f;
  out.H = LaurentSeries(conn.shape, precision);
  bool moved = false;
  for (int j = 0; j < conn.shape.n; ++j) {
    const LaurentSeries below = truncate_below(j, cur[static_cast<std::size_t>(j)]);
    if (below.is_zero()) {
      out.h.push_back(LaurentSeries(conn.shape, precision));
      continue;
    }
    LaurentSeries h = primitive(j, below);
    out.checks.push_back(zero_check("exactness_" + std::to_string(j + 1), (derivative(j, h) - below).with_precision(h.precision())));
    for (int i = 0; i < conn.shape.variables(); ++i) cur[static_cast<std::size_t>(i)] -= derivative(i, h);
    out.H += h;
    out.tau = std::max(out.tau, std::max(1, 1 - h.valuation_bound()));
    out.h.push_back(std::move(h));
    moved = true;
  }

  std::vector<LaurentSeries> f_out;
  for (auto& c : cur) f_out.push_back(c.scale_by_p_power(out.tau));
  out.connection_out = RankOneConnection::from_differential(f_out);

  for (int i = 0; i < conn.shape.n; ++i) {
    const auto& fi = f_out[static_cast<std::size_t>(i)];
    out.checks.push_back(zero_check("regular_" + std::to_string(i + 1), truncate_below(i, fi)));
    const LaurentSeries res = residue(i, fi);
    out.checks.push_back({"residue_constant_" + std::to_string(i + 1), is_constant(res), res.valuation_bound(), res.precision()});
    out.exponents.push_back(res.coefficient(Exponent{}));
  }

  if (moved) {
    const LaurentSeries E = exp_series(out.H.scale_by_p_power(out.tau));
    for (int i = 0; i < conn.shape.variables(); ++i) {
      const auto& fi = f[static_cast<std::size_t>(i)];
      LaurentSeries residual = E * f_out[static_cast<std::size_t>(i)] - (fi * E).scale_by_p_power(out.tau) + derivative(i, E);
      out.checks.push_back(zero_check("basis_change_" + std::to_string(i + 1), residual));
    }
  }
  return out;
}

SigmaNablaModule regularized_module(const SigmaNablaModule& m, const RegularizationResult& reg) {
  int k = 1;
  for (int t = 0; t < reg.tau; ++t) k *= m.shape.p;
  SigmaNablaModule power = rank_one_tensor_power(m, k);
  if (reg.tau == 0 || reg.H.is_zero()) return power;
  const LaurentSeries z = reg.H.scale_by_p_power(reg.tau);
  const SeriesMatrix b(1, 1, exp_series(z));
  const SeriesMatrix b_inv(1, 1, exp_series(-z));
  return change_basis(power, b, b_inv);
}

ExtensionResult exponents_and_extension(const SigmaNablaModule& m) {
  if (m.rank() != 1) throw Error(ErrorKind::NotInShape, "expected a rank-one module");
  const int p = m.shape.p;
  const std::int64_t q = m.q();
  const LaurentSeries& a = m.A(0, 0);
  const auto lead = leading_term(a);
  if (!lead) throw Error(ErrorKind::NotAUnit, "Frobenius entry has no unique leading monomial");
  const LaurentSeries a_inv = invert(a);
  const int precision = m.effective_precision();

  ExtensionResult out;
  for (int i = 0; i < m.shape.n; ++i) {
    const LaurentSeries& g = m.G[static_cast<std::size_t>(i)](0, 0);
    if (has_negative_degree(g, i))
      throw Error(ErrorKind::NotRegularSingular, "connection has a pole of order > 1 in T_" + std::to_string(i + 1));
    LaurentSeries::Terms slice;
    for (const auto& [e, c] : g.terms())
      if (e[static_cast<std::size_t>(i)] == 0) slice.emplace(e, c);
    const auto s = LaurentSeries::from_terms(m.shape, g.precision(), slice);
    if (!is_constant(s))
      throw Error(ErrorKind::NotRegularSingular, "residue in T_" + std::to_string(i + 1) + " depends on other variables");
    const PadicScalar c = s.coefficient(Exponent{}).with_absolute_precision(precision);
    const std::int64_t n = lead->first[static_cast<std::size_t>(i)];
    const PadicScalar defect = c * PadicScalar::from_integer(p, q - 1, precision + 64) -
                               PadicScalar::from_integer(p, n, precision + 64);
    if (!defect.is_zero())
      throw Error(ErrorKind::NonIntegralExponent, "(q-1)c_" + std::to_string(i + 1) + " differs from " + std::to_string(n) +
                                                      " at valuation " + std::to_string(defect.valuation()));
    out.c.push_back(c);
    out.n.push_back(n);

    LaurentSeries::Terms dslice;
    const LaurentSeries dlog = theta(i, a) * a_inv;
    for (const auto& [e, v] : dlog.terms())
      if (e[static_cast<std::size_t>(i)] == 0) dslice.emplace(e, v);
    const auto residual = LaurentSeries::from_terms(m.shape, dlog.precision(), dslice) - LaurentSeries::integer(m.shape, dlog.precision(), n);
    out.checks.push_back(zero_check("residue_slice_" + std::to_string(i + 1), residual.with_precision(precision)));
  }

  const CheckReport compat = check_compatibility(m);
  out.checks.push_back(named("compatibility", compat));
  if (!compat.ok())
    throw Error(ErrorKind::CompatibilityDefect, "compatibility residual has valuation " + std::to_string(compat.valuation));

  Exponent shift{}, back{};
  for (int i = 0; i < m.shape.n; ++i) {
    shift[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(out.n[static_cast<std::size_t>(i)]);
    back[static_cast<std::size_t>(i)] = -shift[static_cast<std::size_t>(i)];
  }
  const PadicScalar one = PadicScalar::from_integer(p, 1, precision);
  const SeriesMatrix b(1, 1, LaurentSeries::monomial(m.shape, precision, shift, one));
  const SeriesMatrix b_inv(1, 1, LaurentSeries::monomial(m.shape, precision, back, one));
  out.extended = change_basis(rank_one_tensor_power(m, static_cast<int>(q - 1)), b, b_inv);

  bool frob_ok = true, conn_ok = true;
  for (int i = 0; i < m.shape.n; ++i) {
    frob_ok = frob_ok && !has_negative_degree(out.extended.A(0, 0), i);
    for (const auto& g : out.extended.G) conn_ok = conn_ok && !has_negative_degree(g(0, 0), i);
  }
  out.checks.push_back({"pole_free_frobenius", frob_ok, 0, out.extended.A.precision()});
  out.checks.push_back({"pole_free_connection", conn_ok, 0, out.extended.effective_precision()});
  out.checks.push_back(named("extended_compatibility", check_compatibility(out.extended)));
  if (!frob_ok || !conn_ok) throw Error(ErrorKind::NotRegularSingular, "twisted tensor power still has poles");
  return out;
}

OverconvergenceReport overconvergence_witness(const SigmaNablaModule& m, const DecayWitness& witness) {
  OverconvergenceReport report;
  report.regularization = regularize_rank_one(RankOneConnection::of(m), witness);
  report.extension = exponents_and_extension(regularized_module(m, report.regularization));
  auto all = [](const std::vector<NamedCheck>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const NamedCheck& c) { return c.passed; });
  };
  report.success = all(report.regularization.checks) && all(report.extension.checks);
  return report;
}

}  // namespace slopegap
