#include "slopegap/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "slopegap/error.hpp"

namespace slopegap {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Json bound(std::int64_t b) { return b >= kUnbounded || b <= -kUnbounded ? Json(nullptr) : Json(b); }

template <typename T>
T get(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(where + "." + key, e.what());
  }
}

SeriesMatrix matrix_from_json(const Json& j, const RingShape& shape, int precision, int d, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) fail(where, "expected " + std::to_string(d) + " rows");
  SeriesMatrix out = SeriesMatrix::zero(shape, precision, d, d);
  for (int r = 0; r < d; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != d) fail(rw, "expected " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) {
      const std::string cw = rw + "[" + std::to_string(c) + "]";
      try {
        out(r, c) = series_from_json(row[static_cast<std::size_t>(c)], shape, precision);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Parse) throw;
        fail(cw, e.detail());
      }
    }
  }
  return out;
}

}  // namespace

Json to_json(const PadicScalar& x) {
  return {{"v", x.valuation()}, {"u", std::to_string(x.unit())}, {"N", x.absolute_precision()}};
}

namespace {

std::int64_t unit_digits(const Json& u, const std::string& where) {
  if (u.is_number_integer()) return u.get<std::int64_t>();
  if (!u.is_string()) fail(where, "\"u\" must be a decimal string");
  const auto& text = u.get_ref<const std::string&>();
  if (text.empty() || text.size() > 19 || text.find_first_not_of("0123456789") != std::string::npos)
    fail(where, "\"u\" must be a nonnegative decimal string");
  const auto value = std::stoull(text);
  if (value > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) fail(where, "\"u\" is too large");
  return static_cast<std::int64_t>(value);
}

}  // namespace

PadicScalar scalar_from_json(const Json& j, int p, int precision) {
  if (j.is_number_integer()) return PadicScalar::from_integer(p, j.get<std::int64_t>(), precision);
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    return PadicScalar::from_rational(p, r.numerator(), r.denominator(), precision);
  }
  if (j.is_object()) {
    const int v = get<int>(j, "v", "scalar");
    const int n = j.contains("N") ? get<int>(j, "N", "scalar") : precision;
    const auto u = unit_digits(j.contains("u") ? j.at("u") : Json(), "scalar");
    if (u < 0) fail("scalar", "negative digits");
    if (u == 0) return PadicScalar::zero(p, n);
    if (n <= v) fail("scalar", "valuation must be below N");
    return PadicScalar::make(p, v, u, n - v);
  }
  throw Error(ErrorKind::Parse, "scalar must be an integer, a rational string or {\"v\", \"u\", \"N\"}");
}

Json to_json(const LaurentSeries& x) {
  const int nv = x.shape().variables();
  Json j;
  j["n"] = x.shape().n;
  j["m"] = x.shape().m;
  j["N"] = x.precision();
  Json window = Json::array();
  for (int i = 0; i < nv; ++i)
    window.push_back(Json::array({bound(x.window().lo[static_cast<std::size_t>(i)]),
                                  bound(x.window().hi[static_cast<std::size_t>(i)])}));
  j["window"] = window;
  Json terms = Json::array();
  for (const auto& [e, c] : x.terms()) {
    Json ej = Json::array();
    for (int i = 0; i < nv; ++i) ej.push_back(e[static_cast<std::size_t>(i)]);
    terms.push_back({{"e", ej}, {"v", c.valuation()}, {"u", std::to_string(c.unit())}});
  }
  j["terms"] = terms;
  return j;
}

LaurentSeries series_from_json(const Json& j, const RingShape& shape, int default_precision) {
  const int nv = shape.variables();
  if (j.is_number_integer() || j.is_string())
    return LaurentSeries::constant(shape, default_precision, scalar_from_json(j, shape.p, default_precision));
  if (!j.is_object()) throw Error(ErrorKind::Parse, "series must be an object or a constant");
  if (j.contains("n") && get<int>(j, "n", "series") != shape.n) fail("series.n", "does not match the module");
  if (j.contains("m") && get<int>(j, "m", "series") != shape.m) fail("series.m", "does not match the module");
  const int precision = j.contains("N") ? get<int>(j, "N", "series") : default_precision;
  if (precision < 1) fail("series.N", "must be positive");
  Window window;
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (!w.is_array() || static_cast<int>(w.size()) != nv) fail("series.window", "expected one [lo, hi] per variable");
    for (int i = 0; i < nv; ++i) {
      const auto& pair = w[static_cast<std::size_t>(i)];
      const std::string where = "series.window[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) fail(where, "expected [lo, hi]");
      for (std::size_t side = 0; side < 2; ++side) {
        const auto& b = pair[side];
        if (b.is_null()) continue;
        if (!b.is_number_integer()) fail(where, "bounds must be integers or null");
        (side == 0 ? window.lo : window.hi)[static_cast<std::size_t>(i)] = b.get<std::int64_t>();
      }
    }
  }
  LaurentSeries::Terms terms;
  if (j.contains("terms")) {
    const auto& ts = j.at("terms");
    if (!ts.is_array()) fail("series.terms", "must be an array");
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto& t = ts[k];
      const std::string where = "terms[" + std::to_string(k) + "]";
      if (!t.is_object() || !t.contains("e") || !t.at("e").is_array() || static_cast<int>(t.at("e").size()) != nv)
        fail(where, "must be {\"e\", \"v\", \"u\"} with " + std::to_string(nv) + " exponents");
      Exponent e{};
      for (int i = 0; i < nv; ++i) {
        const auto& x = t.at("e")[static_cast<std::size_t>(i)];
        if (!x.is_number_integer()) fail(where, "non-integer exponent");
        const auto v = x.get<std::int64_t>();
        if (i >= shape.n && v < 0) fail(where, "negative affine exponent");
        if (v > shape.box || v < -shape.box) fail(where, "exponent outside the box");
        e[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(v);
      }
      const int v = get<int>(t, "v", where);
      const auto u = unit_digits(t.contains("u") ? t.at("u") : Json(), where);
      if (v < 0) fail(where, "negative valuation");
      if (u == 0 || v >= precision) continue;
      if (u % shape.p == 0) fail(where, "\"u\" must be prime to p");
      const auto c = PadicScalar::make(shape.p, v, u, precision - v);
      auto [it, fresh] = terms.emplace(e, c);
      if (!fresh) it->second += c;
    }
  }
  return LaurentSeries::from_terms(shape, precision, terms, window);
}

Json to_json(const SeriesMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const SigmaNablaModule& m) {
  Json j;
  j["p"] = m.shape.p;
  j["n"] = m.shape.n;
  j["m"] = m.shape.m;
  j["box"] = m.shape.box;
  j["precision"] = m.precision;
  j["f"] = m.f;
  j["rank"] = m.rank();
  j["A"] = to_json(m.A);
  Json g = Json::array();
  for (const auto& gi : m.G) g.push_back(to_json(gi));
  j["G"] = g;
  return j;
}

SigmaNablaModule module_from_json(const Json& j) {
  if (!j.is_object()) fail("module", "expected an object");
  SigmaNablaModule m;
  m.shape.p = get<int>(j, "p", "module");
  m.shape.n = get<int>(j, "n", "module");
  m.shape.m = j.contains("m") ? get<int>(j, "m", "module") : 0;
  if (j.contains("box")) m.shape.box = get<std::int64_t>(j, "box", "module");
  m.precision = get<int>(j, "precision", "module");
  m.f = j.contains("f") ? get<int>(j, "f", "module") : 1;
  if (!is_prime(m.shape.p) || m.shape.p < 3) fail("module.p", "must be an odd prime");
  if (m.shape.n < 0 || m.shape.m < 0 || m.shape.variables() < 1 || m.shape.variables() > kMaxVariables)
    fail("module", "need 1 to " + std::to_string(kMaxVariables) + " variables");
  if (m.shape.box < 1 || m.shape.box > (std::int64_t{1} << 30)) fail("module.box", "out of range");
  if (m.precision < 1) fail("module.precision", "must be positive");
  if (m.f < 1) fail("module.f", "must be positive");
  if (!j.contains("A") || !j.at("A").is_array() || j.at("A").empty()) fail("module.A", "missing or empty");
  const int d = static_cast<int>(j.at("A").size());
  if (j.contains("rank") && get<int>(j, "rank", "module") != d) fail("module.rank", "does not match A");
  m.A = matrix_from_json(j.at("A"), m.shape, m.precision, d, "module.A");
  if (j.contains("G")) {
    const auto& g = j.at("G");
    if (!g.is_array() || static_cast<int>(g.size()) != m.shape.variables())
      fail("module.G", "expected one matrix per variable");
    for (int i = 0; i < m.shape.variables(); ++i)
      m.G.push_back(matrix_from_json(g[static_cast<std::size_t>(i)], m.shape, m.precision, d, "module.G[" + std::to_string(i) + "]"));
  } else {
    m.G.assign(static_cast<std::size_t>(m.shape.variables()), SeriesMatrix::zero(m.shape, m.precision, d, d));
  }
  return m;
}

Json to_json(const NamedCheck& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"valuation", c.valuation}, {"precision", c.precision}};
}

Json to_json(const DecayWitness& w) {
  return {{"kind", to_string(w.kind)}, {"r", w.r}, {"c", w.c}, {"j_range", Json::array({w.j_lo, w.j_hi})}};
}

Json to_json(const NewtonPolygon& np) {
  Json slopes = Json::array(), vertices = Json::array();
  for (const auto& s : np.slopes) slopes.push_back(to_string(s));
  for (const auto& [i, y] : np.vertices) vertices.push_back(Json::array({i, to_string(y)}));
  return {{"slopes", slopes}, {"vertices", vertices}};
}

Json to_json(const ConstancyReport& r) {
  Json j;
  j["constant"] = r.constant;
  j["common"] = to_json(r.common);
  j["witness"] = r.witness ? Json(r.witness->coords) : Json(nullptr);
  j["first_break"] = r.first_break ? Json(*r.first_break) : Json(nullptr);
  j["gap"] = to_string(r.gap);
  Json points = Json::array();
  for (const auto& [x, np] : r.per_point) {
    Json pj = to_json(np);
    points.push_back({{"point", x.coords}, {"slopes", pj["slopes"]}});
  }
  j["points"] = points;
  return j;
}

Json to_json(const SplitResult& s, const UnitRootResult& u) {
  Json j;
  j["K"] = s.K;
  j["omega"] = s.omega;
  j["omega_order_achieved"] = s.order_achieved;
  j["K_prime"] = u.K_prime;
  j["witness"] = to_json(s.witness);
  j["unit_root_witness"] = to_json(u.witness);
  Json n21 = Json::array();
  for (int i = 0; i < s.N.rows() - 1; ++i) n21.push_back(to_json(s.N(i + 1, 0)));
  j["N21"] = n21;
  j["unit_root"] = to_json(u.unit_root);
  Json checks = Json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  for (const auto& c : u.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

Json to_json(const RegularizationResult& r) {
  Json j;
  j["tau"] = r.tau;
  Json ex = Json::array();
  for (const auto& c : r.exponents) ex.push_back(to_json(c));
  j["exponents"] = ex;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

Json to_json(const ExtensionResult& e) {
  Json j;
  Json c = Json::array();
  for (const auto& x : e.c) c.push_back(to_json(x));
  j["c"] = c;
  j["n"] = e.n;
  Json checks = Json::array();
  for (const auto& x : e.checks) checks.push_back(to_json(x));
  j["checks"] = checks;
  j["extended"] = to_json(e.extended);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace slopegap
