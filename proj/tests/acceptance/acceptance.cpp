#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracle.hpp"
#include "slopegap/decay.hpp"
#include "slopegap/generate.hpp"
#include "slopegap/json_io.hpp"
#include "slopegap/pipeline.hpp"
#include "slopegap/polyannulus.hpp"
#include "slopegap/regularization.hpp"
#include "slopegap/slope_split.hpp"

using namespace slopegap;

namespace {

// Collects failures; the first few are printed under the criterion line.
struct Tally {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
};

using Log = std::string;

bool all_passed(const std::vector<NamedCheck>& checks, Tally& t, const std::string& where) {
  bool ok = true;
  for (const auto& c : checks) {
    t.expect(c.passed, where + ": check " + c.name + " failed");
    ok = ok && c.passed;
  }
  return ok;
}

std::string tag(const char* kind, std::uint64_t seed) { return std::string(kind) + " seed " + std::to_string(seed); }

// 1. Ring laws and operator identities.
void ring_laws(Tally& t) {
  const RingShape shape{5, 2, 1};
  std::mt19937_64 rng(1001);
  const auto m = oracle::ipow(5, 10);
  for (int trial = 0; trial < 500; ++trial) {
    const auto px = oracle::random_poly(rng, shape, 16, 30, 2'000'000);
    const auto py = oracle::random_poly(rng, shape, 8, 30, 2'000'000);
    const auto x = oracle::to_series(shape, 10, px);
    const auto y = oracle::to_series(shape, 10, py);
    const std::string where = "trial " + std::to_string(trial);

    for (int i = 0; i < shape.n; ++i)
      t.expect(truncate_below(i, x) + residue_term(i, x) + truncate_at_least(i, x) == x, where + ": partition");
    t.expect(truncate_below(0, truncate_at_least(1, x)) == truncate_at_least(1, truncate_below(0, x)),
             where + ": commutation (1,2)");
    t.expect(truncate_below(1, truncate_at_least(0, x)) == truncate_at_least(0, truncate_below(1, x)),
             where + ": commutation (2,1)");

    const auto xy = x * y;
    t.expect(oracle::from_series(xy, 10) == oracle::reduce(oracle::mul(px, py, m), m), where + ": product");
    for (int i = 0; i < shape.variables(); ++i)
      t.expect(derivative(i, xy) == derivative(i, x) * y + x * derivative(i, y), where + ": Leibniz");

    // Primitives divide by exponents up to 30, so they are formed at N = 12 and compared mod p^10.
    const auto x12 = oracle::to_series(shape, 12, px);
    for (int i = 0; i < shape.n; ++i) {
      const auto low = truncate_below(i, x12);
      t.expect(congruent(derivative(i, primitive(i, low)), low, 10), where + ": derivative of primitive");
    }
  }
}

void accumulate(LaurentSeries::Terms& terms, const Exponent& e, const PadicScalar& c, int precision) {
  auto [it, fresh] = terms.try_emplace(e, PadicScalar::zero(c.prime(), precision));
  it->second += c;
}

// Integer-coefficient series with level-j terms p^j u T^e, e >= -floor(c p^(r j)) in each
// torus variable and e >= 0 at level 0.
LaurentSeries decaying_series(std::mt19937_64& rng, const RingShape& shape, int precision, double r, int c) {
  std::uniform_int_distribution<std::int64_t> unit(1, 4);
  std::uniform_int_distribution<int> count(0, 3);
  LaurentSeries::Terms terms;
  for (int j = 0; j < precision; ++j) {
    const auto reach = std::min<std::int64_t>(60, static_cast<std::int64_t>(c * std::pow(5.0, r * j)));
    std::uniform_int_distribution<std::int64_t> deg(j == 0 ? 0 : -reach, 6);
    std::uniform_int_distribution<int> disk(0, 6);
    for (int k = count(rng); k > 0; --k) {
      Exponent e{};
      for (int i = 0; i < shape.variables(); ++i) e[i] = i < shape.n ? static_cast<std::int32_t>(deg(rng)) : disk(rng);
      accumulate(terms, e, PadicScalar::make(5, j, unit(rng), precision - j), precision);
    }
  }
  return LaurentSeries::from_terms(shape, precision, terms);
}

// Arbitrary integral series with w_0 >= 0, no decay structure imposed.
LaurentSeries rough_series(std::mt19937_64& rng, const RingShape& shape, int precision) {
  std::uniform_int_distribution<int> level(1, precision - 1), deg(-200, 10), disk(0, 6), count(2, 10);
  std::uniform_int_distribution<std::int64_t> unit(1, 4);
  LaurentSeries::Terms terms;
  terms[Exponent{}] = PadicScalar::from_integer(5, 1, precision);
  for (int k = count(rng); k > 0; --k) {
    const int j = level(rng);
    Exponent e{};
    for (int i = 0; i < shape.variables(); ++i) e[i] = i < shape.n ? deg(rng) : disk(rng);
    accumulate(terms, e, PadicScalar::make(5, j, unit(rng), precision - j), precision);
  }
  return LaurentSeries::from_terms(shape, precision, terms);
}

// 2. Witness transforms, with omega = p^s and r = 1/s, f = 1.
void witness_transforms(Tally& t) {
  const RingShape shape{5, 2, 1};
  const int N = 10;
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> pick_s(1, 3), pick_c(1, 6);
  int sigma_needs_pc = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int s = pick_s(rng);
    const double r = 1.0 / s;
    const std::string where = "trial " + std::to_string(trial) + " s " + std::to_string(s);

    const auto x = decaying_series(rng, shape, N, r, pick_c(rng));
    const auto c = minimal_constant({x}, DecayKind::Sharp, r, 0, N - 1);
    t.expect(c.has_value(), where + ": constructed series has no witness");
    if (!c) continue;
    const double cx = static_cast<double>(*c);

    t.expect(!check_decay_witness(frobenius_power(1, x), {DecayKind::Sharp, r, 5 * cx, 0, N - 1}), where + ": sigma");
    if (check_decay_witness(frobenius_power(1, x), {DecayKind::Sharp, r, cx, 0, N - 1})) ++sigma_needs_pc;
    const auto wx = x.scale_by_p_power(s);
    t.expect(!check_decay_witness(wx, {DecayKind::Sharp, r, cx / 5, 0, N + s - 1}), where + ": omega");

    const auto y = rough_series(rng, shape, N);
    const auto wy = y.scale_by_p_power(s);
    const auto cw = minimal_constant({wy}, DecayKind::Sharp, r, 0, N + s - 1);
    t.expect(cw.has_value(), where + ": omega y has no witness");
    if (cw)
      t.expect(!check_decay_witness(y, {DecayKind::Sharp, r, 5.0 * static_cast<double>(*cw), 0, N - 1}),
               where + ": converse");
  }
  t.expect(sigma_needs_pc > 0, "no sample needed the enlarged constant after sigma");
}

struct SplitRun {
  SigmaNablaModule module;
  bool constant = false;
  std::uint64_t seed = 0;
};

std::vector<SplitRun> split_instances() {
  std::vector<SplitRun> out;
  for (int rank : {2, 3}) {
    const int count = rank == 2 ? 50 : 20;
    for (int k = 0; k < count; ++k) {
      SplitInstanceSpec spec;
      spec.shape = RingShape{5, 1, 0};
      spec.rank = rank;
      spec.gap = Rational(2);
      spec.constant = k % 5 == 0;
      const auto seed = static_cast<std::uint64_t>(100 * rank + k);
      out.push_back({generate_split_instance(spec, seed), spec.constant, seed});
    }
  }
  return out;
}

__int128 constant_term(const LaurentSeries& s, int k) {
  const auto v = s.coefficient(Exponent{}).symmetric_integer().value_or(0);
  return oracle::mod(static_cast<__int128>(v), oracle::ipow(5, k));
}

// 3 and 4 share their instances.
void splitting(Tally& t3, Tally& t4, Log& log) {
  const Rational s(2);
  for (const auto& run : split_instances()) {
    const auto& m = run.module;
    const int d = m.rank();
    const std::string where = tag(run.constant ? "constant rank " : "rank ", run.seed) + " d " + std::to_string(d);
    SplitStage st;
    try {
      st = split_stage(m, s, 5);
    } catch (const Error& e) {
      t3.expect(false, where + ": " + e.what());
      t4.expect(e.kind() != ErrorKind::WitnessFailure, where + ": WitnessFailure");
      continue;
    }
    log += to_json(st.split, st.unit_root).dump() + "\n";
    const auto& a = st.normalized.module.A;

    all_passed(st.split.checks, t3, where);
    const auto product = st.split.N * a * frobenius_power(1, st.split.N_inv);
    t3.expect(product.block(1, 0, d - 1, 1).valuation_bound() >= 10, where + ": multiply-back lower-left");
    t3.expect((st.split.N * st.split.N_inv - SeriesMatrix::identity(m.shape, m.precision, d)).is_zero(),
              where + ": N N^-1");
    t3.expect(st.split.iterates.size() == 5, where + ": iterate count");
    for (std::size_t k = 1; k <= st.split.iterates.size(); ++k)
      for (int i = 0; i < d - 1; ++i) {
        const auto prev = k == 1 ? LaurentSeries(m.shape, m.precision) : st.split.iterates[k - 2](i, 0);
        t3.expect(congruent(st.split.iterates[k - 1](i, 0), prev, static_cast<int>(2 * k)),
                  where + ": stability k=" + std::to_string(k));
      }
    if (run.constant) {
      std::vector<__int128> a12, a21;
      std::vector<std::vector<__int128>> a22(static_cast<std::size_t>(d - 1));
      for (int i = 1; i < d; ++i) {
        a12.push_back(constant_term(a(0, i), 10));
        a21.push_back(constant_term(a(i, 0), 10));
        for (int j = 1; j < d; ++j) a22[static_cast<std::size_t>(i - 1)].push_back(constant_term(a(i, j), 10));
      }
      const auto x = oracle::riccati(constant_term(a(0, 0), 10), a12, a21, a22, 5, 10);
      for (int i = 1; i < d; ++i)
        t3.expect(constant_term(st.split.N(i, 0), 10) == x[static_cast<std::size_t>(i - 1)] &&
                      st.split.N(i, 0).size() <= 1,
                  where + ": fixed-point oracle");
    }

    // Sharp witnesses on N21 and R_i, minimal constants, U_i and K'.
    std::vector<LaurentSeries> n21;
    for (int i = 1; i < d; ++i) n21.push_back(st.split.N(i, 0));
    const double c = st.split.witness.c;
    t4.expect(st.split.witness.kind == DecayKind::Sharp && st.split.witness.r == 0.5, where + ": N21 witness form");
    t4.expect(!check_decay_witness(n21, {DecayKind::Sharp, 0.5, c, 0, 9}), where + ": N21 witness");
    t4.expect(minimal_constant(n21, DecayKind::Sharp, 0.5, 0, 9) == static_cast<std::int64_t>(c),
              where + ": N21 constant not minimal");

    const auto& u = st.unit_root;
    std::vector<LaurentSeries> rs;
    for (const auto& g : u.unit_root.G) rs.push_back(g(0, 0));
    const double cr = u.witness.c;
    t4.expect(!check_decay_witness(rs, {DecayKind::Sharp, 0.5, cr, 0, 9}), where + ": R witness");
    t4.expect(minimal_constant(rs, DecayKind::Sharp, 0.5, 0, 9) == static_cast<std::int64_t>(cr),
              where + ": R constant not minimal");
    t4.expect(u.K_prime >= 4, where + ": K' = " + std::to_string(u.K_prime));
    for (const auto& g : u.transformed.G)
      t4.expect(g.block(1, 0, d - 1, 1).valuation_bound() >= 2 * u.K_prime, where + ": U_i");
    all_passed(u.checks, t4, where);
  }
}

// 5. Regularization of rank-one connections with (2/3, 1) witnesses.
void regularization(Tally& t, Log& log) {
  const RingShape shape{5, 2, 0};
  const int N = 12;
  const DecayWitness witness{DecayKind::LogDecay, 2.0 / 3.0, 1.0, 0, N - 1};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::string where = tag("connection", seed);
    const auto conn = generate_log_decay_connection(shape, N, 2.0 / 3.0, seed);
    const auto f = conn.differential();
    t.expect(!check_decay_witness(f, witness), where + ": input witness");
    RegularizationResult reg;
    try {
      reg = regularize_rank_one(conn, witness);
    } catch (const Error& e) {
      t.expect(false, where + ": " + e.what());
      continue;
    }
    log += to_json(reg).dump() + "\n";
    all_passed(reg.checks, t, where);
    t.expect(reg.tau <= 3, where + ": tau = " + std::to_string(reg.tau));

    const auto out = reg.connection_out.differential();
    for (int i = 0; i < shape.n; ++i) t.expect(truncate_below(i, out[static_cast<std::size_t>(i)]).is_zero(), where + ": W< output");
    t.expect(check_residue_constancy(reg.connection_out).constant, where + ": residues");

    auto cur = f;
    for (int j = 0; j < shape.n; ++j) {
      const auto& h = reg.h[static_cast<std::size_t>(j)];
      const auto below = truncate_below(j, cur[static_cast<std::size_t>(j)]);
      // Each primitive of degree above -125 loses at most two digits.
      const int k = std::min(h.precision(), below.precision());
      t.expect(k >= N - 2 * (j + 1), where + ": exactness known only mod p^" + std::to_string(k));
      t.expect(congruent(derivative(j, h), below, k), where + ": exactness j=" + std::to_string(j));
      for (int i = 0; i < shape.variables(); ++i) cur[static_cast<std::size_t>(i)] -= derivative(i, h);
    }
  }
}

// 6. Exponent rationality and monomial extension.
void exponents(Tally& t, Log& log) {
  const RingShape shape{5, 2, 0};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::string where = tag("module", seed);
    const auto m = generate_regular_rank_one(shape, 10, 1, seed);
    try {
      const auto ext = exponents_and_extension(m);
      log += to_json(ext).dump() + "\n";
      all_passed(ext.checks, t, where);
      for (std::size_t i = 0; i < ext.c.size(); ++i) {
        const auto c = ext.c[i];
        const auto lhs = c * PadicScalar::from_integer(5, 4, c.absolute_precision());
        t.expect((lhs - PadicScalar::from_integer(5, ext.n[i], c.absolute_precision())).is_zero(), where + ": (q-1) c");
      }
    } catch (const Error& e) {
      t.expect(false, where + ": " + e.what());
    }
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::string where = tag("corrupted module", seed);
    try {
      exponents_and_extension(generate_regular_rank_one(shape, 10, 1, 1000 + seed, true));
      t.expect(false, where + ": accepted");
    } catch (const Error& e) {
      log += std::string(to_string(e.kind())) + "\n";
      t.expect(e.kind() == ErrorKind::NonIntegralExponent, where + ": " + e.what());
    }
  }
}

// 7. End-to-end pipeline.
void pipeline(Tally& t, Log& log) {
  const RingShape shape{5, 1, 0};
  for (int gap : {2, 1}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SplitInstanceSpec spec;
      spec.shape = shape;
      spec.gap = Rational(gap);
      const auto report = run_pipeline(generate_split_instance(spec, 700 + seed), {});
      const auto j = to_json(report);
      log += j.dump() + "\n";
      const std::string where = tag(gap == 2 ? "gap-2" : "gap-1", seed);
      if (gap == 2) {
        t.expect(report.verdict == Verdict::Witnessed, where + ": " + to_string(report.verdict));
        t.expect(j["reduction"]["r"] == "1/2" && report.witness && report.witness->r == 0.5, where + ": r");
      } else {
        t.expect(report.verdict == Verdict::NoClaim, where + ": " + to_string(report.verdict));
      }
    }
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const int t0 = 1 + static_cast<int>(seed % 4);
    const auto report = run_pipeline(jumping_instance(shape, 10, t0, seed), {});
    log += to_json(report).dump() + "\n";
    const std::string where = tag("jumping", seed);
    t.expect(report.verdict == Verdict::Aborted && report.failure && report.failure->stage == "analyze",
             where + ": not aborted at analysis");
    // Slopes (1/2, 1/2) at T = [t0], (0, 1) elsewhere; the witness is a point disagreeing with the first one scanned.
    const auto& scan = report.analysis;
    t.expect(scan.witness.has_value(), where + ": no witness point");
    if (!scan.witness) continue;
    const auto at = [&](const PointSpec& x) {
      for (const auto& [y, np] : scan.per_point)
        if (y == x) return np.slopes;
      return std::vector<Rational>{};
    };
    const std::vector<Rational> jump{Rational(1, 2), Rational(1, 2)}, generic{Rational(0), Rational(1)};
    t.expect(at(PointSpec{{t0}}) == jump, where + ": slopes at the jump");
    t.expect(at(*scan.witness) != at(scan.per_point.front().first), where + ": witness agrees with the first point");
    t.expect(at(*scan.witness) == (scan.witness->coords[0] == t0 ? jump : generic), where + ": witness slopes");
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool report(int id, const char* title, const Tally& t, double secs, double limit) {
  const bool ok = t.failures == 0 && secs < limit;
  std::printf("criterion %d %s  %-58s %7.2f s (limit %.0f s), %d failure(s)\n", id, ok ? "PASS" : "FAIL", title, secs,
              limit, t.failures);
  for (const auto& n : t.notes) std::printf("    %s\n", n.c_str());
  return ok;
}

Log run_three_to_seven(Tally& t3, Tally& t4, Tally& t5, Tally& t6, Tally& t7, std::vector<double>& times) {
  Log log;
  auto start = std::chrono::steady_clock::now();
  splitting(t3, t4, log);
  times.push_back(seconds_since(start));
  start = std::chrono::steady_clock::now();
  regularization(t5, log);
  times.push_back(seconds_since(start));
  start = std::chrono::steady_clock::now();
  exponents(t6, log);
  times.push_back(seconds_since(start));
  start = std::chrono::steady_clock::now();
  pipeline(t7, log);
  times.push_back(seconds_since(start));
  return log;
}

}  // namespace

int main() {
  const auto suite = std::chrono::steady_clock::now();
  bool ok = true;

  Tally t1;
  auto start = std::chrono::steady_clock::now();
  ring_laws(t1);
  ok &= report(1, "ring laws and operator identities", t1, seconds_since(start), 5);

  Tally t2;
  start = std::chrono::steady_clock::now();
  witness_transforms(t2);
  ok &= report(2, "witness transforms", t2, seconds_since(start), 5);

  Tally t3, t4, t5, t6, t7;
  std::vector<double> times;
  const Log first = run_three_to_seven(t3, t4, t5, t6, t7, times);
  ok &= report(3, "splitting correctness (50 rank-2, 20 rank-3)", t3, times[0], 60);
  ok &= report(4, "log-decay certification", t4, times[0], 60);
  ok &= report(5, "regularization (50 connections)", t5, times[1], 30);
  ok &= report(6, "exponent rationality (50 valid, 10 corrupted)", t6, times[2], 600);

  Tally r3, r4, r5, r6, r7;
  std::vector<double> again;
  const Log second = run_three_to_seven(r3, r4, r5, r6, r7, again);
  ok &= report(7, "end-to-end pipeline (10 gap-2, 10 gap-1, 5 jumping)", t7, seconds_since(suite), 600);

  Tally t8;
  t8.expect(first == second, "JSON reports differ between runs");
  t8.expect(r3.failures + r4.failures + r5.failures + r6.failures + r7.failures ==
                t3.failures + t4.failures + t5.failures + t6.failures + t7.failures,
            "failure counts differ between runs");
  std::printf("criterion 8 %s  %-58s %zu bytes compared\n", t8.failures == 0 ? "PASS" : "FAIL",
              "determinism of reports for criteria 3-7", first.size());
  for (const auto& n : t8.notes) std::printf("    %s\n", n.c_str());
  ok &= t8.failures == 0;

  std::printf("total %.2f s\n", seconds_since(suite));
  return ok ? 0 : 1;
}
