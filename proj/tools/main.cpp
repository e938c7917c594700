#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "slopegap/error.hpp"
#include "slopegap/generate.hpp"
#include "slopegap/json_io.hpp"
#include "slopegap/pipeline.hpp"

using namespace slopegap;

namespace {

struct Common {
  std::string in;
  std::string out;
  std::string points = "auto";
  std::uint64_t seed = 0;
  std::int64_t max_window = 0;
};

void add_io(CLI::App* cmd, Common& c, bool input) {
  if (input) cmd->add_option("--in", c.in, "module JSON file")->required();
  cmd->add_option("--out", c.out, "write the JSON result here instead of standard output");
  cmd->add_option("--max-window", c.max_window, "largest exponent magnitude kept in any variable");
}

void add_points(CLI::App* cmd, Common& c) {
  cmd->add_option("--points", c.points, "auto, all, a sample size, or explicit points like 1,2;3,0");
  cmd->add_option("--seed", c.seed, "seed for point sampling");
}

PipelineOptions options_from(const Common& c) {
  PipelineOptions o;
  o.seed = c.seed;
  if (c.points == "auto") return o;
  if (c.points == "all") {
    o.point_limit = std::numeric_limits<std::size_t>::max();
    return o;
  }
  if (c.points.find_first_not_of("0123456789") == std::string::npos) {
    o.point_limit = std::stoull(c.points);
    if (o.point_limit == 0) throw Error(ErrorKind::Parse, "--points sample size must be positive");
    return o;
  }
  std::stringstream all(c.points);
  std::string item;
  while (std::getline(all, item, ';')) {
    PointSpec x;
    std::stringstream coords(item);
    std::string t;
    while (std::getline(coords, t, ',')) {
      try {
        x.coords.push_back(std::stoi(t));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad coordinate \"" + t + "\" in --points");
      }
    }
    o.points.push_back(x);
  }
  return o;
}

SigmaNablaModule load(const Common& c) {
  SigmaNablaModule m = module_from_json(read_json_file(c.in));
  if (c.max_window > 0) m.shape.box = c.max_window;
  return m;
}

void emit(const Common& c, const Json& j, const std::string& text) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  write_json_file(c.out, j);
  std::cout << text;
}

std::string analysis_summary(const ConstancyReport& r) {
  std::ostringstream out;
  out << "newton polygon: " << (r.constant ? "constant " + r.common.to_string() : "not constant") << " over "
      << r.per_point.size() << " points\n";
  if (r.witness) out << "changes at " << r.witness->to_string() << "\n";
  if (r.first_break) out << "first break after " << *r.first_break << " slope(s), gap " << to_string(r.gap) << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slopegap: slope splitting and log-decay certificates for (sigma, nabla)-modules on polyannuli"};
  app.require_subcommand(1);

  Common gen_io;
  int p = 5, N = 10, f = 1, n = 1, m = 0, rank = 2, spread = 1;
  std::string gap = "2";
  bool constant = false;
  std::optional<int> jump;
  auto* gen = app.add_subcommand("generate", "write a random split-shaped module");
  add_io(gen, gen_io, false);
  gen->add_option("--p", p, "prime")->check(CLI::Range(3, 97));
  gen->add_option("--N", N, "absolute precision")->check(CLI::Range(2, 60));
  gen->add_option("--f", f, "Frobenius power")->check(CLI::Range(1, 8));
  gen->add_option("--n", n, "torus variables")->check(CLI::Range(0, kMaxVariables));
  gen->add_option("--m", m, "disk variables")->check(CLI::Range(0, kMaxVariables));
  gen->add_option("--rank", rank, "rank")->check(CLI::Range(2, 6));
  gen->add_option("--gap", gap, "slope of the non-unit block (rational)");
  gen->add_option("--seed", gen_io.seed, "generator seed");
  gen->add_option("--spread", spread, "degree radius of the random change of basis")->check(CLI::Range(0, 16));
  gen->add_flag("--constant", constant, "no T-dependence");
  gen->add_option("--jump", jump, "emit the Newton-polygon jumping instance at T_1 = [t0] instead");

  Common an_io;
  auto* an = app.add_subcommand("analyze", "Newton polygons at degree-one points");
  add_io(an, an_io, true);
  add_points(an, an_io);

  Common sp_io;
  int K = 0;
  std::string split_gap;
  auto* sp = app.add_subcommand("split", "unit-root splitting with decay certificates");
  add_io(sp, sp_io, true);
  add_points(sp, sp_io);
  sp->add_option("--K", K, "iterations (default floor(N / (f s)))");
  sp->add_option("--gap", split_gap, "slope s of the non-unit block (default: first break of the scan)");

  Common pl_io;
  int pl_K = 0;
  auto* pl = app.add_subcommand("pipeline", "analyze, split, regularize and extend");
  add_io(pl, pl_io, true);
  add_points(pl, pl_io);
  pl->add_option("--K", pl_K, "split iterations (default floor(N / (f s)))");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (n + m < 1 || n + m > kMaxVariables) throw Error(ErrorKind::Parse, "need 1 to 4 variables");
      RingShape shape{p, n, m};
      if (gen_io.max_window > 0) shape.box = gen_io.max_window;
      SigmaNablaModule module;
      if (jump) {
        module = jumping_instance(shape, N, *jump, gen_io.seed);
      } else {
        SplitInstanceSpec spec{shape, N, f, rank, parse_rational(gap), constant, spread};
        module = generate_split_instance(spec, gen_io.seed);
      }
      emit(gen_io, to_json(module), "wrote rank " + std::to_string(module.rank()) + " module to " + gen_io.out + "\n");
      return 0;
    }
    if (*an) {
      const auto module = load(an_io);
      const auto report = analyze(module, options_from(an_io));
      emit(an_io, to_json(report), analysis_summary(report));
      return report.constant ? 0 : 3;
    }
    if (*sp) {
      const auto module = load(sp_io);
      Rational s;
      if (!split_gap.empty()) {
        s = parse_rational(split_gap);
      } else {
        const auto scan = analyze(module, options_from(sp_io));
        if (!scan.constant || !scan.first_break)
          throw Error(ErrorKind::NotInShape, "no slope break to split at; pass --gap");
        s = scan.gap;
      }
      const auto st = split_stage(module, s, K);
      Json j = to_json(st.split, st.unit_root);
      j["normalization"] = {{"k1", st.normalized.k1}, {"k2", st.normalized.k2}};
      bool ok = true;
      for (const auto& c : st.split.checks) ok = ok && c.passed;
      for (const auto& c : st.unit_root.checks) ok = ok && c.passed;
      std::ostringstream text;
      text << "split at s = " << to_string(s) << ": K = " << st.split.K << ", order " << st.split.order_achieved
           << ", K' = " << st.unit_root.K_prime << ", c = " << st.split.witness.c << ", checks "
           << (ok ? "passed" : "FAILED") << "\n";
      emit(sp_io, j, text.str());
      return ok ? 0 : 3;
    }
    if (*pl) {
      const auto module = load(pl_io);
      auto options = options_from(pl_io);
      options.K = pl_K;
      const auto report = run_pipeline(module, options);
      emit(pl_io, to_json(report), summary(report));
      return report.exit_code();
    }
  } catch (const Error& e) {
    std::cerr << "slopegap: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return 0;
}
