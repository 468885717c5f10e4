// Command line front end: solve / maxsat / bounds / generate / verify / bench.
//
// Exit codes follow solver-competition practice for `solve` (10 satisfiable,
// 20 unsatisfiable); everything else exits 0 on success, 1 on runtime errors,
// 2 on usage errors.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "naesat/approx.hpp"
#include "naesat/bounds.hpp"
#include "naesat/covercode.hpp"
#include "naesat/formula.hpp"
#include "naesat/naesolve.hpp"
#include "naesat/oracle.hpp"
#include "naesat/transform.hpp"
#include "naesat/williams.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace naesat;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  std::string config_path;
};

// Optional key=value defaults file; explicit flags win.
void apply_config(GlobalOptions& g) {
  if (g.config_path.empty()) return;
  std::ifstream in(g.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + g.config_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "seed" && !g.seed_given) g.seed = std::stoull(value);
    if (key == "threads") g.threads = std::stoi(value);
  }
}

std::uint64_t env_seed() {
  if (const char* s = std::getenv("NAELAB_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

Instance read_instance(const std::string& path, std::string* raw_text = nullptr) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) fail(errc::malformed_header, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (raw_text) *raw_text = text;
  return parse_dimacs(text);
}

Mode parse_mode(const std::string& s) {
  if (s == "nae") return Mode::nae;
  if (s == "sat") return Mode::sat;
  throw CLI::ValidationError("--mode", "expected nae or sat");
}

std::map<std::string, std::string> parse_kv(const std::string& spec) {
  std::map<std::string, std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("expected key=value in '" + spec + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

// ---------------------------------------------------------------- solve ----

int cmd_solve(const std::string& input, const std::string& mode_str, const std::string& engine_str,
              const std::string& nu_str, const std::string& strategy_str, int restarts,
              const std::string& radius_str, const GlobalOptions& g, bool as_json) {
  const Mode mode = parse_mode(mode_str);
  const Instance instance = read_instance(input);

  std::string engine = engine_str;
  if (engine == "auto") engine = mode == Mode::nae ? "br-dls" : "dpll";

  json rep;
  rep["mode"] = mode_str;
  rep["engine"] = engine;
  rep["seed"] = g.seed;
  rep["vars"] = instance.num_vars();
  rep["clauses"] = instance.clause_count();

  SolveResult result;
  SolveTrace trace;
  if (mode == Mode::nae && instance.has_unit_clause()) {
    // A 1-clause can never be NAE-satisfied.
    rep["note"] = "instance contains a 1-clause";
    trace.engine = "trivial";
    result = std::nullopt;
  } else if (engine == "oracle") {
    result = brute_decide(instance, mode, {}, g.threads);
    trace.engine = "oracle";
  } else if (engine == "dpll") {
    const Instance target = mode == Mode::nae ? to_conjugate_instance(instance) : instance;
    result = dpll(target);
    trace.engine = "dpll";
  } else if (engine == "br-dls") {
    if (mode != Mode::nae) throw CLI::ValidationError("--engine", "br-dls requires --mode nae");
    SolverConfig cfg = SolverConfig::defaults_for(std::max(instance.max_len(), 3));
    if (!nu_str.empty()) cfg.nu = parse_rational(nu_str);
    if (!radius_str.empty()) cfg.ball_radius_fraction = parse_rational(radius_str);
    cfg.dls_strategy =
        strategy_str == "randomized-walk" ? DlsStrategy::randomized_walk : DlsStrategy::covering_code;
    cfg.walk_restarts = restarts;
    cfg.seed = g.seed;
    result = solve_nae(instance, cfg, &trace);
  } else {
    throw CLI::ValidationError("--engine", "expected auto, br-dls, dpll, or oracle");
  }

  bool verified = true;
  if (result) verified = count_satisfied(instance, *result, mode) == instance.clause_count();

  rep["status"] = result ? "satisfiable" : "unsatisfiable";
  if (result) {
    rep["assignment"] = result->to_bits();
    rep["verified"] = verified;
  }
  rep["trace"] = {{"engine", trace.engine},
                  {"pairs", trace.pair_count},
                  {"branches", trace.branches},
                  {"codewords", trace.codewords},
                  {"restarts", trace.restarts_used}};

  if (as_json) {
    std::cout << rep.dump(2) << '\n';
  } else {
    std::cout << "s " << (result ? "SATISFIABLE" : "UNSATISFIABLE") << '\n';
    if (result) {
      std::cout << "v ";
      for (int v = 1; v <= instance.num_vars(); ++v)
        std::cout << (result->get(v) ? v : -v) << ' ';
      std::cout << "0\n";
    }
    std::cout << "c engine=" << trace.engine << " pairs=" << trace.pair_count
              << " branches=" << trace.branches << " codewords=" << trace.codewords << '\n';
  }
  if (result && !verified) {
    std::cerr << "error: produced assignment failed verification\n";
    return kExitError;
  }
  return result ? kExitSat : kExitUnsat;
}

// --------------------------------------------------------------- maxsat ----

int cmd_maxsat(const std::string& input, const std::string& algo, const std::string& mode_str,
               double delta, int restarts, std::optional<int> t_override, bool compare_oracle,
               bool randomized_completion, const GlobalOptions& g, bool as_json) {
  const Mode mode = parse_mode(mode_str);
  const Instance instance = read_instance(input);

  std::optional<std::int64_t> oracle_opt;
  if (compare_oracle) oracle_opt = brute_max(instance, mode, {}, g.threads).optimum;

  json rep;
  rep["algo"] = algo;
  rep["mode"] = mode_str;
  rep["delta"] = delta;
  rep["seed"] = g.seed;

  ApproxResult result;
  if (algo == "randomwalk") {
    if (restarts < 1) throw CLI::ValidationError("--restarts", "need at least one restart");
    result = random_walk_repeat(instance, mode, delta, restarts, g.seed, oracle_opt, g.threads);
  } else if (algo == "reducesolve") {
    ReduceSolveOptions opt;
    opt.t_override = t_override;
    opt.oracle_optimum = oracle_opt;
    opt.randomized_completion = randomized_completion;
    opt.seed = g.seed;
    result = reduce_solve(instance, mode, delta, opt);
  } else if (algo == "williams") {
    const MaxResult mr = exact_max(instance, mode);
    result.assignment = mr.assignment;
    result.achieved = mr.optimum;
    if (oracle_opt && *oracle_opt > 0) {
      result.ratio_vs_oracle = Rational(mr.optimum, *oracle_opt);
      result.ratio_vs_oracle->canonicalize();
    }
  } else if (algo == "oracle") {
    const MaxResult mr = brute_max(instance, mode, {}, g.threads);
    result.assignment = mr.assignment;
    result.achieved = mr.optimum;
    result.ratio_vs_oracle = Rational(1);
  } else {
    throw CLI::ValidationError("--algo", "expected randomwalk, reducesolve, williams, or oracle");
  }

  rep["achieved"] = result.achieved;
  rep["assignment"] = result.assignment.to_bits();
  if (oracle_opt) rep["optimum"] = *oracle_opt;
  if (result.ratio_vs_oracle) rep["ratio"] = to_double(*result.ratio_vs_oracle);
  if (result.delta_achieved) rep["delta_achieved"] = *result.delta_achieved;
  rep["trace"] = {{"t", result.trace.t},
                  {"eliminated_vars", result.trace.eliminated_vars},
                  {"eliminated_clauses", result.trace.eliminated_clauses},
                  {"fe_satisfied", result.trace.fe_satisfied},
                  {"residual_optimum", result.trace.residual_optimum},
                  {"restarts", result.trace.restarts}};

  if (as_json) {
    std::cout << rep.dump(2) << '\n';
  } else {
    std::cout << "achieved " << result.achieved << " of " << instance.clause_count() << " clauses\n";
    if (oracle_opt) std::cout << "optimum " << *oracle_opt << '\n';
    if (result.ratio_vs_oracle)
      std::cout << "ratio " << to_double(*result.ratio_vs_oracle)
                << (result.delta_achieved && *result.delta_achieved ? " (delta met)" : "") << '\n';
    std::cout << "trace t=" << result.trace.t << " |V_e|=" << result.trace.eliminated_vars
              << " |F_e|=" << result.trace.eliminated_clauses << '\n';
  }
  return 0;
}

// --------------------------------------------------------------- bounds ----

int cmd_bounds(const std::string& table, const std::string& curve, const std::string& system,
               bool as_json) {
  if (!table.empty()) {
    if (table != "fig1") throw CLI::ValidationError("--table", "known tables: fig1");
    if (as_json) {
      json rows = json::array();
      for (const auto& r : bounds::fig1_table())
        rows.push_back({{"k", r.k},
                        {"this_work", static_cast<double>(r.this_work)},
                        {"liu2018", static_cast<double>(r.liu)},
                        {"moser_scheder", static_cast<double>(r.moser_scheder)},
                        {"dantsin", static_cast<double>(r.dantsin)},
                        {"ppsz", static_cast<double>(r.ppsz)}});
      std::cout << rows.dump(2) << '\n';
    } else {
      std::cout << bounds::fig1_csv();
    }
    return 0;
  }
  if (!curve.empty()) {
    const auto kv = parse_kv(curve);
    const int k = std::stoi(kv.at("k"));
    const Mode mode = parse_mode(kv.count("mode") ? kv.at("mode") : "nae");
    const int grid = kv.count("grid") ? std::stoi(kv.at("grid")) : 101;
    if (as_json) {
      json rows = json::array();
      for (const auto& p : bounds::curves(k, mode, grid))
        rows.push_back({{"delta", static_cast<double>(p.delta)},
                        {"system_base", static_cast<double>(p.system_base)},
                        {"reduce_solve_base", static_cast<double>(p.reduce_base)},
                        {"hirsch_base", static_cast<double>(p.hirsch)},
                        {"system_le_hirsch", p.dominated}});
      std::cout << rows.dump(2) << '\n';
    } else {
      std::cout << bounds::curves_csv(k, mode, grid);
    }
    return 0;
  }
  if (!system.empty()) {
    const auto kv = parse_kv(system);
    const int k = std::stoi(kv.at("k"));
    const double delta = std::stod(kv.at("delta"));
    const Mode mode = parse_mode(kv.count("mode") ? kv.at("mode") : "nae");
    const bounds::BoundReport rep = bounds::report(k, delta, mode);
    if (as_json) {
      json j;
      j["k"] = k;
      j["delta"] = delta;
      j["mode"] = mode_name(mode);
      for (const auto& [name, value] : rep.quantities) {
        j[name] = static_cast<double>(value);
      }
      json prov;
      for (const auto& [name, p] : rep.provenance) prov[name] = p;
      j["provenance"] = prov;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "quantity,value,provenance\n";
      for (const auto& [name, value] : rep.quantities) {
        std::ostringstream v;
        v.setf(std::ios::fixed);
        v.precision(6);
        v << static_cast<double>(value);
        std::cout << name << ',' << v.str() << ',' << rep.provenance.at(name) << '\n';
      }
    }
    return 0;
  }
  throw CLI::ValidationError("bounds", "pass one of --table, --curve, --system");
}

// ------------------------------------------------------------- generate ----

int cmd_generate(int n, int k, int m, const std::string& gen_mode, const GlobalOptions& g,
                 const std::string& out_path) {
  GenMode mode;
  if (gen_mode == "uniform")
    mode = GenMode::uniform;
  else if (gen_mode == "planted-nae")
    mode = GenMode::planted_nae;
  else
    throw CLI::ValidationError("--mode", "expected uniform or planted-nae");

  const GeneratedInstance gen = random_instance(n, k, m, mode, g.seed);
  std::ostringstream out;
  out << "c generator seed=" << g.seed << " mode=" << gen_mode << '\n';
  if (gen.planted) out << "c planted " << gen.planted->to_bits() << '\n';
  out << emit_dimacs(gen.instance);

  if (out_path.empty() || out_path == "-") {
    std::cout << out.str();
  } else {
    std::ofstream f(out_path);
    if (!f) fail(errc::malformed_header, "cannot write " + out_path);
    f << out.str();
  }
  return 0;
}

// --------------------------------------------------------------- verify ----

struct VerifyContext {
  json checks = json::array();
  bool all_ok = true;

  void record(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
    all_ok &= ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << '\n';
  }
};

void verify_lp(VerifyContext& ctx) {
  for (int k = 3; k <= 16; ++k) {
    const LpSolution closed = bounds::lp_closed_form(k);
    const LpSolution gauss = lp_solve_symmetric(k);
    ctx.record("lp.closed_form_equals_elimination k=" + std::to_string(k), closed == gauss,
               closed == gauss ? "" : "lambda " + closed.lambda.get_str() + " vs " + gauss.lambda.get_str());
    const DistributionCheck chk = check_pair_distribution(PairDistribution::from_lp(closed));
    ctx.record("lp.constraints_exact k=" + std::to_string(k), chk.ok, chk.detail);
  }
}

void verify_solver(VerifyContext& ctx, int trials, std::uint64_t seed) {
  int disagreements = 0;
  std::string first_bad;
  for (int trial = 0; trial < trials; ++trial) {
    Rng meta(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const int k = 3 + static_cast<int>(meta.below(2));
    const int n = 8 + static_cast<int>(meta.below(9));
    const int m = static_cast<int>((k == 3 ? 2.2 : 4.5) * n);
    const auto gen = random_instance(n, k, m, trial % 5 == 0 ? GenMode::planted_nae : GenMode::uniform,
                                     meta.next());
    SolverConfig cfg = SolverConfig::defaults_for(k);
    cfg.seed = seed;
    const SolveResult got = solve_nae(gen.instance, cfg);
    const auto expected = brute_decide(gen.instance, Mode::nae);
    const bool ok =
        got.has_value() == expected.has_value() &&
        (!got || count_satisfied(gen.instance, *got, Mode::nae) == gen.instance.clause_count());
    if (!ok) {
      ++disagreements;
      if (first_bad.empty()) first_bad = "trial " + std::to_string(trial) + ":\n" + emit_dimacs(gen.instance);
    }
  }
  ctx.record("solver.oracle_agreement trials=" + std::to_string(trials), disagreements == 0,
             disagreements == 0 ? "" : std::to_string(disagreements) + " disagreements; " + first_bad);
}

void verify_walk(VerifyContext& ctx, std::uint64_t seed) {
  // Monte-Carlo check of the lambda identity under pi-sampling.
  for (int k = 3; k <= 5; ++k) {
    const PairDistribution dist = PairDistribution::from_lp(bounds::lp_closed_form(k));
    const double lambda = to_double(dist.lambda);
    const int draws = 100000;
    bool ok = true;
    std::string detail;
    for (const auto& [astar, p0] : dist.points) {
      (void)p0;
      // exact second moment for the binomial sigma
      double second = 0;
      for (const auto& [a, p] : dist.points) {
        const int d = std::popcount(a ^ astar);
        second += to_double(p) * std::pow(1.0 / (k - 1), 2 * d);
      }
      const double sigma = std::sqrt(std::max(second - lambda * lambda, 0.0) / draws);
      Rng rng(derive_seed(seed, astar));
      double sum = 0;
      for (int i = 0; i < draws; ++i) {
        const std::uint32_t a = sample_pair_assignment(dist, rng);
        sum += std::pow(1.0 / (k - 1), std::popcount(a ^ astar));
      }
      const double mean = sum / draws;
      if (std::abs(mean - lambda) > 3 * sigma) {
        ok = false;
        detail = "k=" + std::to_string(k) + " a*=" + std::to_string(astar) + " mean=" +
                 std::to_string(mean) + " lambda=" + std::to_string(lambda);
        break;
      }
    }
    ctx.record("walk.lambda_monte_carlo k=" + std::to_string(k), ok, detail);
  }
  // Planted instances: the walk should find (near-)satisfying assignments.
  const auto gen = random_instance(20, 3, 60, GenMode::planted_nae, seed);
  Rng rng(seed);
  int found = 0;
  for (int r = 0; r < 200; ++r)
    if (schoening(gen.instance, Mode::nae, 3 * 20, rng)) ++found;
  ctx.record("walk.planted_success", found > 0, "found " + std::to_string(found) + "/200");
}

int cmd_verify(const std::string& suite, int trials, const GlobalOptions& g, bool as_json) {
  VerifyContext ctx;
  if (suite == "lp" || suite == "all") verify_lp(ctx);
  if (suite == "solver" || suite == "all") verify_solver(ctx, trials, g.seed);
  if (suite == "walk" || suite == "all") verify_walk(ctx, g.seed);
  if (ctx.checks.empty()) throw CLI::ValidationError("--suite", "expected lp, solver, walk, or all");
  if (as_json) std::cout << ctx.checks.dump(2) << '\n';
  std::cout << (ctx.all_ok ? "ALL PASS" : "FAILURES PRESENT") << '\n';
  return ctx.all_ok ? 0 : kExitError;
}

// ----------------------------------------------------------------- bench ----

int cmd_bench(const std::string& suite, const GlobalOptions& g) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };
  std::cout << "name,param,ms\n";
  if (suite == "solve" || suite == "all") {
    for (int n : {12, 16, 20}) {
      const auto gen = random_instance(n, 3, static_cast<int>(2.2 * n), GenMode::uniform, g.seed);
      SolverConfig cfg = SolverConfig::defaults_for(3);
      cfg.seed = g.seed;
      const auto start = clock::now();
      (void)solve_nae(gen.instance, cfg);
      std::cout << "solve_nae,n=" << n << ',' << ms_since(start) << '\n';
    }
  }
  if (suite == "matmul" || suite == "all") {
    for (int dim : {64, 128, 256}) {
      IntMatrix a(dim, dim), b(dim, dim);
      std::uint64_t s = g.seed;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          a.at(i, j) = static_cast<std::int64_t>(splitmix64(s++) % 1000);
          b.at(i, j) = static_cast<std::int64_t>(splitmix64(s++) % 1000);
        }
      auto start = clock::now();
      (void)multiply_naive(a, b);
      std::cout << "matmul_naive,dim=" << dim << ',' << ms_since(start) << '\n';
      start = clock::now();
      (void)multiply_strassen(a, b);
      std::cout << "matmul_strassen,dim=" << dim << ',' << ms_since(start) << '\n';
    }
  }
  if (suite == "williams" || suite == "all") {
    for (int n : {12, 15, 18}) {
      const auto gen = random_instance(n, 3, 3 * n, GenMode::uniform, g.seed);
      const auto start = clock::now();
      (void)exact_max(gen.instance, Mode::nae);
      std::cout << "exact_max,n=" << n << ',' << ms_since(start) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NAE-SAT solving and MAX-NAE-SAT approximation toolkit"};
  app.require_subcommand(1);

  GlobalOptions g;
  g.seed = env_seed();

  // solve
  auto* solve = app.add_subcommand("solve", "decide (NAE-)satisfiability of a DIMACS instance");
  std::string s_input, s_mode = "nae", s_engine = "auto", s_nu, s_strategy = "covering-code", s_radius;
  int s_restarts = 1000;
  bool s_json = false;
  solve->add_option("--input", s_input, "DIMACS file, or - for stdin")->required();
  solve->add_option("--mode", s_mode, "nae|sat");
  solve->add_option("--engine", s_engine, "auto|br-dls|dpll|oracle");
  solve->add_option("--nu", s_nu, "branching threshold (rational, e.g. 1/8)");
  solve->add_option("--dls-strategy", s_strategy, "covering-code|randomized-walk");
  solve->add_option("--restarts", s_restarts, "restarts for the randomized strategy");
  solve->add_option("--radius-fraction", s_radius, "covering ball radius fraction (rational)");
  solve->add_flag("--json", s_json, "machine readable output");

  // maxsat
  auto* maxsat = app.add_subcommand("maxsat", "approximate or exactly solve MAX-(NAE-)SAT");
  std::string m_input, m_algo = "randomwalk", m_mode = "nae";
  double m_delta = 0.9;
  int m_restarts = 100;
  int m_t = -1;
  bool m_compare = false, m_random_completion = false, m_json = false;
  maxsat->add_option("--input", m_input, "DIMACS file, or - for stdin")->required();
  maxsat->add_option("--algo", m_algo, "randomwalk|reducesolve|williams|oracle");
  maxsat->add_option("--mode", m_mode, "nae|sat");
  maxsat->add_option("--delta", m_delta, "target performance ratio");
  maxsat->add_option("--restarts", m_restarts, "walk restarts");
  maxsat->add_option("--t", m_t, "elimination rounds override (reducesolve)");
  maxsat->add_flag("--compare-oracle", m_compare, "compute the exact optimum for the ratio");
  maxsat->add_flag("--randomized-completion", m_random_completion,
                   "random instead of derandomized completion (statistics)");
  maxsat->add_flag("--json", m_json, "machine readable output");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the analytic bounds");
  std::string b_table, b_curve, b_system;
  bool b_json = false;
  bounds_cmd->add_option("--table", b_table, "fig1");
  bounds_cmd->add_option("--curve", b_curve, "k=K,mode=M,grid=N");
  bounds_cmd->add_option("--system", b_system, "k=K,delta=D[,mode=M]");
  bounds_cmd->add_flag("--json", b_json, "machine readable output");

  // generate
  auto* generate = app.add_subcommand("generate", "emit a random instance in DIMACS format");
  int g_n = 20, g_k = 3, g_m = 44;
  std::string g_mode = "uniform", g_out;
  generate->add_option("--n", g_n, "variables")->required();
  generate->add_option("--k", g_k, "clause length")->required();
  generate->add_option("--m", g_m, "clauses")->required();
  generate->add_option("--mode", g_mode, "uniform|planted-nae");
  generate->add_option("--out", g_out, "output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the self-check batteries");
  std::string v_suite = "all";
  int v_trials = 200;
  bool v_json = false;
  verify->add_option("--suite", v_suite, "lp|solver|walk|all");
  verify->add_option("--trials", v_trials, "solver-suite trial count");
  verify->add_flag("--json", v_json, "machine readable output");

  // bench
  auto* bench = app.add_subcommand("bench", "small timing harness (CSV)");
  std::string bench_suite = "all";
  bench->add_option("--suite", bench_suite, "solve|matmul|williams|all");

  for (auto* sub : {solve, maxsat, bounds_cmd, generate, verify, bench}) {
    sub->add_option("--seed", g.seed, "random seed (default: NAELAB_SEED or 0)")
        ->each([&g](const std::string&) { g.seed_given = true; });
    sub->add_option("--threads", g.threads, "worker threads where supported");
    sub->add_option("--config", g.config_path, "key=value defaults file");
  }

  try {
    app.parse(argc, argv);
    apply_config(g);
    if (solve->parsed())
      return cmd_solve(s_input, s_mode, s_engine, s_nu, s_strategy, s_restarts, s_radius, g, s_json);
    if (maxsat->parsed())
      return cmd_maxsat(m_input, m_algo, m_mode, m_delta, m_restarts,
                        m_t >= 0 ? std::optional<int>(m_t) : std::nullopt, m_compare,
                        m_random_completion, g, m_json);
    if (bounds_cmd->parsed()) return cmd_bounds(b_table, b_curve, b_system, b_json);
    if (generate->parsed()) return cmd_generate(g_n, g_k, g_m, g_mode, g, g_out);
    if (verify->parsed()) return cmd_verify(v_suite, v_trials, g, v_json);
    if (bench->parsed()) return cmd_bench(bench_suite, g);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 2;
}
