#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "dpll.hpp"
#include "oim/bench.hpp"
#include "oim/oracle.hpp"

namespace oim::cli {

namespace {

namespace fs = std::filesystem;

struct RunFlags {
  std::string model = "proposed";
  std::string strategy = "none";
  std::string method = "rk4";
  std::size_t trials = 100;
  double t_final = 136.0;
  double dt = 0.01;
  double noise = 0.0;
  double shil_max = 1.0;
  double kappa = 1.0;
  std::uint64_t seed = 0;
  std::string config;
  bool early_stop = false;
  int jobs = 0;
};

void add_run_flags(CLI::App& cmd, RunFlags& f) {
  cmd.add_option("--model", f.model, "Oscillator model")
      ->check(CLI::IsMember({"proposed", "baseline", "kuramoto"}))
      ->capture_default_str();
  cmd.add_option("--strategy", f.strategy, "Binarization strategy")
      ->check(CLI::IsMember({"none", "static", "annealed-shil", "annealed-potential"}))
      ->capture_default_str();
  cmd.add_option("--trials", f.trials, "Independent runs per instance (>= 1)")->capture_default_str();
  cmd.add_option("--t-final", f.t_final, "Simulated time per run")->capture_default_str();
  cmd.add_option("--dt", f.dt, "Integrator step")->capture_default_str();
  cmd.add_option("--method", f.method, "Integrator")
      ->check(CLI::IsMember({"rk4", "euler"}))
      ->capture_default_str();
  cmd.add_option("--noise", f.noise, "Additive complex noise, std per sqrt(time)")->capture_default_str();
  cmd.add_option("--shil-max", f.shil_max, "Final SHIL weight for annealed-shil")->capture_default_str();
  cmd.add_option("--kappa", f.kappa, "Coupling rate of the kuramoto model")->capture_default_str();
  cmd.add_option("--seed", f.seed, "Base seed; all randomness derives from it")->capture_default_str();
  cmd.add_option("--config", f.config,
                 "Potential config file (key = value: quadratic, cubic, shil, scale; default: quadratic = 0 1, cubic = 0 1)");
  cmd.add_flag("--early-stop", f.early_stop,
               "End a trial once its binarized state satisfies every clause (default: score the state at --t-final)");
  cmd.add_option("--jobs", f.jobs, "Worker threads (0 = available parallelism)")->capture_default_str();
}

BenchConfig make_config(const RunFlags& f, std::vector<std::string> instances) {
  if (f.trials < 1) throw CLI::ValidationError("--trials", "must be >= 1");
  BenchConfig c;
  c.instances = std::move(instances);
  c.trials = f.trials;
  c.model = f.model == "baseline"   ? ModelKindTag::BaselineHopf
            : f.model == "kuramoto" ? ModelKindTag::KuramotoPhase
                                    : ModelKindTag::ProposedHopf;
  c.strategy = parse_strategy(f.strategy);
  c.strategy_options.shil_max = f.shil_max;
  if (!f.config.empty()) c.strategy_options.base = read_potential_config(f.config);
  c.kappa = f.kappa;
  c.integrator.method = f.method == "euler" ? Method::Euler : Method::RK4;
  c.integrator.dt = f.dt;
  c.integrator.t_final = f.t_final;
  c.integrator.noise_sigma = f.noise;
  c.base_seed = f.seed;
  c.early_stop = f.early_stop;
  c.validate();
  return c;
}

void set_jobs(int jobs) {
#ifdef _OPENMP
  omp_set_num_threads(jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
#else
  (void)jobs;
#endif
}

std::string dimacs_assignment(const SpinVector& s) {
  std::ostringstream out;
  out << 'v';
  for (std::size_t i = 0; i < s.size(); ++i) out << ' ' << (s.s[i] > 0 ? "" : "-") << i + 1;
  out << " 0";
  return out.str();
}

int cmd_solve(const std::string& file, const RunFlags& flags, const std::string& trace, std::size_t trace_stride,
              std::ostream& out, std::ostream& err) {
  if (!fs::exists(file)) {
    err << "error: file not found: " << file << '\n';
    return kError;
  }
  CnfFormula formula;
  try {
    formula = read_dimacs_file(file);
  } catch (const ParseError& e) {
    err << "error: parse error in " << file << ": " << e.what() << '\n';
    return kError;
  }
  BenchConfig config = make_config(flags, {file});
  set_jobs(flags.jobs);
  const BenchReport report = run_bench(config);
  const InstanceReport& inst = report.instances.at(0);

  std::size_t best = 0;
  std::size_t solved = 0;
  for (std::size_t t = 0; t < inst.trials.size(); ++t) {
    const TrialResult& r = inst.trials[t];
    solved += r.solved;
    if (r.unsat < inst.trials[best].unsat) best = t;
  }
  for (std::size_t t = 0; t < inst.trials.size(); ++t) {
    if (const auto& d = inst.trials[t].divergence) {
      err << "error: divergence in trial " << t << " at t=" << d->t << ", oscillator " << d->index + 1 << ": "
          << d->reason << '\n';
      return kError;
    }
  }
  const TrialResult& r = inst.trials[best];
  out << "c instance " << file << " (" << formula.num_vars() << " vars, " << formula.num_clauses() << " clauses)\n";
  out << "c model " << flags.model << ", strategy " << flags.strategy << ", trials " << flags.trials << ", seed "
      << flags.seed << '\n';
  out << "c solved trials " << solved << '/' << inst.trials.size() << '\n';
  out << "c best trial " << best << " unsat " << r.unsat << " energy " << std::setprecision(10)
      << r.continuous_energy << '\n';
  out << "s " << (r.unsat == 0 ? "SATISFIABLE" : "UNKNOWN") << '\n';
  out << dimacs_assignment(r.spins) << '\n';

  if (!trace.empty()) {
    IntegratorConfig ic = config.integrator;
    ic.seed = r.seed;
    ic.sample_stride = std::max<std::size_t>(trace_stride, 1);
    ic.sample_states = true;
    const PuboProblem problem = formula_to_pubo(formula);
    StopPredicate stop;
    if (config.early_stop) {
      ic.stop_check_stride = 10;
      stop = [&formula](const ComplexState& s) { return count_unsat(formula, binarize(s).to_assignment()) == 0; };
    }
    const Trajectory traj = integrate(config.model_kind(), problem, ic, initialize(problem.n(), r.seed), stop);
    std::ofstream tf(trace);
    if (!tf) {
      err << "error: cannot write trace file " << trace << '\n';
      return kError;
    }
    tf << trajectory_csv(traj);
    out << "c trace written to " << trace << '\n';
  }
  return r.unsat == 0 ? kSolved : kUnsolved;
}

int cmd_bench(const std::vector<std::string>& paths, const RunFlags& flags, const std::string& out_dir,
              std::ostream& out, std::ostream& err) {
  const auto files = expand_instance_paths(paths);
  if (files.empty()) {
    err << "error: no instances found\n";
    return kError;
  }
  BenchConfig config = make_config(flags, files);
  config.record_phases = true;
  set_jobs(flags.jobs);
  const BenchReport report = run_bench(config);
  for (const auto& w : report.warnings) err << "warning: skipped " << w << '\n';
  if (report.instances.empty()) {
    err << "error: no readable instances\n";
    return kError;
  }
  write_report_files(report, config, out_dir);
  std::size_t solvable = 0;
  for (const auto& inst : report.instances) solvable += inst.solvable();
  out << "instances " << report.instances.size() << ", skipped " << report.warnings.size() << ", trials "
      << report.total_trials() << '\n';
  out << "solvable " << solvable << '/' << report.instances.size() << " (" << report.solvable_fraction() << ")\n";
  out << "reports written to " << out_dir << '\n';
  return kSolved;
}

int cmd_oracle(const std::string& file, std::ostream& out, std::ostream& err) {
  if (!fs::exists(file)) {
    err << "error: file not found: " << file << '\n';
    return kError;
  }
  const CnfFormula formula = read_dimacs_file(file);
  if (formula.num_vars() > kOracleMaxN) {
    err << "error: oracle limited to " << kOracleMaxN << " variables, instance has " << formula.num_vars() << '\n';
    return kError;
  }
  const GroundState g = brute_force_ground(formula_to_pubo(formula));
  out << "c instance " << file << '\n';
  out << "c min energy " << g.energy << '\n';
  out << "c optima " << g.count << '\n';
  out << "s " << (g.energy == 0.0 ? "SATISFIABLE" : "UNSATISFIABLE") << '\n';
  out << dimacs_assignment(g.argmin) << '\n';
  return kSolved;
}

int cmd_generate(std::uint32_t vars, std::size_t clauses, std::size_t count, std::uint64_t seed,
                 const std::string& out_dir, std::string prefix, bool allow_unsat, std::ostream& out) {
  if (prefix.empty()) prefix = "uf" + std::to_string(vars) + "-";
  fs::create_directories(out_dir);
  std::size_t written = 0;
  for (std::uint64_t attempt = 0; written < count; ++attempt) {
    const CnfFormula f = random_3cnf(vars, clauses, seed * 1000003ULL + attempt);
    if (!allow_unsat && !tools::dpll_solve(f)) continue;
    ++written;
    std::ostringstream name;
    name << prefix << std::setw(2) << std::setfill('0') << written << ".cnf";
    std::ofstream file(fs::path(out_dir) / name.str());
    file << "c uniform random 3-SAT, " << vars << " variables, " << clauses << " clauses\n"
         << "c generator seed " << seed << ", draw " << attempt << (allow_unsat ? "\n" : ", satisfiable\n")
         << serialize_dimacs(f) << "%\n0\n\n";
    out << (fs::path(out_dir) / name.str()).string() << '\n';
  }
  return kSolved;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillator Ising machine simulator for 3-SAT"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  std::string solve_file, trace;
  std::size_t trace_stride = 100;
  auto* solve = app.add_subcommand("solve", "Run trials on one instance; exit 0 solved, 1 unsolved, 2 error");
  solve->add_option("file", solve_file, "DIMACS .cnf file")->required();
  add_run_flags(*solve, solve_flags);
  solve->add_option("--trace", trace, "Write the best trial's trajectory CSV here (default: no trace)");
  solve->add_option("--trace-stride", trace_stride, "Steps between trace rows")->capture_default_str();

  RunFlags bench_flags;
  std::vector<std::string> bench_paths;
  std::string bench_out = "bench_out";
  auto* bench = app.add_subcommand("bench", "Run the trial grid over many instances and write reports");
  bench->add_option("paths", bench_paths, ".cnf files or directories")->required();
  add_run_flags(*bench, bench_flags);
  bench->add_option("--out", bench_out, "Output directory")->capture_default_str();

  std::string oracle_file;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive ground state (n <= 24)");
  oracle->add_option("file", oracle_file, "DIMACS .cnf file")->required();

  std::uint32_t gen_vars = 20;
  std::size_t gen_clauses = 91, gen_count = 10;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instances", gen_prefix;
  bool gen_allow_unsat = false;
  auto* generate = app.add_subcommand("generate", "Write uniform random 3-SAT instances (satisfiable by default)");
  generate->add_option("--vars", gen_vars, "Variables")->capture_default_str();
  generate->add_option("--clauses", gen_clauses, "Clauses")->capture_default_str();
  generate->add_option("--count", gen_count, "Number of instances")->capture_default_str();
  generate->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output directory")->capture_default_str();
  generate->add_option("--prefix", gen_prefix, "File name prefix (default uf<vars>-)");
  generate->add_flag("--allow-unsat", gen_allow_unsat, "Skip the satisfiability filter");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();  // program name
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : kError;
  }

  try {
    if (*solve) return cmd_solve(solve_file, solve_flags, trace, trace_stride, out, err);
    if (*bench) return cmd_bench(bench_paths, bench_flags, bench_out, out, err);
    if (*oracle) return cmd_oracle(oracle_file, out, err);
    if (*generate) {
      return cmd_generate(gen_vars, gen_clauses, gen_count, gen_seed, gen_out, gen_prefix, gen_allow_unsat, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kError;
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace oim::cli
