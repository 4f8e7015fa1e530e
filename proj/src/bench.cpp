#include "oim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace oim {

namespace fs = std::filesystem;

void BenchConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  integrator.validate();
  if (model == ModelKindTag::KuramotoPhase && !(kappa > 0)) throw std::invalid_argument("kappa must be > 0");
  if (model != ModelKindTag::KuramotoPhase) local.validate();
  if (model == ModelKindTag::BaselineHopf && strategy != Strategy::None) {
    throw std::invalid_argument("the baseline model only supports strategy 'none'");
  }
}

ModelKind BenchConfig::model_kind() const {
  ModelKind m;
  m.tag = model;
  m.local = local;
  m.kappa = kappa;
  StrategyOptions opts = strategy_options;
  opts.t_final = integrator.t_final;
  return apply_strategy(strategy, m, opts);
}

bool TrialResult::same_outcome(const TrialResult& o) const {
  return seed == o.seed && unsat == o.unsat && continuous_energy == o.continuous_energy && solved == o.solved &&
         diverged == o.diverged && t_end == o.t_end && sharpness == o.sharpness && spins == o.spins && final_phases == o.final_phases;
}

bool InstanceReport::solvable() const {
  return std::any_of(trials.begin(), trials.end(), [](const TrialResult& t) { return t.solved; });
}

double InstanceReport::solved_fraction() const {
  if (trials.empty()) return 0.0;
  const auto solved = std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return t.solved; });
  return static_cast<double>(solved) / static_cast<double>(trials.size());
}

std::size_t BenchReport::total_trials() const {
  std::size_t n = 0;
  for (const auto& inst : instances) n += inst.trials.size();
  return n;
}

double BenchReport::solvable_fraction() const {
  if (instances.empty()) return 0.0;
  const auto solvable = std::count_if(instances.begin(), instances.end(),
                                      [](const InstanceReport& r) { return r.solvable(); });
  return static_cast<double>(solvable) / static_cast<double>(instances.size());
}

std::vector<double> BenchReport::final_energies() const {
  std::vector<double> e;
  e.reserve(total_trials());
  for (const auto& inst : instances) {
    for (const auto& t : inst.trials) e.push_back(static_cast<double>(t.unsat));
  }
  return e;
}

bool BenchReport::same_outcome(const BenchReport& o) const {
  if (instances.size() != o.instances.size() || warnings != o.warnings) return false;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& a = instances[i];
    const auto& b = o.instances[i];
    if (a.path != b.path || a.trials.size() != b.trials.size()) return false;
    for (std::size_t t = 0; t < a.trials.size(); ++t) {
      if (!a.trials[t].same_outcome(b.trials[t])) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct LoadedInstance {
  std::string path;
  CnfFormula formula;
  PuboProblem problem;
};

std::vector<LoadedInstance> load_instances(const BenchConfig& config, std::vector<std::string>& warnings) {
  std::vector<LoadedInstance> out;
  for (const auto& path : config.instances) {
    try {
      CnfFormula f = read_dimacs_file(path);
      PuboProblem p = formula_to_pubo(f);
      out.push_back({path, std::move(f), std::move(p)});
    } catch (const std::exception& e) {
      warnings.push_back(path + ": " + e.what());
    }
  }
  return out;
}

BenchReport run_grid(const BenchConfig& config, bool parallel) {
  config.validate();
  BenchReport report;
  const auto instances = load_instances(config, report.warnings);
  const ModelKind model = config.model_kind();

  report.instances.resize(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto& r = report.instances[i];
    r.path = instances[i].path;
    r.num_vars = instances[i].formula.num_vars();
    r.num_clauses = instances[i].formula.num_clauses();
    r.trials.resize(config.trials);
  }

  const auto total = static_cast<std::int64_t>(instances.size() * config.trials);
  std::exception_ptr failure;
  auto work = [&](std::int64_t cell) {
    const auto inst = static_cast<std::size_t>(cell) / config.trials;
    const auto trial = static_cast<std::size_t>(cell) % config.trials;
    try {
      report.instances[inst].trials[trial] = run_trial(instances[inst].formula, instances[inst].problem, model,
                                                       config, trial_seed(config.base_seed, inst, trial));
    } catch (...) {
#pragma omp critical(oim_bench_failure)
      if (!failure) failure = std::current_exception();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t cell = 0; cell < total; ++cell) work(cell);
  } else {
    for (std::int64_t cell = 0; cell < total; ++cell) work(cell);
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::size_t instance, std::size_t trial) {
  return splitmix64(base ^ ((static_cast<std::uint64_t>(instance) << 32) | static_cast<std::uint64_t>(trial)));
}

TrialResult run_trial(const CnfFormula& formula, const PuboProblem& problem, const ModelKind& model,
                      const BenchConfig& config, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  IntegratorConfig ic = config.integrator;
  ic.seed = seed;
  ic.sample_states = false;
  StopPredicate stop;
  if (config.early_stop) {
    if (ic.stop_check_stride == 0) ic.stop_check_stride = 10;
    stop = [&formula](const ComplexState& s) { return count_unsat(formula, binarize(s).to_assignment()) == 0; };
  }
  const Trajectory traj = integrate(model, problem, ic, initialize(problem.n(), seed), stop);

  TrialResult r;
  r.seed = seed;
  r.spins = binarize(traj.final_state);
  r.unsat = count_unsat(formula, r.spins.to_assignment());
  r.solved = r.unsat == 0;
  r.diverged = traj.divergence.has_value();
  r.divergence = traj.divergence;
  r.continuous_energy = traj.samples.back().energy;
  r.t_end = traj.t_end;
  try {
    r.sharpness = binarization_sharpness(traj.final_state).fraction;
  } catch (const std::invalid_argument&) {
    r.sharpness = 0.0;
  }
  if (config.record_phases) r.final_phases = traj.final_state.phases();
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

BenchReport run_bench(const BenchConfig& config) { return run_grid(config, true); }

BenchReport run_bench_serial(const BenchConfig& config) { return run_grid(config, false); }

Interval bootstrap_ci(const std::vector<double>& samples, Statistic statistic, std::size_t resamples, double level,
                      std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
  if (resamples == 0) throw std::invalid_argument("bootstrap_ci: resamples must be >= 1");
  if (!(level > 0 && level < 1)) throw std::invalid_argument("bootstrap_ci: level must be in (0, 1)");
  if (statistic == Statistic::Fraction) {
    for (double v : samples) {
      if (v != 0.0 && v != 1.0) throw std::invalid_argument("bootstrap_ci: fraction samples must be 0 or 1");
    }
  }
  const std::size_t n = samples.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> stats(resamples);
  for (double& s : stats) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += samples[pick(rng)];
    s = sum / static_cast<double>(n);
  }
  std::sort(stats.begin(), stats.end());
  const double alpha = 1.0 - level;
  const auto b = static_cast<double>(resamples);
  auto lo_idx = static_cast<std::size_t>(std::floor(0.5 * alpha * b));
  auto hi_idx = static_cast<std::size_t>(std::ceil((1.0 - 0.5 * alpha) * b));
  hi_idx = std::clamp<std::size_t>(hi_idx, 1, resamples) - 1;
  lo_idx = std::min(lo_idx, resamples - 1);
  return {stats[lo_idx], stats[hi_idx]};
}

std::vector<CdfPoint> energy_cdf(const std::vector<double>& energies) {
  std::map<double, std::size_t> counts;
  for (double e : energies) ++counts[e];
  std::vector<CdfPoint> cdf;
  std::size_t running = 0;
  for (const auto& [level, c] : counts) {
    running += c;
    cdf.push_back({level, static_cast<double>(running) / static_cast<double>(energies.size())});
  }
  if (!cdf.empty()) cdf.back().fraction = 1.0;
  return cdf;
}

std::vector<CdfPoint> energy_cdf(const BenchReport& report) { return energy_cdf(report.final_energies()); }

std::vector<HistogramBin> energy_histogram(const BenchReport& report) {
  std::map<double, std::size_t> counts;
  for (double e : report.final_energies()) ++counts[e];
  std::vector<HistogramBin> bins;
  for (const auto& [level, c] : counts) bins.push_back({level, c});
  return bins;
}

void to_json(nlohmann::json& j, const BenchReport& r) {
  j = nlohmann::json::object();
  j["solvable_fraction"] = r.solvable_fraction();
  j["warnings"] = r.warnings;
  auto& insts = j["instances"] = nlohmann::json::array();
  for (const auto& inst : r.instances) {
    nlohmann::json ji{{"path", inst.path},
                      {"num_vars", inst.num_vars},
                      {"num_clauses", inst.num_clauses},
                      {"solvable", inst.solvable()},
                      {"solved_fraction", inst.solved_fraction()}};
    auto& trials = ji["trials"] = nlohmann::json::array();
    for (const auto& t : inst.trials) {
      trials.push_back({{"seed", t.seed},
                        {"unsat", t.unsat},
                        {"continuous_energy", t.continuous_energy},
                        {"solved", t.solved},
                        {"diverged", t.diverged},
                        {"t_end", t.t_end},
                        {"sharpness", t.sharpness},
                        {"wall_seconds", t.wall_seconds},
                        {"spins", t.spins.s}});
      if (t.divergence) {
        trials.back()["divergence"] = {{"t", t.divergence->t}, {"index", t.divergence->index},
                                       {"reason", t.divergence->reason}};
      }
    }
    insts.push_back(std::move(ji));
  }
}

std::string summary_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "instance,num_vars,num_clauses,trials,solved_trials,solvable,min_unsat,mean_unsat,mean_sharpness,"
         "diverged_trials\n";
  for (const auto& inst : report.instances) {
    std::size_t solved = 0, diverged = 0, min_unsat = inst.num_clauses;
    double sum_unsat = 0.0, sum_sharp = 0.0;
    for (const auto& t : inst.trials) {
      solved += t.solved;
      diverged += t.diverged;
      min_unsat = std::min(min_unsat, t.unsat);
      sum_unsat += static_cast<double>(t.unsat);
      sum_sharp += t.sharpness;
    }
    const auto k = static_cast<double>(std::max<std::size_t>(inst.trials.size(), 1));
    out << inst.path << ',' << inst.num_vars << ',' << inst.num_clauses << ',' << inst.trials.size() << ','
        << solved << ',' << (inst.solvable() ? 1 : 0) << ',' << min_unsat << ',' << sum_unsat / k << ','
        << sum_sharp / k << ',' << diverged << '\n';
  }
  return out.str();
}

std::string cdf_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "energy,cumulative_fraction\n";
  for (const auto& p : energy_cdf(report)) out << p.level << ',' << p.fraction << '\n';
  return out.str();
}

std::string hist_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "energy,count\n";
  for (const auto& b : energy_histogram(report)) out << b.level << ',' << b.count << '\n';
  return out.str();
}

std::string phases_csv(const BenchReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "instance,trial,oscillator,theta\n";
  for (const auto& inst : report.instances) {
    for (std::size_t t = 0; t < inst.trials.size(); ++t) {
      const auto& ph = inst.trials[t].final_phases;
      for (std::size_t i = 0; i < ph.size(); ++i) out << inst.path << ',' << t << ',' << i << ',' << ph[i] << '\n';
    }
  }
  return out.str();
}

void write_report_files(const BenchReport& report, const BenchConfig& config, const std::string& dir) {
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    out << text;
  };
  nlohmann::json j = report;
  j["config"] = {{"trials", config.trials},
                 {"model", config.model == ModelKindTag::ProposedHopf   ? "proposed"
                           : config.model == ModelKindTag::BaselineHopf ? "baseline"
                                                                        : "kuramoto"},
                 {"strategy", to_string(config.strategy)},
                 {"shil_max", config.strategy_options.shil_max},
                 {"method", config.integrator.method == Method::RK4 ? "rk4" : "euler"},
                 {"dt", config.integrator.dt},
                 {"t_final", config.integrator.t_final},
                 {"noise_sigma", config.integrator.noise_sigma},
                 {"base_seed", config.base_seed},
                 {"early_stop", config.early_stop},
                 {"kappa", config.kappa},
                 {"potential",
                  {{"quadratic", config.strategy_options.base.quadratic},
                   {"cubic", config.strategy_options.base.cubic},
                   {"shil", config.strategy_options.base.shil},
                   {"scale", config.strategy_options.base.scale}}}};
  const double frac = report.solvable_fraction();
  if (!report.instances.empty()) {
    std::vector<double> solvable;
    for (const auto& inst : report.instances) solvable.push_back(inst.solvable() ? 1.0 : 0.0);
    const Interval ci = bootstrap_ci(solvable, Statistic::Fraction, 10000, 0.99, config.base_seed);
    j["solvable_fraction_ci99"] = {ci.lo, ci.hi};
    const std::vector<double> energies = report.final_energies();
    if (!energies.empty()) {
      double sum = 0.0;
      for (double e : energies) sum += e;
      const Interval ei = bootstrap_ci(energies, Statistic::Mean, 10000, 0.99, config.base_seed);
      j["mean_unsat"] = sum / static_cast<double>(energies.size());
      j["mean_unsat_ci99"] = {ei.lo, ei.hi};
    }
  }
  j["solvable_fraction"] = frac;
  write("report.json", j.dump(2) + "\n");
  write("summary.csv", summary_csv(report));
  write("cdf.csv", cdf_csv(report));
  write("hist.csv", hist_csv(report));
  write("phases.csv", phases_csv(report));
}

std::vector<std::string> expand_instance_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cnf") files.push_back(entry.path().string());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace oim
