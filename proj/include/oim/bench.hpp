#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oim/binarization.hpp"
#include "oim/cnf.hpp"
#include "oim/dynamics.hpp"

namespace oim {

struct BenchConfig {
  std::vector<std::string> instances;
  std::size_t trials = 100;
  ModelKindTag model = ModelKindTag::ProposedHopf;
  Strategy strategy = Strategy::None;
  StrategyOptions strategy_options;
  LocalDynamicsParams local;
  double kappa = 1.0;
  IntegratorConfig integrator;
  std::uint64_t base_seed = 0;
  /// End a trial as soon as its binarized state satisfies every clause
  /// (checked every `integrator.stop_check_stride` steps, default 10). Off by
  /// default: a trial is scored by its final state, and a wandering trajectory
  /// can pass through a satisfying assignment without settling there.
  bool early_stop = false;
  /// Keep final phases of every trial (phases.csv).
  bool record_phases = false;

  void validate() const;
  /// Model with the strategy applied and strategy t_final synced.
  ModelKind model_kind() const;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::size_t unsat = 0;
  double continuous_energy = 0.0;
  bool solved = false;
  bool diverged = false;
  double t_end = 0.0;
  double sharpness = 0.0;
  double wall_seconds = 0.0;
  SpinVector spins;
  std::optional<Divergence> divergence;
  std::vector<double> final_phases;

  /// Compares everything except wall time.
  bool same_outcome(const TrialResult& o) const;
};

struct InstanceReport {
  std::string path;
  std::uint32_t num_vars = 0;
  std::size_t num_clauses = 0;
  std::vector<TrialResult> trials;

  bool solvable() const;
  double solved_fraction() const;
};

struct BenchReport {
  std::vector<InstanceReport> instances;
  std::vector<std::string> warnings;  // unreadable or unparsable instances, skipped

  std::size_t total_trials() const;
  /// Fraction of instances with at least one solved trial.
  double solvable_fraction() const;
  /// Final unsat counts of every trial, instance-major.
  std::vector<double> final_energies() const;
  bool same_outcome(const BenchReport& o) const;
};

/// Per-trial seed derived from the base seed, instance and trial indices.
std::uint64_t trial_seed(std::uint64_t base, std::size_t instance, std::size_t trial);

/// One trial from a given seed: random unit-amplitude phases, integrate,
/// binarize, count unsatisfied clauses.
TrialResult run_trial(const CnfFormula& formula, const PuboProblem& problem, const ModelKind& model,
                      const BenchConfig& config, std::uint64_t seed);

/// Instance x trial grid, OpenMP work-shared.
BenchReport run_bench(const BenchConfig& config);
/// Same grid evaluated in a plain serial loop; reference for run_bench.
BenchReport run_bench_serial(const BenchConfig& config);

enum class Statistic { Mean, Fraction };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Percentile bootstrap interval. Fraction requires samples in {0, 1}.
Interval bootstrap_ci(const std::vector<double>& samples, Statistic statistic, std::size_t resamples = 10000,
                      double level = 0.99, std::uint64_t seed = 0);

struct CdfPoint {
  double level;
  double fraction;
};

/// Cumulative fraction of samples at or below each distinct level.
std::vector<CdfPoint> energy_cdf(const std::vector<double>& energies);
std::vector<CdfPoint> energy_cdf(const BenchReport& report);

struct HistogramBin {
  double level;
  std::size_t count;
};
std::vector<HistogramBin> energy_histogram(const BenchReport& report);

void to_json(nlohmann::json& j, const BenchReport& r);

/// Writes report.json, summary.csv, cdf.csv, hist.csv and phases.csv into `dir`.
void write_report_files(const BenchReport& report, const BenchConfig& config, const std::string& dir);
std::string summary_csv(const BenchReport& report);
std::string cdf_csv(const BenchReport& report);
std::string hist_csv(const BenchReport& report);
std::string phases_csv(const BenchReport& report);

/// Expands directories to their *.cnf files (sorted); files pass through.
std::vector<std::string> expand_instance_paths(const std::vector<std::string>& paths);

}  // namespace oim
