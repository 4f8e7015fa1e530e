#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oim/potentials.hpp"
#include "oim/pubo.hpp"

namespace oim {

/// f(z) = (lambda + i omega) z + rho z |z|^2. The limit cycle has unit
/// amplitude, so rho = -lambda. With `enabled` false, f = 0 and the model is
/// the bare gradient flow dz/dt = -(dH/dz)^*.
struct LocalDynamicsParams {
  double lambda = 1.0;
  double rho = -1.0;
  double omega = 0.0;
  bool enabled = true;

  static LocalDynamicsParams off() { return {0.0, 0.0, 0.0, false}; }

  void validate() const;
  cplx operator()(cplx z) const;
  /// V with f(z) = -dV/dz^* (omega = 0): V = -lambda |z|^2 - (rho/2) |z|^4.
  double potential(cplx z) const;
};

/// Scalar ramp from start_value to end_value over [t_start, t_end], clamped
/// outside the window.
struct Schedule {
  enum class Kind { Constant, LinearRamp };
  Kind kind = Kind::Constant;
  double start_value = 0.0;
  double end_value = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  static Schedule constant(double v) { return {Kind::Constant, v, v, 0.0, 0.0}; }
  static Schedule ramp(double from, double to, double t0, double t1) {
    return {Kind::LinearRamp, from, to, t0, t1};
  }
  double at(double t) const;
};

/// Time-dependent PotentialSpec: lerp(start, end, mix.at(t)) with mix in [0, 1].
struct SpecSchedule {
  PotentialSpec start = PotentialSpec::hopf();
  PotentialSpec end = PotentialSpec::hopf();
  Schedule mix = Schedule::constant(0.0);

  static SpecSchedule fixed(const PotentialSpec& s) { return {s, s, Schedule::constant(0.0)}; }
  PotentialSpec at(double t) const;
  bool is_static() const { return start == end; }
};

enum class ModelKindTag { ProposedHopf, BaselineHopf, KuramotoPhase };

struct ModelKind {
  ModelKindTag tag = ModelKindTag::ProposedHopf;
  SpecSchedule schedule;
  LocalDynamicsParams local;
  /// Coupling rate of the phase model, d theta/dt = -kappa dH/dtheta.
  double kappa = 1.0;
};

enum class Method { Euler, RK4 };

struct IntegratorConfig {
  Method method = Method::RK4;
  double dt = 0.01;
  double t_final = 136.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  /// Record an energy sample every `sample_stride` steps (0: first and last only).
  std::size_t sample_stride = 0;
  bool sample_states = false;
  /// Evaluate `stop` every this many steps (0: never).
  std::size_t stop_check_stride = 0;

  void validate() const;
};

struct Sample {
  double t = 0.0;
  /// Model energy at the scheduled spec: H for the proposed model, Re(H)
  /// for the baseline, the phase energy for the Kuramoto model.
  double energy = 0.0;
  /// Im(H) for the baseline, 0 otherwise.
  double energy_imag = 0.0;
  /// energy + sum_i V(z_i), the Lyapunov function of the full Hopf flow.
  double lyapunov = 0.0;
  std::vector<cplx> state;  // only with sample_states
};

struct Divergence {
  double t = 0.0;
  std::size_t index = 0;
  std::string reason;
};

struct Trajectory {
  std::vector<Sample> samples;
  ComplexState final_state;  // last finite state
  double t_end = 0.0;
  std::size_t steps = 0;
  bool stopped_early = false;
  std::optional<Divergence> divergence;
};

enum class InitMode { RandomPhaseUnitAmp, SmallRandom };

/// Deterministic in `seed`.
ComplexState initialize(std::size_t n, std::uint64_t seed, InitMode mode = InitMode::RandomPhaseUnitAmp);

/// dz/dt = f(z) - (dH/dz)^*.
void rhs_proposed(const PuboProblem& problem, const PotentialSpec& spec, std::span<const cplx> z,
                  const LocalDynamicsParams& params, std::span<cplx> out);

/// Holomorphic H(z) = constant + sum h z + sum J z z + sum P z z z.
cplx baseline_energy(const PuboProblem& problem, std::span<const cplx> z);
/// Ordinary complex derivative dH/dz_i of baseline_energy.
void baseline_gradient(const PuboProblem& problem, std::span<const cplx> z, std::span<cplx> out);
/// dz/dt = f(z) - dH/dz.
void rhs_baseline(const PuboProblem& problem, std::span<const cplx> z, const LocalDynamicsParams& params,
                  std::span<cplx> out);

/// d theta/dt = -kappa dH/dtheta with H = phase_energy under `spec`
/// (including its SHIL term, giving -kappa * shil * sin(2 theta)).
void rhs_kuramoto(const PuboProblem& problem, const PotentialSpec& spec, std::span<const double> theta,
                  double kappa, std::span<double> out);

/// Phase velocity of a Hopf state: d theta_i/dt = -Im(zdot_i / z_i).
std::vector<double> phase_velocity(std::span<const cplx> z, std::span<const cplx> zdot);

/// Returns true to stop the run early.
using StopPredicate = std::function<bool(const ComplexState&)>;

/// Fixed-step integration. The potential schedule is evaluated at step start.
/// A non-finite state or |z_i| > 10 ends the run with `divergence` set.
/// For the Kuramoto model the state is carried as phases and reported as
/// z = exp(-i theta).
Trajectory integrate(const ModelKind& model, const PuboProblem& problem, const IntegratorConfig& config,
                     const ComplexState& initial, const StopPredicate& stop = {});

/// Trajectory samples as CSV: t,energy,energy_imag,lyapunov[,theta_i...,amp_i...].
std::string trajectory_csv(const Trajectory& traj);

}  // namespace oim
