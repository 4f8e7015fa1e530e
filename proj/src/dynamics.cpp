#include "oim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace oim {

void LocalDynamicsParams::validate() const {
  if (!enabled) return;
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be > 0");
  if (!(rho < 0)) throw std::invalid_argument("rho must be < 0");
  if (std::abs(lambda + rho) > 1e-12) {
    throw std::invalid_argument("unit-amplitude limit cycle requires lambda = -rho");
  }
}

cplx LocalDynamicsParams::operator()(cplx z) const {
  if (!enabled) return 0.0;
  return cplx(lambda, omega) * z + rho * z * std::norm(z);
}

double LocalDynamicsParams::potential(cplx z) const {
  if (!enabled) return 0.0;
  const double r2 = std::norm(z);
  return -lambda * r2 - 0.5 * rho * r2 * r2;
}

double Schedule::at(double t) const {
  if (kind == Kind::Constant || t_end <= t_start) {
    if (kind == Kind::LinearRamp && t >= t_end) return end_value;
    return start_value;
  }
  const double f = std::clamp((t - t_start) / (t_end - t_start), 0.0, 1.0);
  return start_value + (end_value - start_value) * f;
}

PotentialSpec SpecSchedule::at(double t) const {
  if (is_static()) return start;
  return PotentialSpec::lerp(start, end, std::clamp(mix.at(t), 0.0, 1.0));
}

void IntegratorConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(t_final >= dt)) throw std::invalid_argument("t_final must be >= dt");
  if (!(noise_sigma >= 0)) throw std::invalid_argument("noise_sigma must be >= 0");
}

ComplexState initialize(std::size_t n, std::uint64_t seed, InitMode mode) {
  if (n == 0) throw std::invalid_argument("initialize: n must be >= 1");
  std::mt19937_64 rng(seed);
  ComplexState s;
  s.z.resize(n);
  if (mode == InitMode::RandomPhaseUnitAmp) {
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    for (auto& v : s.z) {
      const double t = phase(rng);
      v = cplx(std::cos(t), -std::sin(t));
    }
  } else {
    std::uniform_real_distribution<double> coord(-0.1, 0.1);
    for (auto& v : s.z) {
      const double re = coord(rng);
      v = cplx(re, coord(rng));
    }
  }
  return s;
}

void rhs_proposed(const PuboProblem& problem, const PotentialSpec& spec, std::span<const cplx> z,
                  const LocalDynamicsParams& params, std::span<cplx> out) {
  wirtinger_gradient(problem, spec, z, out);
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = params(z[i]) - std::conj(out[i]);
}

cplx baseline_energy(const PuboProblem& problem, std::span<const cplx> z) {
  if (z.size() != problem.n()) throw std::invalid_argument("state length mismatch");
  cplx e = problem.constant();
  for (std::uint32_t i = 0; i < problem.n(); ++i) e += problem.linear()[i] * z[i];
  for (const auto& t : problem.pairs()) e += t.c * z[t.i] * z[t.j];
  for (const auto& t : problem.triples()) e += t.c * z[t.i] * z[t.j] * z[t.k];
  return e;
}

void baseline_gradient(const PuboProblem& problem, std::span<const cplx> z, std::span<cplx> out) {
  if (z.size() != problem.n() || out.size() != problem.n()) {
    throw std::invalid_argument("state length mismatch");
  }
  for (std::uint32_t i = 0; i < problem.n(); ++i) out[i] = problem.linear()[i];
  for (const auto& t : problem.pairs()) {
    out[t.i] += t.c * z[t.j];
    out[t.j] += t.c * z[t.i];
  }
  for (const auto& t : problem.triples()) {
    out[t.i] += t.c * z[t.j] * z[t.k];
    out[t.j] += t.c * z[t.i] * z[t.k];
    out[t.k] += t.c * z[t.i] * z[t.j];
  }
}

void rhs_baseline(const PuboProblem& problem, std::span<const cplx> z, const LocalDynamicsParams& params,
                  std::span<cplx> out) {
  baseline_gradient(problem, z, out);
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = params(z[i]) - out[i];
}

void rhs_kuramoto(const PuboProblem& problem, const PotentialSpec& spec, std::span<const double> theta,
                  double kappa, std::span<double> out) {
  phase_gradient(problem, spec, theta, out);
  for (double& v : out) v *= -kappa;
}

std::vector<double> phase_velocity(std::span<const cplx> z, std::span<const cplx> zdot) {
  std::vector<double> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) v[i] = -(zdot[i] / z[i]).imag();
  return v;
}

namespace {

template <class T>
struct Stepper {
  std::vector<T> k1, k2, k3, k4, w;

  explicit Stepper(std::size_t n) : k1(n), k2(n), k3(n), k4(n), w(n) {}

  template <class Rhs>
  void step(Method method, std::vector<T>& y, double dt, Rhs&& rhs) {
    const std::size_t n = y.size();
    rhs(y, k1);
    if (method == Method::Euler) {
      for (std::size_t i = 0; i < n; ++i) y[i] += dt * k1[i];
      return;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + (0.5 * dt) * k1[i];
    rhs(w, k2);
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + (0.5 * dt) * k2[i];
    rhs(w, k3);
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + dt * k3[i];
    rhs(w, k4);
    for (std::size_t i = 0; i < n; ++i) y[i] += (dt / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  }
};

constexpr double kDivergenceAmplitude = 10.0;

std::optional<Divergence> check_state(std::span<const cplx> z, double t) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) {
      return Divergence{t, i, "non-finite state"};
    }
    if (std::abs(z[i]) > kDivergenceAmplitude) {
      return Divergence{t, i, "amplitude exceeded 10"};
    }
  }
  return std::nullopt;
}

std::optional<Divergence> check_state(std::span<const double> theta, double t) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i])) return Divergence{t, i, "non-finite phase"};
  }
  return std::nullopt;
}

Sample hopf_sample(const ModelKind& model, const PuboProblem& problem, std::span<const cplx> z, double t,
                   bool keep_state) {
  Sample s;
  s.t = t;
  double local = 0.0;
  for (const cplx& v : z) local += model.local.potential(v);
  if (model.tag == ModelKindTag::BaselineHopf) {
    const cplx e = baseline_energy(problem, z);
    s.energy = e.real();
    s.energy_imag = e.imag();
  } else {
    s.energy = potential_energy(problem, model.schedule.at(t), z);
  }
  s.lyapunov = s.energy + local;
  if (keep_state) s.state.assign(z.begin(), z.end());
  return s;
}

Sample phase_sample(const ModelKind& model, const PuboProblem& problem, std::span<const double> theta,
                    double t, bool keep_state) {
  Sample s;
  s.t = t;
  s.energy = phase_energy(problem, model.schedule.at(t), theta);
  s.lyapunov = s.energy;
  if (keep_state) s.state = ComplexState::from_phases(theta).z;
  return s;
}

// Shared stepping loop. `State` is the integrated vector (complex or phase),
// `Step` advances it by one step from time t, `Sampler` builds a Sample,
// `ToComplex` converts for the stop predicate and final state.
template <class State, class Step, class Sampler, class ToComplex>
Trajectory run_loop(const IntegratorConfig& config, State y, Step&& step, Sampler&& sampler,
                    ToComplex&& to_complex, const StopPredicate& stop) {
  Trajectory traj;
  const auto steps = static_cast<std::size_t>(std::llround(config.t_final / config.dt));
  std::mt19937_64 noise_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise_scale = config.noise_sigma * std::sqrt(config.dt);

  traj.samples.push_back(sampler(y, 0.0));
  State prev = y;
  double t = 0.0;
  std::size_t k = 0;
  for (; k < steps; ++k) {
    t = static_cast<double>(k) * config.dt;
    prev = y;
    step(y, t);
    if (noise_scale > 0.0) {
      for (auto& v : y) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, cplx>) {
          const double re = normal(noise_rng);
          v += (noise_scale / std::numbers::sqrt2) * cplx(re, normal(noise_rng));
        } else {
          v += noise_scale * normal(noise_rng);
        }
      }
    }
    t = static_cast<double>(k + 1) * config.dt;
    if (auto div = check_state(y, t)) {
      traj.divergence = div;
      y = prev;
      t = static_cast<double>(k) * config.dt;
      break;
    }
    const bool last = (k + 1 == steps);
    if (config.sample_stride > 0 && (k + 1) % config.sample_stride == 0 && !last) {
      traj.samples.push_back(sampler(y, t));
    }
    if (stop && config.stop_check_stride > 0 && (k + 1) % config.stop_check_stride == 0 && !last) {
      if (stop(to_complex(y))) {
        traj.stopped_early = true;
        ++k;
        break;
      }
    }
  }
  traj.steps = std::min(k, steps);
  traj.t_end = t;
  if (traj.samples.back().t != t) traj.samples.push_back(sampler(y, t));
  traj.final_state = to_complex(y);
  return traj;
}

}  // namespace

Trajectory integrate(const ModelKind& model, const PuboProblem& problem, const IntegratorConfig& config,
                     const ComplexState& initial, const StopPredicate& stop) {
  config.validate();
  if (initial.size() != problem.n()) throw std::invalid_argument("initial state length != n");
  model.schedule.start.validate();
  model.schedule.end.validate();
  const std::size_t n = problem.n();
  const bool keep = config.sample_states;

  if (model.tag == ModelKindTag::KuramotoPhase) {
    if (!(model.kappa > 0)) throw std::invalid_argument("kappa must be > 0");
    Stepper<double> stepper(n);
    auto step = [&](std::vector<double>& theta, double t) {
      const PotentialSpec spec = model.schedule.at(t);
      stepper.step(config.method, theta, config.dt, [&](const std::vector<double>& y, std::vector<double>& out) {
        rhs_kuramoto(problem, spec, y, model.kappa, out);
      });
    };
    auto sampler = [&](const std::vector<double>& theta, double t) {
      return phase_sample(model, problem, theta, t, keep);
    };
    auto to_complex = [](const std::vector<double>& theta) { return ComplexState::from_phases(theta); };
    return run_loop(config, initial.phases(), step, sampler, to_complex, stop);
  }

  model.local.validate();
  Stepper<cplx> stepper(n);
  const bool baseline = model.tag == ModelKindTag::BaselineHopf;
  auto step = [&](std::vector<cplx>& z, double t) {
    if (baseline) {
      stepper.step(config.method, z, config.dt, [&](const std::vector<cplx>& y, std::vector<cplx>& out) {
        rhs_baseline(problem, y, model.local, out);
      });
      return;
    }
    const PotentialSpec spec = model.schedule.at(t);
    stepper.step(config.method, z, config.dt, [&](const std::vector<cplx>& y, std::vector<cplx>& out) {
      rhs_proposed(problem, spec, y, model.local, out);
    });
  };
  auto sampler = [&](const std::vector<cplx>& z, double t) { return hopf_sample(model, problem, z, t, keep); };
  auto to_complex = [](const std::vector<cplx>& z) { return ComplexState{z}; };
  return run_loop(config, initial.z, step, sampler, to_complex, stop);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  const std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().state.size();
  out << "t,energy,energy_imag,lyapunov";
  for (std::size_t i = 0; i < n; ++i) out << ",theta_" << i;
  for (std::size_t i = 0; i < n; ++i) out << ",amp_" << i;
  out << '\n';
  for (const Sample& s : traj.samples) {
    out << s.t << ',' << s.energy << ',' << s.energy_imag << ',' << s.lyapunov;
    if (s.state.size() == n && n > 0) {
      const auto theta = ComplexState{s.state}.phases();
      for (double th : theta) out << ',' << th;
      for (const cplx& v : s.state) out << ',' << std::abs(v);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace oim
