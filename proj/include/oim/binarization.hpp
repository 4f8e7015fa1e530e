#pragma once

#include <string>
#include <vector>

#include "oim/dynamics.hpp"
#include "oim/potentials.hpp"
#include "oim/pubo.hpp"

namespace oim {

/// s_i = sign(Re z_i), with Re z_i = 0 mapped to +1.
SpinVector binarize(const ComplexState& state);

struct Sharpness {
  /// Fraction of oscillators within `kSharpnessRadius` of phase 0 or pi.
  double fraction = 0.0;
  /// Per-oscillator angular distance to the nearer of {0, pi}, in [0, pi/2].
  std::vector<double> distance;
};

inline constexpr double kSharpnessRadius = 0.2;

/// Throws std::invalid_argument if any |z_i| = 0.
Sharpness binarization_sharpness(const ComplexState& state);

enum class Strategy { None, StaticPotential, AnnealedShil, AnnealedPotential };

/// "none", "static", "annealed-shil", "annealed-potential".
Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

struct StrategyOptions {
  double t_final = 136.0;
  /// Final SHIL weight of the annealed-SHIL ramp.
  double shil_max = 1.0;
  /// Replaces hopf() as the starting spec (weights only; used by `none`).
  PotentialSpec base = PotentialSpec::hopf();
};

/// Schedule for a strategy:
///   None              base, static
///   StaticPotential   binarizing(), static
///   AnnealedShil      base with shil ramped 0 -> shil_max over [0, t_final]
///   AnnealedPotential base -> binarizing() over [0, t_final]
SpecSchedule strategy_schedule(Strategy strategy, const StrategyOptions& options);

/// Returns `model` with its schedule replaced by the strategy's. The baseline
/// model has no Wirtinger potential and only accepts Strategy::None.
ModelKind apply_strategy(Strategy strategy, ModelKind model, const StrategyOptions& options);

}  // namespace oim
