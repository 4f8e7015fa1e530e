#include "oim/binarization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oim {

SpinVector binarize(const ComplexState& state) {
  SpinVector s;
  s.s.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) s.s[i] = state.z[i].real() < 0.0 ? -1 : 1;
  return s;
}

Sharpness binarization_sharpness(const ComplexState& state) {
  Sharpness out;
  out.distance.resize(state.size());
  std::size_t close = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const cplx z = state.z[i];
    if (z == cplx{}) throw std::invalid_argument("zero amplitude at oscillator " + std::to_string(i));
    // |arg| in [0, pi]; distance to the nearer of 0 and pi.
    const double a = std::abs(std::arg(z));
    const double d = std::min(a, std::numbers::pi - a);
    out.distance[i] = d;
    if (d <= kSharpnessRadius) ++close;
  }
  out.fraction = state.size() ? static_cast<double>(close) / static_cast<double>(state.size()) : 1.0;
  return out;
}

Strategy parse_strategy(const std::string& name) {
  if (name == "none") return Strategy::None;
  if (name == "static") return Strategy::StaticPotential;
  if (name == "annealed-shil") return Strategy::AnnealedShil;
  if (name == "annealed-potential") return Strategy::AnnealedPotential;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::StaticPotential: return "static";
    case Strategy::AnnealedShil: return "annealed-shil";
    case Strategy::AnnealedPotential: return "annealed-potential";
  }
  return "?";
}

SpecSchedule strategy_schedule(Strategy strategy, const StrategyOptions& options) {
  const PotentialSpec base = options.base;
  const Schedule ramp = Schedule::ramp(0.0, 1.0, 0.0, options.t_final);
  switch (strategy) {
    case Strategy::None:
      return SpecSchedule::fixed(base);
    case Strategy::StaticPotential: {
      PotentialSpec s = PotentialSpec::binarizing();
      s.scale = base.scale;
      return SpecSchedule::fixed(s);
    }
    case Strategy::AnnealedShil: {
      if (!(options.shil_max >= 0)) throw std::invalid_argument("shil_max must be >= 0");
      PotentialSpec start = base, end = base;
      start.shil = 0.0;
      end.shil = options.shil_max;
      return {start, end, ramp};
    }
    case Strategy::AnnealedPotential: {
      PotentialSpec end = PotentialSpec::binarizing();
      end.scale = base.scale;
      end.shil = base.shil;
      return {base, end, ramp};
    }
  }
  throw std::invalid_argument("unknown strategy");
}

ModelKind apply_strategy(Strategy strategy, ModelKind model, const StrategyOptions& options) {
  if (model.tag == ModelKindTag::BaselineHopf && strategy != Strategy::None) {
    throw std::invalid_argument("strategy '" + to_string(strategy) + "' needs a Wirtinger-potential model");
  }
  model.schedule = strategy_schedule(strategy, options);
  return model;
}

}  // namespace oim
