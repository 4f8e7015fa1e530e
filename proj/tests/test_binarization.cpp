#include <gtest/gtest.h>

#include <numbers>

#include "oim/binarization.hpp"
#include "test_util.hpp"

using namespace oim;
using std::numbers::pi;

TEST(Binarize, SignOfRealPart) {
  EXPECT_EQ(binarize(ComplexState{{cplx(1, 0), cplx(-1, 0)}}).s, (std::vector<std::int8_t>{1, -1}));
  EXPECT_EQ(binarize(ComplexState{{cplx(0.1, 5), cplx(-0.1, -5)}}).s, (std::vector<std::int8_t>{1, -1}));
  EXPECT_EQ(binarize(ComplexState{{cplx(0, 1)}}).s, (std::vector<std::int8_t>{1}));
}

TEST(Sharpness, Examples) {
  const std::vector<double> th{0.0, pi, -pi, 2 * pi};
  const Sharpness s = binarization_sharpness(ComplexState::from_phases(th));
  EXPECT_EQ(s.fraction, 1.0);
  const Sharpness ridge = binarization_sharpness(ComplexState{{cplx(0, 1)}});
  EXPECT_NEAR(ridge.distance[0], pi / 2, 1e-15);
  EXPECT_EQ(ridge.fraction, 0.0);
  EXPECT_EQ(binarization_sharpness(ComplexState::from_phases(std::vector<double>{0.2})).fraction, 1.0);
  EXPECT_THROW(binarization_sharpness(ComplexState{{cplx(0, 0)}}), std::invalid_argument);
}

TEST(Sharpness, UniformPhases) {
  const ComplexState s = initialize(200000, 42);
  EXPECT_NEAR(binarization_sharpness(s).fraction, 0.2 / (pi / 2), 0.005);
}

TEST(Strategy, Names) {
  for (auto s : {Strategy::None, Strategy::StaticPotential, Strategy::AnnealedShil, Strategy::AnnealedPotential}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_THROW(parse_strategy("sideways"), std::invalid_argument);
}

TEST(Strategy, Schedules) {
  StrategyOptions o;
  o.t_final = 100.0;
  o.shil_max = 2.0;
  const SpecSchedule none = strategy_schedule(Strategy::None, o);
  EXPECT_EQ(none.at(0), none.at(100));
  EXPECT_EQ(none.at(0), PotentialSpec::hopf());
  EXPECT_EQ(strategy_schedule(Strategy::StaticPotential, o).at(50), PotentialSpec::binarizing());
  const SpecSchedule ap = strategy_schedule(Strategy::AnnealedPotential, o);
  EXPECT_EQ(ap.at(0), PotentialSpec::hopf());
  EXPECT_EQ(ap.at(100), PotentialSpec::binarizing());
  const SpecSchedule as = strategy_schedule(Strategy::AnnealedShil, o);
  EXPECT_EQ(as.at(0).shil, 0.0);
  EXPECT_DOUBLE_EQ(as.at(50).shil, 1.0);
  EXPECT_DOUBLE_EQ(as.at(100).shil, 2.0);
  EXPECT_EQ(as.at(50).quadratic, PotentialSpec::hopf().quadratic);
}

TEST(Strategy, ApplyToModels) {
  StrategyOptions o;
  ModelKind base;
  base.tag = ModelKindTag::BaselineHopf;
  EXPECT_NO_THROW(apply_strategy(Strategy::None, base, o));
  EXPECT_THROW(apply_strategy(Strategy::AnnealedShil, base, o), std::invalid_argument);
  ModelKind k;
  k.tag = ModelKindTag::KuramotoPhase;
  EXPECT_EQ(apply_strategy(Strategy::StaticPotential, k, o).schedule.at(1.0), PotentialSpec::binarizing());
}

TEST(Strategy, StrongerBinarizationOnSmallInstance) {
  const PuboProblem p = formula_to_pubo(random_3cnf(30, 129, 4));
  StrategyOptions o;
  o.t_final = 60;
  IntegratorConfig cfg;
  cfg.t_final = 60;
  double none = 0, shil = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    none += binarization_sharpness(
                integrate(apply_strategy(Strategy::None, ModelKind{}, o), p, cfg, initialize(30, seed)).final_state)
                .fraction;
    shil += binarization_sharpness(
                integrate(apply_strategy(Strategy::AnnealedShil, ModelKind{}, o), p, cfg, initialize(30, seed)).final_state)
                .fraction;
  }
  EXPECT_LT(none, shil);
}
