#include <gtest/gtest.h>

#include <numbers>

#include "oim/potentials.hpp"
#include "test_util.hpp"

using namespace oim;
using std::numbers::pi;

namespace {

std::vector<PotentialSpec> mixtures() {
  PotentialSpec odd;
  odd.quadratic = {0.3, 0.7};
  odd.cubic = {0.6, 0.4};
  odd.shil = 0.8;
  odd.scale = 1.7;
  PotentialSpec shil = PotentialSpec::hopf();
  shil.shil = 1.0;
  return {PotentialSpec::hopf(), PotentialSpec::binarizing(), PotentialSpec::complete(), odd, shil,
          PotentialSpec::lerp(PotentialSpec::hopf(), PotentialSpec::binarizing(), 0.25)};
}

PuboProblem single_pair() {
  PuboProblem p(2);
  p.add_pair(0, 1, 1.0);
  return p;
}

PotentialSpec quad(double w0, double w1) {
  PotentialSpec s;
  s.quadratic = {w0, w1};
  return s;
}

std::vector<cplx> rotate(std::vector<cplx> z, double phi) {
  for (auto& v : z) v *= std::polar(1.0, phi);
  return z;
}

}  // namespace

TEST(PotentialSpec, NamedMixtures) {
  EXPECT_EQ(PotentialSpec::hopf().quadratic, (std::array<double, 2>{0, 1}));
  EXPECT_EQ(PotentialSpec::hopf().cubic, (std::array<double, 2>{0, 1}));
  EXPECT_EQ(PotentialSpec::binarizing().quadratic, (std::array<double, 2>{0.5, 0.5}));
  EXPECT_EQ(PotentialSpec::complete().cubic, (std::array<double, 2>{0.25, 0.75}));
  for (const auto& s : mixtures()) EXPECT_NO_THROW(s.validate());
  PotentialSpec bad;
  bad.quadratic = {0.5, 0.6};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = PotentialSpec{};
  bad.shil = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(PotentialSpec, ConfigRoundTrip) {
  for (const auto& s : mixtures()) EXPECT_EQ(parse_potential_config(format_potential_config(s)), s);
  const PotentialSpec s = parse_potential_config("# weights\nquadratic = 0.5 0.5\n\nshil = 2 # well\n");
  EXPECT_EQ(s.quadratic, (std::array<double, 2>{0.5, 0.5}));
  EXPECT_EQ(s.cubic, PotentialSpec::hopf().cubic);
  EXPECT_EQ(s.shil, 2.0);
  EXPECT_THROW(parse_potential_config("quadratic 0.5 0.5"), std::invalid_argument);
  EXPECT_THROW(parse_potential_config("cubic = 1"), std::invalid_argument);
  EXPECT_THROW(parse_potential_config("color = 1"), std::invalid_argument);
}

TEST(PotentialEnergy, EqualsPolynomialAtSpins) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PuboProblem p = formula_to_pubo(random_3cnf(8, 34, seed));
    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < 20; ++rep) {
      SpinVector s;
      std::vector<cplx> z;
      for (int i = 0; i < 8; ++i) {
        s.s.push_back(rng() & 1 ? 1 : -1);
        z.emplace_back(s.s.back(), 0.0);
      }
      for (auto spec : mixtures()) {
        spec.shil = 0;
        spec.scale = 1;
        EXPECT_NEAR(potential_energy(p, spec, z), pubo_eval(p, s), 1e-12);
      }
    }
  }
}

TEST(PotentialEnergy, WorkedExample) {
  const std::vector<cplx> z{1.0, -1.0};
  const PuboProblem p = single_pair();
  EXPECT_DOUBLE_EQ(potential_energy(p, quad(1, 0), z), -1.0);
  // advancing the pair phase by pi/3 splits the value in half
  EXPECT_NEAR(potential_energy(p, quad(1, 0), rotate(z, pi / 6)), -0.5, 1e-15);
  // a common rotation of pi/3 per oscillator turns the product by 2pi/3
  EXPECT_NEAR(potential_energy(p, quad(1, 0), rotate(z, pi / 3)), 0.5, 1e-15);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> phi(0, 2 * pi);
  for (int k = 0; k < 50; ++k) {
    EXPECT_NEAR(potential_energy(p, quad(0, 1), rotate(z, phi(rng))), -1.0, 1e-12);
  }
}

TEST(PotentialEnergy, OnePotentialGlobalShiftInvariantOnRandomProblems) {
  PuboProblem p = test::random_pubo(6, 2);
  // pairs only: linear and cubic terms have no conjugate-balanced form
  PuboProblem q(6);
  for (const auto& t : p.pairs()) q.add_pair(t.i, t.j, t.c);
  const auto z = test::random_state(6, 9);
  const double e = potential_energy(q, PotentialSpec::hopf(), z);
  for (double phi : {0.3, 1.1, 2.9, 5.0}) EXPECT_NEAR(potential_energy(q, PotentialSpec::hopf(), rotate(z, phi)), e, 1e-12);
}

TEST(PotentialEnergy, ScaleAndShil) {
  const PuboProblem p = test::random_pubo(5, 4);
  const auto z = test::random_state(5, 5);
  PotentialSpec s = PotentialSpec::hopf();
  const double base = potential_energy(p, s, z);
  s.scale = 3.0;
  EXPECT_NEAR(potential_energy(p, s, z), 3.0 * base, 1e-12);
  s.scale = 1.0;
  s.shil = 0.7;
  EXPECT_NEAR(potential_energy(p, s, z), base + shil_energy(std::span<const cplx>(z), 0.7), 1e-12);
}

TEST(Shil, Values) {
  const std::vector<double> zero{0.0, pi}, ridge{pi / 2};
  EXPECT_NEAR(shil_energy(std::span<const double>(zero), 2.0), -2.0, 1e-15);
  EXPECT_NEAR(shil_energy(std::span<const double>(ridge), 2.0), 1.0, 1e-15);
  EXPECT_EQ(shil_energy(std::span<const double>(ridge), 0.0), 0.0);
  const std::vector<cplx> z{std::polar(1.0, -0.4), std::polar(1.0, -2.0)};
  const std::vector<double> th{0.4, 2.0};
  EXPECT_NEAR(shil_energy(std::span<const cplx>(z), 1.3), shil_energy(std::span<const double>(th), 1.3), 1e-14);
  const Matrix2 h0 = shil_hessian({0.0, pi}, 1.5), h1 = shil_hessian({pi / 2, -pi / 2}, 1.5);
  EXPECT_NEAR(h0[0][0], 3.0, 1e-12);
  EXPECT_NEAR(h0[1][1], 3.0, 1e-12);
  EXPECT_EQ(h0[0][1], 0.0);
  EXPECT_NEAR(h1[0][0], -3.0, 1e-12);
  EXPECT_NEAR(shil_hessian({0.3, 0.4}, 0.0)[0][0], 0.0, 0.0);
}

TEST(WirtingerGradient, FiniteDifferenceHarness) {
  // H = z z^* gives dH/dz = z^*
  const std::vector<cplx> z{cplx(0.3, -1.2)};
  const auto g = test::fd_wirtinger([](const std::vector<cplx>& v) { return std::norm(v[0]); }, z);
  EXPECT_NEAR(std::abs(g[0] - std::conj(z[0])), 0.0, 1e-8);
}

TEST(WirtingerGradient, MatchesFiniteDifferences) {
  int pairs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PuboProblem p = seed % 2 ? test::random_pubo(6, seed) : formula_to_pubo(random_3cnf(6, 25, seed));
    const auto z = test::random_state(6, seed + 100);
    for (const auto& spec : mixtures()) {
      const auto g = wirtinger_gradient(p, spec, z);
      const auto fd = test::fd_wirtinger([&](const std::vector<cplx>& v) { return potential_energy(p, spec, v); }, z);
      for (std::size_t i = 0; i < z.size(); ++i) {
        EXPECT_LE(std::abs(g[i] - fd[i]), 1e-6 * std::max(1.0, std::abs(fd[i]))) << seed << " " << i;
      }
      ++pairs;
    }
  }
  EXPECT_GE(pairs, 100);
}

TEST(WirtingerGradient, PureCubicVanishesAtOrigin) {
  PuboProblem p(3);
  p.add_triple(0, 1, 2, 2.0);
  p.add_pair(0, 2, 1.0);
  const std::vector<cplx> z(3, 0.0);
  for (const auto& spec : mixtures()) {
    for (const cplx& g : wirtinger_gradient(p, spec, z)) EXPECT_EQ(g, cplx(0.0));
  }
  PuboProblem lin(2);
  lin.add_linear(1, 0.8);
  const auto g = wirtinger_gradient(lin, PotentialSpec::hopf(), std::vector<cplx>(2, 0.0));
  EXPECT_EQ(g[0], cplx(0.0));
  EXPECT_NEAR(std::abs(g[1] - 0.4), 0.0, 1e-15);
}

TEST(PhaseEnergy, MatchesPotentialOnUnitCircle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PuboProblem p = test::random_pubo(7, seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-pi, pi);
    std::vector<double> th(7);
    for (auto& t : th) t = u(rng);
    const ComplexState s = ComplexState::from_phases(th);
    for (const auto& spec : mixtures()) {
      EXPECT_NEAR(phase_energy(p, spec, th), potential_energy(p, spec, s.z), 1e-12);
    }
  }
}

TEST(PhaseEnergy, Examples) {
  const PuboProblem p = formula_to_pubo(random_3cnf(6, 20, 1));
  EXPECT_NEAR(phase_energy(p, PotentialSpec::hopf(), std::vector<double>(6, 0.0)), pubo_eval(p, SpinVector{std::vector<std::int8_t>(6, 1)}), 1e-12);
  EXPECT_NEAR(phase_energy(single_pair(), PotentialSpec::hopf(), std::vector<double>{0.0, pi}), -1.0, 1e-12);
}

TEST(PhaseGradient, MatchesFiniteDifferences) {
  const PuboProblem p = test::random_pubo(6, 8);
  std::vector<double> th{0.1, 1.4, -2.2, 3.0, -0.7, 2.1}, g(6);
  for (const auto& spec : mixtures()) {
    phase_gradient(p, spec, th, g);
    for (std::size_t i = 0; i < th.size(); ++i) {
      auto tp = th, tm = th;
      tp[i] += 1e-6;
      tm[i] -= 1e-6;
      EXPECT_NEAR(g[i], (phase_energy(p, spec, tp) - phase_energy(p, spec, tm)) / 2e-6, 1e-6);
    }
  }
}

TEST(ComplexState, PhaseConvention) {
  const std::vector<double> th{0.0, pi / 2, -1.0, pi};
  const ComplexState s = ComplexState::from_phases(th);
  EXPECT_NEAR(std::abs(s.z[1] - cplx(0, -1)), 0.0, 1e-15);
  const auto back = s.phases();
  for (std::size_t i = 0; i < th.size(); ++i) EXPECT_NEAR(back[i], th[i], 1e-12);
}

TEST(PhaseHessian, MinimaEigenstructure) {
  const auto one = symmetric_eigen(phase_hessian_quadratic(quad(0, 1), {0.0, pi}));
  EXPECT_NEAR(one.values[0], 0.0, 1e-9);
  EXPECT_NEAR(one.values[1], 2.0, 1e-9);
  EXPECT_NEAR(std::abs(one.vectors[0][0] - one.vectors[0][1]), 0.0, 1e-9);  // (1,1)

  const auto zero = symmetric_eigen(phase_hessian_quadratic(quad(1, 0), {0.0, pi}));
  EXPECT_NEAR(zero.values[0], 0.0, 1e-9);
  EXPECT_NEAR(zero.values[1], 2.0, 1e-9);
  EXPECT_NEAR(std::abs(zero.vectors[0][0] + zero.vectors[0][1]), 0.0, 1e-9);  // (1,-1)

  EXPECT_GT(symmetric_eigen(phase_hessian_quadratic(PotentialSpec::complete(), {0.0, pi})).values[0], 0.0);
  PotentialSpec shil = quad(0, 1);
  shil.shil = 1.0;
  EXPECT_GT(symmetric_eigen(phase_hessian_quadratic(shil, {0.0, pi})).values[0], 0.0);
}

TEST(PhaseHessian, MatchesFiniteDifferenceAndIsLinear) {
  const std::array<double, 2> th{0.7, -1.9};
  for (const auto& spec : mixtures()) {
    const Matrix2 h = phase_hessian_quadratic(spec, th);
    const double e = 1e-4;
    auto E = [&](double a, double b) {
      return phase_energy(single_pair(), spec, std::vector<double>{a, b});
    };
    const double h00 = (E(th[0] + e, th[1]) - 2 * E(th[0], th[1]) + E(th[0] - e, th[1])) / (e * e);
    const double h01 = (E(th[0] + e, th[1] + e) - E(th[0] + e, th[1] - e) - E(th[0] - e, th[1] + e) +
                        E(th[0] - e, th[1] - e)) / (4 * e * e);
    EXPECT_NEAR(h[0][0], h00 / spec.scale * spec.scale, 1e-5);
    EXPECT_NEAR(h[0][1], h01, 1e-5);
  }
  const Matrix2 a = phase_hessian_quadratic(quad(1, 0), th), b = phase_hessian_quadratic(quad(0, 1), th),
                c = phase_hessian_quadratic(quad(0.5, 0.5), th);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(c[i][j], 0.5 * (a[i][j] + b[i][j]), 1e-14);
}

TEST(GeneralOrder, AgreesWithFastPath) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PuboProblem p = test::random_pubo(6, seed);
    const MonomialProblem m = MonomialProblem::from_pubo(p);
    EXPECT_EQ(m.max_order(), 3u);
    const auto z = test::random_state(6, seed + 7);
    for (auto spec : mixtures()) {
      spec.shil = 0;
      spec.scale = 1;
      const OrderWeights w = order_weights(spec);
      const cplx e = general_energy(m, w, z);
      EXPECT_NEAR(e.real(), potential_energy(p, spec, z), 1e-12);
      EXPECT_NEAR(e.imag(), 0.0, 1e-12);
      std::vector<cplx> dz(6), dzc(6);
      general_gradient(m, w, z, dz, dzc);
      const auto g = wirtinger_gradient(p, spec, z);
      for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(std::abs(dz[i] - g[i]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(dzc[i] - std::conj(g[i])), 0.0, 1e-12);  // real-valued H
      }
    }
  }
}

TEST(GeneralOrder, QuarticProperties) {
  MonomialProblem m;
  m.n = 5;
  m.constant = 0.5;
  m.terms = {{1.0, {0, 1, 2, 3}}, {-0.5, {1, 2, 4}}, {0.75, {0, 4}}, {-0.25, {3}}, {0.3, {0, 1, 3, 4}}};
  const OrderWeights w{{}, {1.0}, {0.5, 0.5}, {0.25, 0.75}, {0.2, 0.3, 0.5}};
  // real-valued, equals the polynomial at spins
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    SpinVector s;
    std::vector<cplx> z;
    for (int i = 0; i < 5; ++i) {
      s.s.push_back((mask >> i) & 1 ? 1 : -1);
      z.emplace_back(s.s.back(), 0);
    }
    const cplx e = general_energy(m, w, z);
    EXPECT_NEAR(e.real(), general_eval(m, s), 1e-12);
  }
  const auto z = test::random_state(5, 3);
  EXPECT_NEAR(general_energy(m, w, z).imag(), 0.0, 1e-12);
  // gradient vs finite differences
  std::vector<cplx> dz(5), dzc(5);
  general_gradient(m, w, z, dz, dzc);
  const auto fd = test::fd_wirtinger([&](const std::vector<cplx>& v) { return general_energy(m, w, v).real(); }, z);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(dz[i] - fd[i]), 0.0, 1e-6);
  // balanced quartic (p = 2) is invariant under a common rotation
  MonomialProblem q;
  q.n = 4;
  q.terms = {{1.0, {0, 1, 2, 3}}};
  const OrderWeights bal{{}, {1.0}, {0, 1}, {0, 1}, {0, 0, 1}};
  const auto zq = test::random_state(4, 4);
  EXPECT_NEAR(general_energy(q, bal, rotate(zq, 1.234)).real(), general_energy(q, bal, zq).real(), 1e-12);
}

TEST(GeneralOrder, RejectsBadMonomials) {
  MonomialProblem m;
  m.n = 3;
  m.terms = {{1.0, {0, 0, 1}}};
  EXPECT_THROW(general_energy(m, order_weights(PotentialSpec::hopf()), std::vector<cplx>(3, 1.0)), std::invalid_argument);
}
