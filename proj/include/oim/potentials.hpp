#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oim/pubo.hpp"

namespace oim {

using cplx = std::complex<double>;

/// Oscillator states z_i = |z_i| e^{-i theta_i}.
struct ComplexState {
  std::vector<cplx> z;

  std::size_t size() const { return z.size(); }
  /// Phases theta_i = -arg(z_i) wrapped to (-pi, pi].
  std::vector<double> phases() const;
  static ComplexState from_phases(std::span<const double> theta);
};

/// Choice of Wirtinger potential per interaction order.
///
/// Each degree-k monomial c s_{i1}...s_{ik} is lifted to the complex domain as
///   c * sum_p w_k[p] * avg_{|S| = p} Re( prod_{a not in S} z_a * prod_{a in S} z_a^* )
/// where p counts conjugated factors and S ranges over the subsets of the
/// monomial's indices. Every p-potential equals c s_{i1}...s_{ik} at z_i = s_i,
/// so any convex weight vector preserves the discrete energy at binarized
/// states. Linear terms always use Re(z_i).
///
/// The problem energy is multiplied by `scale`; the second-harmonic locking
/// term -(shil/2) sum_i Re(z_i^2) is added on top of it.
struct PotentialSpec {
  std::array<double, 2> quadratic{0.0, 1.0};  // weights for p = 0, 1
  std::array<double, 2> cubic{0.0, 1.0};      // weights for p = 0, 1
  double shil = 0.0;
  double scale = 1.0;

  /// Linear Re(z), quadratic 1-potential, cubic 1-potential.
  static PotentialSpec hopf();
  /// As hopf() but with the quadratic C-potential (equal 0/1 mix).
  static PotentialSpec binarizing();
  /// Expansion of prod (z + z^*)/2: binomially weighted mix at every order.
  static PotentialSpec complete();
  /// Field-wise linear interpolation, f in [0, 1].
  static PotentialSpec lerp(const PotentialSpec& a, const PotentialSpec& b, double f);

  /// Throws std::invalid_argument on negative or non-normalized weights,
  /// negative shil, or non-positive scale.
  void validate() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

/// Parses "key = value" lines: quadratic = w0 w1, cubic = w0 w1, shil = x,
/// scale = x. '#' starts a comment. Missing keys keep hopf() defaults.
PotentialSpec parse_potential_config(const std::string& text);
PotentialSpec read_potential_config(const std::string& path);
std::string format_potential_config(const PotentialSpec& spec);

class RealnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real energy of the lifted problem. Summed in complex arithmetic; throws
/// RealnessError if the imaginary residue exceeds 1e-9 (1 + |value|), and
/// std::invalid_argument on non-finite input.
double potential_energy(const PuboProblem& problem, const PotentialSpec& spec,
                        std::span<const cplx> z);

/// Non-conjugated Wirtinger partials g_i = dH/dz_i (z^* held constant).
void wirtinger_gradient(const PuboProblem& problem, const PotentialSpec& spec,
                        std::span<const cplx> z, std::span<cplx> out);
std::vector<cplx> wirtinger_gradient(const PuboProblem& problem, const PotentialSpec& spec,
                                     std::span<const cplx> z);

/// Energy at z_i = exp(-i theta_i), evaluated from cosine forms.
double phase_energy(const PuboProblem& problem, const PotentialSpec& spec,
                    std::span<const double> theta);
/// dH/dtheta_i of phase_energy.
void phase_gradient(const PuboProblem& problem, const PotentialSpec& spec,
                    std::span<const double> theta, std::span<double> out);

/// -(kappa_s/2) sum_i cos(2 theta_i): wells at theta = 0, pi.
double shil_energy(std::span<const double> theta, double kappa_s);
/// -(kappa_s/2) sum_i Re(z_i^2), the amplitude-aware lift of the above.
double shil_energy(std::span<const cplx> z, double kappa_s);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Phase-space Hessian of the two-oscillator problem H = s1 s2 (J_12 = 1)
/// under `spec` (including its shil term), at theta = (t1, t2).
Matrix2 phase_hessian_quadratic(const PotentialSpec& spec, std::array<double, 2> theta);
/// Diagonal Hessian 2 kappa_s diag(cos 2 theta_i) of shil_energy.
Matrix2 shil_hessian(std::array<double, 2> theta, double kappa_s);

struct SymmetricEigen2 {
  std::array<double, 2> values;                 // ascending
  std::array<std::array<double, 2>, 2> vectors;  // vectors[k] pairs with values[k], unit norm
};
SymmetricEigen2 symmetric_eigen(const Matrix2& m);

// ---------------------------------------------------------------------------
// General-order Wirtinger potentials.
//
// Arbitrary-degree monomials with per-order weight vectors over p in
// [0, floor(k/2)]. Slower than the specialised degree-3 kernels above, which
// it cross-checks; also provides the conjugate partials dH/dz^*.

struct Monomial {
  double c = 0.0;
  std::vector<std::uint32_t> idx;  // distinct indices
};

struct MonomialProblem {
  std::uint32_t n = 0;
  double constant = 0.0;
  std::vector<Monomial> terms;

  static MonomialProblem from_pubo(const PuboProblem& problem);
  std::uint32_t max_order() const;
};

/// weights[k][p]: weight of the p-potential at order k. Orders without an
/// entry default to the pure 0-potential (the only choice for k = 1).
using OrderWeights = std::vector<std::vector<double>>;
OrderWeights order_weights(const PotentialSpec& spec);

/// Complex value of the lifted energy (imaginary part is the rounding residue).
cplx general_energy(const MonomialProblem& problem, const OrderWeights& weights,
                    std::span<const cplx> z);
/// Accumulates dH/dz into dz and dH/dz^* into dz_conj (both zeroed first).
void general_gradient(const MonomialProblem& problem, const OrderWeights& weights,
                      std::span<const cplx> z, std::span<cplx> dz, std::span<cplx> dz_conj);
/// Discrete energy at spins s.
double general_eval(const MonomialProblem& problem, const SpinVector& s);

}  // namespace oim
