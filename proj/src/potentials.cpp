#include "oim/potentials.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace oim {

std::vector<double> ComplexState::phases() const {
  std::vector<double> theta(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double t = -std::arg(z[i]);
    if (t <= -std::numbers::pi) t += 2 * std::numbers::pi;
    theta[i] = t;
  }
  return theta;
}

ComplexState ComplexState::from_phases(std::span<const double> theta) {
  ComplexState s;
  s.z.reserve(theta.size());
  for (double t : theta) s.z.emplace_back(std::cos(t), -std::sin(t));
  return s;
}

PotentialSpec PotentialSpec::hopf() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::binarizing() {
  PotentialSpec s;
  s.quadratic = {0.5, 0.5};
  return s;
}

PotentialSpec PotentialSpec::complete() {
  // (z+z*)^k / 2^k: the p and k-p products pair up into C(k,p) * 2 / 2^k Re(...).
  PotentialSpec s;
  s.quadratic = {0.5, 0.5};
  s.cubic = {0.25, 0.75};
  return s;
}

PotentialSpec PotentialSpec::lerp(const PotentialSpec& a, const PotentialSpec& b, double f) {
  auto mix = [f](double x, double y) { return x + (y - x) * f; };
  PotentialSpec out;
  for (std::size_t p = 0; p < 2; ++p) {
    out.quadratic[p] = mix(a.quadratic[p], b.quadratic[p]);
    out.cubic[p] = mix(a.cubic[p], b.cubic[p]);
  }
  out.shil = mix(a.shil, b.shil);
  out.scale = mix(a.scale, b.scale);
  return out;
}

void PotentialSpec::validate() const {
  auto check = [](const std::array<double, 2>& w, const char* name) {
    if (w[0] < 0 || w[1] < 0 || !std::isfinite(w[0]) || !std::isfinite(w[1])) {
      throw std::invalid_argument(std::string(name) + " weights must be finite and >= 0");
    }
    if (std::abs(w[0] + w[1] - 1.0) > 1e-12) {
      throw std::invalid_argument(std::string(name) + " weights must sum to 1");
    }
  };
  check(quadratic, "quadratic");
  check(cubic, "cubic");
  if (!(shil >= 0) || !std::isfinite(shil)) throw std::invalid_argument("shil must be >= 0");
  if (!(scale > 0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be > 0");
}

PotentialSpec parse_potential_config(const std::string& text) {
  PotentialSpec spec;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    std::istringstream val(line.substr(eq + 1));
    auto fail = [&] {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": bad value for '" +
                                  key + "'");
    };
    auto read_pair = [&](std::array<double, 2>& w) {
      if (!(val >> w[0] >> w[1])) fail();
    };
    if (key == "quadratic") {
      read_pair(spec.quadratic);
    } else if (key == "cubic") {
      read_pair(spec.cubic);
    } else if (key == "shil") {
      if (!(val >> spec.shil)) fail();
    } else if (key == "scale") {
      if (!(val >> spec.scale)) fail();
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    std::string rest;
    if (val >> rest) fail();
  }
  spec.validate();
  return spec;
}

PotentialSpec read_potential_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_potential_config(buf.str());
}

std::string format_potential_config(const PotentialSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << "quadratic = " << spec.quadratic[0] << ' ' << spec.quadratic[1] << '\n'
      << "cubic = " << spec.cubic[0] << ' ' << spec.cubic[1] << '\n'
      << "shil = " << spec.shil << '\n'
      << "scale = " << spec.scale << '\n';
  return out.str();
}

namespace {

void check_dims(const PuboProblem& problem, std::size_t size) {
  if (size != problem.n()) {
    throw std::invalid_argument("state length " + std::to_string(size) + " != n=" +
                                std::to_string(problem.n()));
  }
}

// 1/2 (a + b) where b is computed independently as the conjugate arrangement.
cplx pair_mean(cplx a, cplx b) { return 0.5 * (a + b); }

}  // namespace

double potential_energy(const PuboProblem& problem, const PotentialSpec& spec,
                        std::span<const cplx> z) {
  check_dims(problem, z.size());
  for (const cplx& v : z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("non-finite oscillator state");
    }
  }
  const auto [q0, q1] = spec.quadratic;
  const auto [c0, c1] = spec.cubic;
  cplx e = problem.constant();
  for (std::uint32_t i = 0; i < problem.n(); ++i) {
    e += problem.linear()[i] * pair_mean(z[i], std::conj(z[i]));
  }
  for (const auto& t : problem.pairs()) {
    const cplx a = z[t.i], b = z[t.j];
    const cplx ac = std::conj(a), bc = std::conj(b);
    e += t.c * (q0 * pair_mean(a * b, ac * bc) + q1 * pair_mean(a * bc, ac * b));
  }
  for (const auto& t : problem.triples()) {
    const cplx a = z[t.i], b = z[t.j], c = z[t.k];
    const cplx ac = std::conj(a), bc = std::conj(b), cc = std::conj(c);
    cplx one_conj = pair_mean(a * b * cc, ac * bc * c) + pair_mean(a * bc * c, ac * b * cc) +
                    pair_mean(ac * b * c, a * bc * cc);
    e += t.c * (c0 * pair_mean(a * b * c, ac * bc * cc) + (c1 / 3.0) * one_conj);
  }
  e *= spec.scale;
  if (spec.shil != 0.0) {
    cplx s = 0.0;
    for (const cplx& v : z) s += pair_mean(v * v, std::conj(v) * std::conj(v));
    e += -0.5 * spec.shil * s;
  }
  if (std::abs(e.imag()) > 1e-9 * (1.0 + std::abs(e.real()))) {
    throw RealnessError("imaginary energy residue " + std::to_string(e.imag()));
  }
  return e.real();
}

void wirtinger_gradient(const PuboProblem& problem, const PotentialSpec& spec,
                        std::span<const cplx> z, std::span<cplx> out) {
  check_dims(problem, z.size());
  check_dims(problem, out.size());
  const double s = spec.scale;
  const double q0 = 0.5 * s * spec.quadratic[0];
  const double q1 = 0.5 * s * spec.quadratic[1];
  const double c0 = 0.5 * s * spec.cubic[0];
  const double c1 = s * spec.cubic[1] / 6.0;
  for (std::uint32_t i = 0; i < problem.n(); ++i) {
    out[i] = 0.5 * s * problem.linear()[i] - 0.5 * spec.shil * z[i];
  }
  for (const auto& t : problem.pairs()) {
    const cplx a = z[t.i], b = z[t.j];
    out[t.i] += t.c * (q0 * b + q1 * std::conj(b));
    out[t.j] += t.c * (q0 * a + q1 * std::conj(a));
  }
  for (const auto& t : problem.triples()) {
    const cplx a = z[t.i], b = z[t.j], c = z[t.k];
    const cplx ac = std::conj(a), bc = std::conj(b), cc = std::conj(c);
    // d/dz_a of avg over the conjugated factor of Re(z z z^*):
    //   (1/6)(b^* c^* + b c^* + b^* c)
    out[t.i] += t.c * (c0 * (b * c) + c1 * (bc * cc + b * cc + bc * c));
    out[t.j] += t.c * (c0 * (a * c) + c1 * (ac * cc + a * cc + ac * c));
    out[t.k] += t.c * (c0 * (a * b) + c1 * (ac * bc + a * bc + ac * b));
  }
  for (std::uint32_t i = 0; i < problem.n(); ++i) {
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag())) {
      throw std::invalid_argument("non-finite gradient at oscillator " + std::to_string(i));
    }
  }
}

std::vector<cplx> wirtinger_gradient(const PuboProblem& problem, const PotentialSpec& spec,
                                     std::span<const cplx> z) {
  std::vector<cplx> g(z.size());
  wirtinger_gradient(problem, spec, z, g);
  return g;
}

double phase_energy(const PuboProblem& problem, const PotentialSpec& spec,
                    std::span<const double> theta) {
  check_dims(problem, theta.size());
  const auto [q0, q1] = spec.quadratic;
  const auto [c0, c1] = spec.cubic;
  double e = problem.constant();
  for (std::uint32_t i = 0; i < problem.n(); ++i) e += problem.linear()[i] * std::cos(theta[i]);
  for (const auto& t : problem.pairs()) {
    const double a = theta[t.i], b = theta[t.j];
    e += t.c * (q0 * std::cos(a + b) + q1 * std::cos(a - b));
  }
  for (const auto& t : problem.triples()) {
    const double a = theta[t.i], b = theta[t.j], c = theta[t.k];
    e += t.c * (c0 * std::cos(a + b + c) +
                (c1 / 3.0) * (std::cos(a + b - c) + std::cos(a - b + c) + std::cos(-a + b + c)));
  }
  return spec.scale * e + shil_energy(theta, spec.shil);
}

void phase_gradient(const PuboProblem& problem, const PotentialSpec& spec,
                    std::span<const double> theta, std::span<double> out) {
  check_dims(problem, theta.size());
  check_dims(problem, out.size());
  const double s = spec.scale;
  const double q0 = s * spec.quadratic[0], q1 = s * spec.quadratic[1];
  const double c0 = s * spec.cubic[0], c1 = s * spec.cubic[1] / 3.0;
  for (std::uint32_t i = 0; i < problem.n(); ++i) {
    out[i] = -s * problem.linear()[i] * std::sin(theta[i]) + spec.shil * std::sin(2 * theta[i]);
  }
  for (const auto& t : problem.pairs()) {
    const double a = theta[t.i], b = theta[t.j];
    const double plus = q0 * std::sin(a + b);
    const double minus = q1 * std::sin(a - b);
    out[t.i] -= t.c * (plus + minus);
    out[t.j] -= t.c * (plus - minus);
  }
  for (const auto& t : problem.triples()) {
    const double a = theta[t.i], b = theta[t.j], c = theta[t.k];
    const double all = c0 * std::sin(a + b + c);
    const double na = c1 * std::sin(-a + b + c);  // a conjugated
    const double nb = c1 * std::sin(a - b + c);
    const double nc = c1 * std::sin(a + b - c);
    out[t.i] -= t.c * (all - na + nb + nc);
    out[t.j] -= t.c * (all + na - nb + nc);
    out[t.k] -= t.c * (all + na + nb - nc);
  }
}

double shil_energy(std::span<const double> theta, double kappa_s) {
  if (kappa_s == 0.0) return 0.0;
  double e = 0.0;
  for (double t : theta) e += std::cos(2 * t);
  return -0.5 * kappa_s * e;
}

double shil_energy(std::span<const cplx> z, double kappa_s) {
  if (kappa_s == 0.0) return 0.0;
  double e = 0.0;
  for (const cplx& v : z) e += (v * v).real();
  return -0.5 * kappa_s * e;
}

Matrix2 shil_hessian(std::array<double, 2> theta, double kappa_s) {
  return {{{2 * kappa_s * std::cos(2 * theta[0]), 0.0}, {0.0, 2 * kappa_s * std::cos(2 * theta[1])}}};
}

Matrix2 phase_hessian_quadratic(const PotentialSpec& spec, std::array<double, 2> theta) {
  const double sum = -spec.scale * spec.quadratic[0] * std::cos(theta[0] + theta[1]);
  const double diff = -spec.scale * spec.quadratic[1] * std::cos(theta[0] - theta[1]);
  Matrix2 h = shil_hessian(theta, spec.shil);
  h[0][0] += sum + diff;
  h[1][1] += sum + diff;
  h[0][1] += sum - diff;
  h[1][0] += sum - diff;
  return h;
}

SymmetricEigen2 symmetric_eigen(const Matrix2& m) {
  const double a = m[0][0], b = 0.5 * (m[0][1] + m[1][0]), d = m[1][1];
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  SymmetricEigen2 out;
  out.values = {mean - r, mean + r};
  if (r == 0.0) {
    out.vectors = {{{1.0, 0.0}, {0.0, 1.0}}};
    return out;
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const double lam = out.values[k];
    // Two candidate null vectors of (m - lam I); take the better conditioned.
    std::array<double, 2> u{b, lam - a};
    std::array<double, 2> v{lam - d, b};
    auto& w = (std::hypot(u[0], u[1]) >= std::hypot(v[0], v[1])) ? u : v;
    const double norm = std::hypot(w[0], w[1]);
    out.vectors[k] = {w[0] / norm, w[1] / norm};
  }
  return out;
}

MonomialProblem MonomialProblem::from_pubo(const PuboProblem& problem) {
  MonomialProblem out;
  out.n = problem.n();
  out.constant = problem.constant();
  for (std::uint32_t i = 0; i < problem.n(); ++i) {
    if (problem.linear()[i] != 0.0) out.terms.push_back({problem.linear()[i], {i}});
  }
  for (const auto& t : problem.pairs()) out.terms.push_back({t.c, {t.i, t.j}});
  for (const auto& t : problem.triples()) out.terms.push_back({t.c, {t.i, t.j, t.k}});
  return out;
}

std::uint32_t MonomialProblem::max_order() const {
  std::uint32_t k = 0;
  for (const auto& t : terms) k = std::max<std::uint32_t>(k, static_cast<std::uint32_t>(t.idx.size()));
  return k;
}

OrderWeights order_weights(const PotentialSpec& spec) {
  return {{}, {1.0}, {spec.quadratic[0], spec.quadratic[1]}, {spec.cubic[0], spec.cubic[1]}};
}

namespace {

// Weight of p-potential at order k; p-conjugated and (k-p)-conjugated
// arrangements describe the same potential, so p is folded to min(p, k-p).
double weight_for(const OrderWeights& w, std::size_t k, std::size_t p) {
  if (k >= w.size() || w[k].empty()) return p == 0 ? 1.0 : 0.0;
  if (w[k].size() > k / 2 + 1) throw std::invalid_argument("too many weights for order " + std::to_string(k));
  return p < w[k].size() ? w[k][p] : 0.0;
}

std::uint64_t binomial(std::size_t k, std::size_t p) {
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= p; ++i) r = r * (k - p + i) / i;
  return r;
}

void check_monomial(const Monomial& m, std::uint32_t n) {
  if (m.idx.empty() || m.idx.size() > 16) throw std::invalid_argument("monomial order must be in [1, 16]");
  for (std::size_t a = 0; a < m.idx.size(); ++a) {
    if (m.idx[a] >= n) throw std::out_of_range("monomial index out of range");
    for (std::size_t b = a + 1; b < m.idx.size(); ++b) {
      if (m.idx[a] == m.idx[b]) throw std::invalid_argument("repeated index in monomial");
    }
  }
}

// Product over the monomial with factor a conjugated iff bit a of mask is
// set, skipping factor `skip`.
cplx masked_product(const Monomial& m, std::span<const cplx> z, std::uint32_t mask, std::size_t skip) {
  cplx prod = 1.0;
  for (std::size_t a = 0; a < m.idx.size(); ++a) {
    if (a == skip) continue;
    const cplx v = z[m.idx[a]];
    prod *= ((mask >> a) & 1u) ? std::conj(v) : v;
  }
  return prod;
}

}  // namespace

cplx general_energy(const MonomialProblem& problem, const OrderWeights& weights,
                    std::span<const cplx> z) {
  if (z.size() != problem.n) throw std::invalid_argument("state length mismatch");
  cplx e = problem.constant;
  for (const Monomial& m : problem.terms) {
    check_monomial(m, problem.n);
    const std::size_t k = m.idx.size();
    const std::uint32_t full = (1u << k) - 1;
    for (std::size_t p = 0; p <= k / 2; ++p) {
      const double w = weight_for(weights, k, p);
      if (w == 0.0) continue;
      cplx acc = 0.0;
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != p) continue;
        acc += 0.5 * (masked_product(m, z, mask, k) + masked_product(m, z, full ^ mask, k));
      }
      e += m.c * w * acc / static_cast<double>(binomial(k, p));
    }
  }
  return e;
}

void general_gradient(const MonomialProblem& problem, const OrderWeights& weights,
                      std::span<const cplx> z, std::span<cplx> dz, std::span<cplx> dz_conj) {
  if (z.size() != problem.n || dz.size() != problem.n || dz_conj.size() != problem.n) {
    throw std::invalid_argument("state length mismatch");
  }
  std::fill(dz.begin(), dz.end(), cplx{});
  std::fill(dz_conj.begin(), dz_conj.end(), cplx{});
  for (const Monomial& m : problem.terms) {
    check_monomial(m, problem.n);
    const std::size_t k = m.idx.size();
    const std::uint32_t full = (1u << k) - 1;
    for (std::size_t p = 0; p <= k / 2; ++p) {
      const double w = weight_for(weights, k, p);
      if (w == 0.0) continue;
      const double coeff = 0.5 * m.c * w / static_cast<double>(binomial(k, p));
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != p) continue;
        // Both arrangements of the conjugate pair: `mask` and its complement.
        for (std::uint32_t arrangement : {mask, full ^ mask}) {
          for (std::size_t a = 0; a < k; ++a) {
            const cplx rest = masked_product(m, z, arrangement, a);
            if ((arrangement >> a) & 1u) {
              dz_conj[m.idx[a]] += coeff * rest;
            } else {
              dz[m.idx[a]] += coeff * rest;
            }
          }
        }
      }
    }
  }
}

double general_eval(const MonomialProblem& problem, const SpinVector& s) {
  if (s.size() != problem.n) throw std::invalid_argument("spin vector length mismatch");
  double e = problem.constant;
  for (const Monomial& m : problem.terms) {
    double prod = m.c;
    for (auto i : m.idx) prod *= s.s[i];
    e += prod;
  }
  return e;
}

}  // namespace oim
