#include "oim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace oim {

namespace {

constexpr double kTieTolerance = 1e-9;

void check_size(std::uint32_t n, std::uint32_t max_n) {
  if (n > max_n) {
    throw std::invalid_argument("exhaustive search limited to n <= " + std::to_string(max_n) +
                                ", got " + std::to_string(n));
  }
}

// Spin of variable i under enumeration key u: bit (n-1-i), so that numeric
// key order is lexicographic order with s_1 most significant.
SpinVector spins_from_key(std::uint64_t key, std::uint32_t n) {
  SpinVector s;
  s.s.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) s.s[i] = ((key >> (n - 1 - i)) & 1u) ? 1 : -1;
  return s;
}

struct Neighbourhood {
  struct Pair {
    std::uint32_t other;
    double c;
  };
  struct Triple {
    std::uint32_t a, b;
    double c;
  };
  std::vector<std::vector<Pair>> pairs;
  std::vector<std::vector<Triple>> triples;

  explicit Neighbourhood(const PuboProblem& p) : pairs(p.n()), triples(p.n()) {
    for (const auto& t : p.pairs()) {
      pairs[t.i].push_back({t.j, t.c});
      pairs[t.j].push_back({t.i, t.c});
    }
    for (const auto& t : p.triples()) {
      triples[t.i].push_back({t.j, t.k, t.c});
      triples[t.j].push_back({t.i, t.k, t.c});
      triples[t.k].push_back({t.i, t.j, t.c});
    }
  }

  // Energy change from flipping spin v.
  double flip_delta(const PuboProblem& p, const SpinVector& s, std::uint32_t v) const {
    double field = p.linear()[v];
    for (const auto& e : pairs[v]) field += e.c * s.s[e.other];
    for (const auto& e : triples[v]) field += e.c * (s.s[e.a] * s.s[e.b]);
    return -2.0 * s.s[v] * field;
  }
};

struct Best {
  double energy = 0.0;
  std::uint64_t key = 0;
  std::uint64_t count = 0;
  bool valid = false;

  void offer(double e, std::uint64_t k) {
    if (!valid || e < energy - kTieTolerance) {
      energy = e;
      key = k;
      count = 1;
      valid = true;
    } else if (std::abs(e - energy) <= kTieTolerance) {
      ++count;
      key = std::min(key, k);
    }
  }

  void merge(const Best& o) {
    if (!o.valid) return;
    if (!valid || o.energy < energy - kTieTolerance) {
      *this = o;
    } else if (std::abs(o.energy - energy) <= kTieTolerance) {
      count += o.count;
      key = std::min(key, o.key);
    }
  }
};

}  // namespace

GroundState brute_force_ground(const PuboProblem& problem, std::uint32_t max_n) {
  const std::uint32_t n = problem.n();
  check_size(n, max_n);
  const Neighbourhood nb(problem);
  const std::uint32_t lead = std::min<std::uint32_t>(n, 6);
  const std::uint32_t low = n - lead;
  const std::int64_t blocks = std::int64_t{1} << lead;
  const std::uint64_t inner = std::uint64_t{1} << low;

  std::vector<Best> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint64_t base = static_cast<std::uint64_t>(b) << low;
    SpinVector s = spins_from_key(base, n);
    double e = pubo_eval(problem, s);
    Best best;
    best.offer(e, base);
    for (std::uint64_t t = 1; t < inner; ++t) {
      const auto bit = static_cast<std::uint32_t>(std::countr_zero(t));
      const std::uint32_t v = n - 1 - bit;
      e += nb.flip_delta(problem, s, v);
      s.s[v] = static_cast<std::int8_t>(-s.s[v]);
      best.offer(e, base | (t ^ (t >> 1)));
    }
    partial[static_cast<std::size_t>(b)] = best;
  }
  Best total;
  for (const Best& b : partial) total.merge(b);
  return GroundState{total.energy, spins_from_key(total.key, n), total.count};
}

GroundState brute_force_ground_reference(const PuboProblem& problem, std::uint32_t max_n) {
  const std::uint32_t n = problem.n();
  check_size(n, max_n);
  Best best;
  for (std::uint64_t key = 0; key < (std::uint64_t{1} << n); ++key) {
    best.offer(pubo_eval(problem, spins_from_key(key, n)), key);
  }
  return GroundState{best.energy, spins_from_key(best.key, n), best.count};
}

bool verify_mapping(const CnfFormula& formula, const PuboProblem& problem, std::uint32_t max_n) {
  const std::uint32_t n = formula.num_vars();
  check_size(n, max_n);
  if (problem.n() != n) return false;
  const std::uint32_t lead = std::min<std::uint32_t>(n, 4);
  const std::uint32_t low = n - lead;
  const std::int64_t blocks = std::int64_t{1} << lead;
  const std::uint64_t inner = std::uint64_t{1} << low;
  bool ok = true;
#pragma omp parallel for schedule(dynamic, 1) reduction(&& : ok)
  for (std::int64_t b = 0; b < blocks; ++b) {
    SpinVector s = spins_from_key(static_cast<std::uint64_t>(b) << low, n);
    std::vector<bool> x = s.to_assignment();
    for (std::uint64_t t = 0; t < inner && ok; ++t) {
      if (t > 0) {
        const std::uint32_t v = n - 1 - static_cast<std::uint32_t>(std::countr_zero(t));
        s.s[v] = static_cast<std::int8_t>(-s.s[v]);
        x[v] = !x[v];
      }
      ok = pubo_eval(problem, s) == static_cast<double>(count_unsat(formula, x));
    }
  }
  return ok;
}

bool verify_mapping(const CnfFormula& formula, std::uint32_t max_n) {
  check_size(formula.num_vars(), max_n);
  return verify_mapping(formula, formula_to_pubo(formula), max_n);
}

}  // namespace oim
