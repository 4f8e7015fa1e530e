#include "oim/pubo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace oim {

std::vector<bool> SpinVector::to_assignment() const {
  std::vector<bool> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] > 0;
  return x;
}

SpinVector SpinVector::from_assignment(const std::vector<bool>& x) {
  SpinVector out;
  out.s.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.s[i] = x[i] ? 1 : -1;
  return out;
}

namespace {

void check_index(std::uint32_t i, std::uint32_t n) {
  if (i >= n) throw std::out_of_range("index " + std::to_string(i) + " >= n=" + std::to_string(n));
}

void check_finite(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
}

}  // namespace

double PuboProblem::J(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{a, b},
                             [](const PairTerm& t, const std::pair<std::uint32_t, std::uint32_t>& key) {
                               return std::tie(t.i, t.j) < std::tie(key.first, key.second);
                             });
  return (it != pairs_.end() && it->i == a && it->j == b) ? it->c : 0.0;
}

double PuboProblem::P(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  std::array<std::uint32_t, 3> idx{a, b, c};
  std::sort(idx.begin(), idx.end());
  auto it = std::lower_bound(triples_.begin(), triples_.end(), idx,
                             [](const TripleTerm& t, const std::array<std::uint32_t, 3>& key) {
                               return std::tie(t.i, t.j, t.k) < std::tie(key[0], key[1], key[2]);
                             });
  return (it != triples_.end() && it->i == idx[0] && it->j == idx[1] && it->k == idx[2]) ? it->c
                                                                                          : 0.0;
}

void PuboProblem::add_linear(std::uint32_t i, double c) {
  check_index(i, n_);
  check_finite(c);
  h_[i] += c;
}

void PuboProblem::add_pair(std::uint32_t a, std::uint32_t b, double c) {
  check_index(a, n_);
  check_index(b, n_);
  check_finite(c);
  if (a == b) throw std::invalid_argument("diagonal pair term");
  if (a > b) std::swap(a, b);
  auto cmp = [](const PairTerm& t, const PairTerm& key) {
    return std::tie(t.i, t.j) < std::tie(key.i, key.j);
  };
  PairTerm key{a, b, c};
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key, cmp);
  if (it != pairs_.end() && it->i == a && it->j == b) {
    it->c += c;
    if (it->c == 0.0) pairs_.erase(it);
  } else if (c != 0.0) {
    pairs_.insert(it, key);
  }
}

void PuboProblem::add_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c, double w) {
  check_index(a, n_);
  check_index(b, n_);
  check_index(c, n_);
  check_finite(w);
  if (a == b || b == c || a == c) throw std::invalid_argument("repeated index in triple term");
  std::array<std::uint32_t, 3> idx{a, b, c};
  std::sort(idx.begin(), idx.end());
  auto cmp = [](const TripleTerm& t, const TripleTerm& key) {
    return std::tie(t.i, t.j, t.k) < std::tie(key.i, key.j, key.k);
  };
  TripleTerm key{idx[0], idx[1], idx[2], w};
  auto it = std::lower_bound(triples_.begin(), triples_.end(), key, cmp);
  if (it != triples_.end() && it->i == key.i && it->j == key.j && it->k == key.k) {
    it->c += w;
    if (it->c == 0.0) triples_.erase(it);
  } else if (w != 0.0) {
    triples_.insert(it, key);
  }
}

PuboProblem PuboProblem::scaled(double factor) const {
  PuboProblem out = *this;
  out.constant_ *= factor;
  for (double& h : out.h_) h *= factor;
  for (auto& t : out.pairs_) t.c *= factor;
  for (auto& t : out.triples_) t.c *= factor;
  return out;
}

PuboProblem clause_to_pubo(const Clause& clause, std::uint32_t n) {
  if (auto err = validate_clause(clause, n); !err.empty()) throw std::invalid_argument(err);
  // Literal factor (1 + sigma s)/2 with sigma = -1 for x, +1 for not-x.
  std::array<double, 3> sigma{};
  std::array<std::uint32_t, 3> v{};
  for (std::size_t a = 0; a < 3; ++a) {
    sigma[a] = clause[a].negated ? 1.0 : -1.0;
    v[a] = clause[a].var - 1;
  }
  PuboProblem p(n);
  constexpr double eighth = 0.125;
  p.add_constant(eighth);
  for (std::size_t a = 0; a < 3; ++a) p.add_linear(v[a], eighth * sigma[a]);
  p.add_pair(v[0], v[1], eighth * sigma[0] * sigma[1]);
  p.add_pair(v[0], v[2], eighth * sigma[0] * sigma[2]);
  p.add_pair(v[1], v[2], eighth * sigma[1] * sigma[2]);
  p.add_triple(v[0], v[1], v[2], eighth * sigma[0] * sigma[1] * sigma[2]);
  return p;
}

PuboProblem formula_to_pubo(const CnfFormula& formula) {
  const std::uint32_t n = formula.num_vars();
  PuboProblem p(n);
  for (const Clause& clause : formula.clauses()) {
    PuboProblem c = clause_to_pubo(clause, n);
    p.add_constant(c.constant());
    for (std::uint32_t i = 0; i < n; ++i) {
      if (c.linear()[i] != 0.0) p.add_linear(i, c.linear()[i]);
    }
    for (const auto& t : c.pairs()) p.add_pair(t.i, t.j, t.c);
    for (const auto& t : c.triples()) p.add_triple(t.i, t.j, t.k, t.c);
  }
  return p;
}

double pubo_eval(const PuboProblem& problem, const SpinVector& s) {
  if (s.size() != problem.n()) {
    throw std::invalid_argument("spin vector length " + std::to_string(s.size()) +
                                " != n=" + std::to_string(problem.n()));
  }
  double e = problem.constant();
  for (std::uint32_t i = 0; i < problem.n(); ++i) e += problem.linear()[i] * s.s[i];
  for (const auto& t : problem.pairs()) e += t.c * (s.s[t.i] * s.s[t.j]);
  for (const auto& t : problem.triples()) e += t.c * (s.s[t.i] * s.s[t.j] * s.s[t.k]);
  return e;
}

void to_json(nlohmann::json& j, const PuboProblem& p) {
  nlohmann::json linear = nlohmann::json::array();
  for (std::uint32_t i = 0; i < p.n(); ++i) {
    if (p.linear()[i] != 0.0) linear.push_back({i, p.linear()[i]});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& t : p.pairs()) pairs.push_back({t.i, t.j, t.c});
  nlohmann::json triples = nlohmann::json::array();
  for (const auto& t : p.triples()) triples.push_back({t.i, t.j, t.k, t.c});
  j = nlohmann::json{{"n", p.n()},
                     {"constant", p.constant()},
                     {"linear", linear},
                     {"pairs", pairs},
                     {"triples", triples}};
}

void from_json(const nlohmann::json& j, PuboProblem& p) {
  PuboProblem out(j.at("n").get<std::uint32_t>());
  out.add_constant(j.at("constant").get<double>());
  for (const auto& e : j.at("linear")) out.add_linear(e.at(0).get<std::uint32_t>(), e.at(1).get<double>());
  for (const auto& e : j.at("pairs")) {
    out.add_pair(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>(), e.at(2).get<double>());
  }
  for (const auto& e : j.at("triples")) {
    out.add_triple(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>(),
                   e.at(2).get<std::uint32_t>(), e.at(3).get<double>());
  }
  p = std::move(out);
}

}  // namespace oim
