#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oim/cnf.hpp"

namespace oim {

/// Ising spins in {-1, +1}. +1 means the Boolean variable is true.
struct SpinVector {
  std::vector<std::int8_t> s;

  std::size_t size() const { return s.size(); }
  std::vector<bool> to_assignment() const;
  static SpinVector from_assignment(const std::vector<bool>& x);

  friend bool operator==(const SpinVector&, const SpinVector&) = default;
};

struct PairTerm {
  std::uint32_t i, j;  // i < j
  double c;
  friend bool operator==(const PairTerm&, const PairTerm&) = default;
};

struct TripleTerm {
  std::uint32_t i, j, k;  // i < j < k
  double c;
  friend bool operator==(const TripleTerm&, const TripleTerm&) = default;
};

/// Degree-3 spin polynomial
///   E(s) = constant + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + sum_{i<j<k} P_ijk s_i s_j s_k.
/// Pair and triple coefficients hold the total weight of each unordered
/// index set, stored sparsely in ascending canonical order with no zero,
/// diagonal, or duplicate entries.
class PuboProblem {
 public:
  PuboProblem() = default;
  explicit PuboProblem(std::uint32_t n) : n_(n), h_(n, 0.0) {}

  std::uint32_t n() const { return n_; }
  double constant() const { return constant_; }
  const std::vector<double>& linear() const { return h_; }
  const std::vector<PairTerm>& pairs() const { return pairs_; }
  const std::vector<TripleTerm>& triples() const { return triples_; }

  /// Symmetric lookups; any index order returns the same value, 0 if absent.
  double J(std::uint32_t a, std::uint32_t b) const;
  double P(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;

  void add_constant(double c) { constant_ += c; }
  void add_linear(std::uint32_t i, double c);
  /// Accumulates into the canonical entry. Throws on repeated indices.
  void add_pair(std::uint32_t a, std::uint32_t b, double c);
  void add_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c, double w);

  /// Every coefficient multiplied by `factor`.
  PuboProblem scaled(double factor) const;

  friend bool operator==(const PuboProblem&, const PuboProblem&) = default;

 private:
  std::uint32_t n_ = 0;
  double constant_ = 0.0;
  std::vector<double> h_;
  std::vector<PairTerm> pairs_;
  std::vector<TripleTerm> triples_;
};

/// Clause polynomial (1 -+ s_p)(1 -+ s_q)(1 -+ s_r)/8: 0 when satisfied, 1 otherwise.
PuboProblem clause_to_pubo(const Clause& clause, std::uint32_t n);
/// Sum of clause polynomials; evaluates to the unsatisfied-clause count.
PuboProblem formula_to_pubo(const CnfFormula& formula);

double pubo_eval(const PuboProblem& problem, const SpinVector& s);

void to_json(nlohmann::json& j, const PuboProblem& p);
void from_json(const nlohmann::json& j, PuboProblem& p);

}  // namespace oim
