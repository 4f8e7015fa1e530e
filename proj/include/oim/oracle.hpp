#pragma once

#include <cstdint>

#include "oim/cnf.hpp"
#include "oim/pubo.hpp"

namespace oim {

struct GroundState {
  double energy = 0.0;
  /// Lexicographically first optimum, ordering -1 < +1 and comparing s_1 first.
  SpinVector argmin;
  std::uint64_t count = 0;
};

inline constexpr std::uint32_t kOracleMaxN = 24;
inline constexpr std::uint32_t kVerifyMaxN = 20;

/// Exhaustive minimum over all 2^n spin vectors using Gray-code order with
/// single-flip energy deltas. Parallel over blocks of leading spins when
/// built with OpenMP. Ties within 1e-9 count as equal.
GroundState brute_force_ground(const PuboProblem& problem, std::uint32_t max_n = kOracleMaxN);

/// Serial reference: evaluates pubo_eval on every assignment in index order.
GroundState brute_force_ground_reference(const PuboProblem& problem, std::uint32_t max_n = 16);

/// True iff pubo_eval(formula_to_pubo(F), s) == count_unsat(F, x(s)) for all
/// 2^n assignments, exactly.
bool verify_mapping(const CnfFormula& formula, std::uint32_t max_n = kVerifyMaxN);
/// Same check against a caller-supplied polynomial.
bool verify_mapping(const CnfFormula& formula, const PuboProblem& problem, std::uint32_t max_n = kVerifyMaxN);

}  // namespace oim
