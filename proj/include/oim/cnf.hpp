#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oim {

/// A variable (1-based) or its negation.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  /// DIMACS integer form: +v or -v.
  int dimacs() const { return negated ? -static_cast<int>(var) : static_cast<int>(var); }
  /// True when the literal holds under x_var = value.
  bool satisfied_by(bool value) const { return value != negated; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// Error raised while reading DIMACS text. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A validated 3-CNF formula. Every clause has three literals over three
/// distinct variables in [1, num_vars].
class CnfFormula {
 public:
  CnfFormula() = default;
  /// Throws std::invalid_argument if any clause violates the invariants.
  CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// Checks a single clause against a variable count. Returns an empty string
/// when the clause is valid, otherwise a description of the problem.
std::string validate_clause(const Clause& clause, std::uint32_t num_vars);

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
CnfFormula read_dimacs_file(const std::string& path);

std::string serialize_dimacs(const CnfFormula& formula);

/// Number of clauses whose three literals are all false. `assignment[v-1]`
/// is the value of variable v.
std::size_t count_unsat(const CnfFormula& formula, const std::vector<bool>& assignment);

/// Uniform random 3-CNF: each clause draws three distinct variables and
/// independent signs. Deterministic in `seed`.
CnfFormula random_3cnf(std::uint32_t num_vars, std::size_t num_clauses, std::uint64_t seed);

}  // namespace oim
