#include "oim/cnf.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace oim {

std::string validate_clause(const Clause& clause, std::uint32_t num_vars) {
  for (const Literal& lit : clause) {
    if (lit.var == 0 || lit.var > num_vars) {
      return "variable " + std::to_string(lit.var) + " out of range [1, " +
             std::to_string(num_vars) + "]";
    }
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      if (clause[a].var == clause[b].var) {
        return "variable " + std::to_string(clause[a].var) + " repeated within clause";
      }
    }
  }
  return {};
}

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    if (auto err = validate_clause(clauses_[j], num_vars_); !err.empty()) {
      throw std::invalid_argument("clause " + std::to_string(j + 1) + ": " + err);
    }
  }
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) toks.push_back(line.substr(start, i - start));
  }
  return toks;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;

  auto flush_clause = [&](std::size_t line_no) {
    if (pending.size() != 3) {
      throw ParseError(pending_line ? pending_line : line_no,
                       "clause width " + std::to_string(pending.size()) + " != 3");
    }
    Clause c{pending[0], pending[1], pending[2]};
    if (auto err = validate_clause(c, static_cast<std::uint32_t>(n)); !err.empty()) {
      throw ParseError(pending_line, err);
    }
    clauses.push_back(c);
    pending.clear();
    pending_line = 0;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    if (toks[0][0] == 'c') continue;
    // SATLIB uniform instances end with a "%" line followed by a lone "0".
    if (toks[0][0] == '%') break;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], n) || !parse_int(toks[3], m) ||
          n < 0 || m < 0 || n > static_cast<long long>(UINT32_MAX)) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before 'p cnf' header");
    for (auto tok : toks) {
      long long v = 0;
      if (!parse_int(tok, v)) {
        throw ParseError(line_no, "non-integer token '" + std::string(tok) + "'");
      }
      if (v == 0) {
        flush_clause(line_no);
        continue;
      }
      long long mag = v < 0 ? -v : v;
      if (mag > n) {
        throw ParseError(line_no, "variable " + std::to_string(mag) + " out of range [1, " +
                                      std::to_string(n) + "]");
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal{static_cast<std::uint32_t>(mag), v < 0});
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  // A final clause without its terminating 0 is accepted.
  if (!pending.empty()) flush_clause(line_no);
  if (static_cast<long long>(clauses.size()) != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " clauses, found " +
                                  std::to_string(clauses.size()));
  }
  return CnfFormula(static_cast<std::uint32_t>(n), std::move(clauses));
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

CnfFormula read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_dimacs(in);
}

std::string serialize_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const Clause& c : formula.clauses()) {
    out << c[0].dimacs() << ' ' << c[1].dimacs() << ' ' << c[2].dimacs() << " 0\n";
  }
  return out.str();
}

std::size_t count_unsat(const CnfFormula& formula, const std::vector<bool>& assignment) {
  if (assignment.size() != formula.num_vars()) {
    throw std::invalid_argument("assignment length " + std::to_string(assignment.size()) +
                                " != variable count " + std::to_string(formula.num_vars()));
  }
  std::size_t unsat = 0;
  for (const Clause& c : formula.clauses()) {
    bool sat = false;
    for (const Literal& lit : c) sat = sat || lit.satisfied_by(assignment[lit.var - 1]);
    if (!sat) ++unsat;
  }
  return unsat;
}

CnfFormula random_3cnf(std::uint32_t num_vars, std::size_t num_clauses, std::uint64_t seed) {
  if (num_vars < 3) throw std::invalid_argument("random_3cnf needs at least 3 variables");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> var(1, num_vars);
  std::bernoulli_distribution sign(0.5);
  std::vector<Clause> clauses(num_clauses);
  for (Clause& c : clauses) {
    for (std::size_t a = 0; a < 3; ++a) {
      std::uint32_t v = 0;
      do {
        v = var(rng);
      } while ((a > 0 && v == c[0].var) || (a > 1 && v == c[1].var));
      c[a] = Literal{v, sign(rng)};
    }
  }
  return CnfFormula(num_vars, std::move(clauses));
}

}  // namespace oim
