#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oim/cnf.hpp"

using namespace oim;

TEST(ParseDimacs, SingleClause) {
  const CnfFormula f = parse_dimacs("p cnf 3 1\n1 -2 3 0");
  ASSERT_EQ(f.num_vars(), 3u);
  ASSERT_EQ(f.num_clauses(), 1u);
  const Clause& c = f.clauses()[0];
  EXPECT_EQ(c[0].dimacs(), 1);
  EXPECT_EQ(c[1].dimacs(), -2);
  EXPECT_EQ(c[2].dimacs(), 3);
}

TEST(ParseDimacs, EmptyFormula) {
  const CnfFormula f = parse_dimacs("p cnf 1 0");
  EXPECT_EQ(f.num_vars(), 1u);
  EXPECT_EQ(f.num_clauses(), 0u);
}

TEST(ParseDimacs, CommentsAndTrailer) {
  const CnfFormula f = parse_dimacs("c hello\nc world\np cnf 4 2\n 1 2 3 0\n-4 -1\n 2 0\n%\n0\n\n");
  ASSERT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(f.clauses()[1][0].dimacs(), -4);
  EXPECT_EQ(f.clauses()[1][2].dimacs(), 2);
}

TEST(ParseDimacs, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_dimacs(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p cnf 2 1\n1 2 0"), 2u);            // width 2
  EXPECT_EQ(line_of("p cnf 3 1\n1 2 3 4 0"), 2u);        // width 4
  EXPECT_EQ(line_of("p cnf 3 1\n1 2 9 0"), 2u);          // variable out of range
  EXPECT_EQ(line_of("p cnf 3 1\n1 x 3 0"), 2u);          // bad token
  EXPECT_NE(line_of("p cnf 3 2\n1 2 3 0"), 0u);          // too few clauses
  EXPECT_NE(line_of("1 2 3 0"), 0u);                     // missing header
  EXPECT_EQ(line_of("p cnf 3 1\np cnf 3 1\n1 2 3 0"), 2u);  // duplicate header
  EXPECT_EQ(line_of("p dnf 3 1\n1 2 3 0"), 1u);
  EXPECT_EQ(line_of("p cnf 3 1\n1 2 3 0"), 0u);
}

TEST(CountUnsat, ClauseExamples) {
  const CnfFormula f = parse_dimacs("p cnf 3 1\n1 -2 3 0");
  EXPECT_EQ(count_unsat(f, {true, false, false}), 0u);
  EXPECT_EQ(count_unsat(f, {false, true, false}), 1u);
  EXPECT_THROW(count_unsat(f, {true, false}), std::invalid_argument);
  EXPECT_EQ(count_unsat(parse_dimacs("p cnf 2 0"), {false, true}), 0u);
}

TEST(CnfFormula, RejectsBadClause) {
  EXPECT_THROW(CnfFormula(2, {Clause{Literal{1, false}, Literal{2, false}, Literal{3, false}}}),
               std::invalid_argument);
  EXPECT_THROW(CnfFormula(2, {Clause{Literal{0, false}, Literal{1, false}, Literal{2, false}}}),
               std::invalid_argument);
}

TEST(SerializeDimacs, Text) {
  EXPECT_EQ(serialize_dimacs(parse_dimacs("p cnf 3 1\n1 -2 3 0")), "p cnf 3 1\n1 -2 3 0\n");
}

TEST(SerializeDimacs, RoundTripRandom) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CnfFormula f = random_3cnf(5 + seed, 4 * (5 + seed), seed);
    EXPECT_EQ(parse_dimacs(serialize_dimacs(f)), f) << "seed " << seed;
  }
}

TEST(SerializeDimacs, DataFile) {
  const CnfFormula f = read_dimacs_file(OIM_DATA_DIR "/uf20-91/uf20-01.cnf");
  EXPECT_EQ(f.num_vars(), 20u);
  EXPECT_EQ(f.num_clauses(), 91u);
  EXPECT_EQ(parse_dimacs(serialize_dimacs(f)).num_clauses(), 91u);
}

TEST(ReadDimacsFile, Missing) { EXPECT_THROW(read_dimacs_file("/nonexistent/x.cnf"), std::runtime_error); }

TEST(Random3Cnf, DistinctVarsAndDeterministic) {
  const CnfFormula a = random_3cnf(10, 43, 5), b = random_3cnf(10, 43, 5), c = random_3cnf(10, 43, 6);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  for (const Clause& cl : a.clauses()) {
    EXPECT_NE(cl[0].var, cl[1].var);
    EXPECT_NE(cl[0].var, cl[2].var);
    EXPECT_NE(cl[1].var, cl[2].var);
  }
}
