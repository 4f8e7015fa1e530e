#pragma once

#include <optional>
#include <vector>

#include "oim/cnf.hpp"

namespace oim::tools {

/// Complete satisfiability check used to filter generated instances.
/// Returns a satisfying assignment, or nullopt if the formula is unsatisfiable.
std::optional<std::vector<bool>> dpll_solve(const CnfFormula& formula);

}  // namespace oim::tools
