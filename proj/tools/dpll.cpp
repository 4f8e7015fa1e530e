#include "dpll.hpp"

#include <cstdint>

namespace oim::tools {

namespace {

// 0 unassigned, +1 true, -1 false; indexed by variable (1-based).
using Values = std::vector<std::int8_t>;

int literal_value(const Literal& lit, const Values& v) {
  const int x = v[lit.var];
  return lit.negated ? -x : x;
}

// Unit propagation to fixpoint. Returns false on conflict.
bool propagate(const CnfFormula& f, Values& v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : f.clauses()) {
      int free = 0;
      const Literal* last = nullptr;
      bool sat = false;
      for (const Literal& lit : c) {
        const int val = literal_value(lit, v);
        if (val > 0) {
          sat = true;
          break;
        }
        if (val == 0) {
          ++free;
          last = &lit;
        }
      }
      if (sat) continue;
      if (free == 0) return false;
      if (free == 1) {
        v[last->var] = last->negated ? -1 : 1;
        changed = true;
      }
    }
  }
  return true;
}

// Variable occurring most often in unsatisfied clauses, with its majority sign.
std::uint32_t pick_branch(const CnfFormula& f, const Values& v, bool& prefer_true) {
  std::vector<int> pos(f.num_vars() + 1, 0), neg(f.num_vars() + 1, 0);
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (const Literal& lit : c) sat = sat || literal_value(lit, v) > 0;
    if (sat) continue;
    for (const Literal& lit : c) {
      if (v[lit.var] == 0) (lit.negated ? neg : pos)[lit.var]++;
    }
  }
  std::uint32_t best = 0;
  int best_score = -1;
  for (std::uint32_t x = 1; x <= f.num_vars(); ++x) {
    if (v[x] != 0) continue;
    const int score = pos[x] + neg[x];
    if (score > best_score) {
      best_score = score;
      best = x;
    }
  }
  prefer_true = best != 0 && pos[best] >= neg[best];
  return best;
}

bool search(const CnfFormula& f, Values& v) {
  if (!propagate(f, v)) return false;
  bool prefer_true = true;
  const std::uint32_t x = pick_branch(f, v, prefer_true);
  if (x == 0) return true;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Values next = v;
    next[x] = (prefer_true == (attempt == 0)) ? 1 : -1;
    if (search(f, next)) {
      v = std::move(next);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<bool>> dpll_solve(const CnfFormula& formula) {
  Values v(formula.num_vars() + 1, 0);
  if (!search(formula, v)) return std::nullopt;
  std::vector<bool> x(formula.num_vars());
  for (std::uint32_t i = 1; i <= formula.num_vars(); ++i) x[i - 1] = v[i] > 0;
  return x;
}

}  // namespace oim::tools
