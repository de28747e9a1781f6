#pragma once

#include <optional>
#include <vector>

#include "gdof/rational.hpp"

namespace gdof {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status;
  Rational objective;           // meaningful when Optimal
  std::vector<Rational> point;  // an optimizer, when Optimal
};

// max c.x  subject to  A x <= b, x free. Exact rational two-phase simplex.
LpResult lp_maximize(const std::vector<std::vector<Rational>>& A,
                     const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

std::optional<std::vector<Rational>> lp_feasible_point(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b);

// Minimizes objectives[0] over {Ax <= b}, then objectives[1] over the argmin
// set, and so on. Every objective must be bounded below on the feasible set.
std::optional<std::vector<Rational>> lp_lex_min(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
    const std::vector<std::vector<Rational>>& objectives);

}  // namespace gdof
