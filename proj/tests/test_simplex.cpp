#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdof/simplex.hpp"
#include "test_util.hpp"

using namespace gdof;
using testutil::Rng;

namespace {

std::vector<Rational> rv(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.push_back(rat(x));
  return out;
}

}  // namespace

TEST_CASE("simple box maximum") {
  std::vector<std::vector<Rational>> A = {rv({1, 0}), rv({0, 1}), rv({-1, 0}), rv({0, -1})};
  std::vector<Rational> b = {rat(1), rat(1), rat(0), rat(0)};
  LpResult r = lp_maximize(A, b, rv({1, 1}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == rat(2));
}

TEST_CASE("negative right-hand sides trigger phase 1") {
  // x >= 2, x <= 5 as {-x <= -2, x <= 5}.
  std::vector<std::vector<Rational>> A = {rv({-1}), rv({1})};
  std::vector<Rational> b = {rat(-2), rat(5)};
  LpResult r = lp_maximize(A, b, rv({-1}));  // minimize x
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(-r.objective == rat(2));
}

TEST_CASE("unbounded and infeasible detection") {
  std::vector<std::vector<Rational>> A = {rv({-1})};
  std::vector<Rational> b = {rat(0)};
  CHECK(lp_maximize(A, b, rv({1})).status == LpStatus::Unbounded);

  std::vector<std::vector<Rational>> A2 = {rv({1}), rv({-1})};
  std::vector<Rational> b2 = {rat(-1), rat(0)};  // x <= -1 and x >= 0
  CHECK(lp_maximize(A2, b2, rv({1})).status == LpStatus::Infeasible);
  CHECK(!lp_feasible_point(A2, b2));
}

TEST_CASE("free variables can go negative") {
  std::vector<std::vector<Rational>> A = {rv({1})};
  std::vector<Rational> b = {rat(-3)};  // x <= -3
  LpResult r = lp_maximize(A, b, rv({1}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == rat(-3));
}

TEST_CASE("exact rational objective values") {
  // max x + y s.t. 3x + 7y <= 1, x,y >= 0: optimum 1/3 at x = 1/3.
  std::vector<std::vector<Rational>> A = {rv({3, 7}), rv({-1, 0}), rv({0, -1})};
  std::vector<Rational> b = {rat(1), rat(0), rat(0)};
  LpResult r = lp_maximize(A, b, rv({1, 1}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == rat(1, 3));
}

TEST_CASE("lexicographic minimization is deterministic") {
  // Square [0,1]^2 with x + y >= 1: lex-min picks (0, 1).
  std::vector<std::vector<Rational>> A = {rv({1, 0}),  rv({0, 1}), rv({-1, 0}),
                                          rv({0, -1}), rv({-1, -1})};
  std::vector<Rational> b = {rat(1), rat(1), rat(0), rat(0), rat(-1)};
  auto sol = lp_lex_min(A, b, {rv({1, 0}), rv({0, 1})});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == rat(0));
  CHECK((*sol)[1] == rat(1));
}

TEST_CASE("strong duality holds on random instances") {
  // max c.x s.t. Ax <= b (x free) against min b.y s.t. A'y = c, y >= 0.
  // Matching optima across hundreds of random systems pins the pivot logic.
  Rng rng(987654);
  int optimal_pairs = 0, unbounded_cases = 0, infeasible_cases = 0;
  for (int iter = 0; iter < 400; ++iter) {
    int n = static_cast<int>(rng.range(1, 3));
    int m = static_cast<int>(rng.range(1, 6));
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(n));
    std::vector<Rational> b(m), c(n);
    for (auto& row : A)
      for (auto& x : row) x = rat(rng.range(-3, 3));
    for (auto& x : b) x = rat(rng.range(-3, 4));
    for (auto& x : c) x = rat(rng.range(-3, 3));

    LpResult primal = lp_maximize(A, b, c);

    // Dual in inequality form over y >= 0 with A'y = c as row pairs.
    std::vector<std::vector<Rational>> D;
    std::vector<Rational> d;
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> pos(m), neg(m);
      for (int i = 0; i < m; ++i) pos[i] = A[i][j], neg[i] = -A[i][j];
      D.push_back(pos);
      d.push_back(c[j]);
      D.push_back(neg);
      d.push_back(-c[j]);
    }
    for (int i = 0; i < m; ++i) {
      std::vector<Rational> e(m, rat(0));
      e[i] = rat(-1);
      D.push_back(e);
      d.push_back(rat(0));
    }
    std::vector<Rational> negb(m);
    for (int i = 0; i < m; ++i) negb[i] = -b[i];
    LpResult dual = lp_maximize(D, d, negb);  // max -b.y = -(min b.y)

    if (primal.status == LpStatus::Optimal) {
      REQUIRE(dual.status == LpStatus::Optimal);
      CHECK(primal.objective == -dual.objective);
      ++optimal_pairs;
    } else if (primal.status == LpStatus::Unbounded) {
      CHECK(dual.status == LpStatus::Infeasible);
      ++unbounded_cases;
    } else {
      CHECK(dual.status != LpStatus::Optimal);
      ++infeasible_cases;
    }
  }
  CHECK(optimal_pairs > 50);
  CHECK(unbounded_cases > 20);
  CHECK(infeasible_cases > 20);
}

TEST_CASE("optimum agrees with vertex scan on random systems") {
  Rng rng(2024);
  for (int iter = 0; iter < 60; ++iter) {
    int dim = static_cast<int>(rng.range(2, 3));
    Polytope p = testutil::random_small_polytope(rng, dim, 4);
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& row : p.hrep()) {
      A.push_back(row.coeffs);
      b.push_back(row.rhs);
    }
    std::vector<Rational> c(dim);
    for (auto& x : c) x = rat(rng.range(-3, 3));
    LpResult r = lp_maximize(A, b, c);
    if (r.status != LpStatus::Optimal) continue;
    // The optimum dominates every vertex and is attained at one of them.
    auto vs = vertices(p);
    bool attained = false;
    for (const auto& v : vs) {
      Rational val(0);
      for (int j = 0; j < dim; ++j) val += c[j] * v[j];
      CHECK(val <= r.objective);
      attained |= val == r.objective;
    }
    if (!vs.empty()) CHECK(attained);
  }
}
