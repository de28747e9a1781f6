#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gdof/polytope.hpp"
#include "gdof/simplex.hpp"
#include "test_util.hpp"

using namespace gdof;
using testutil::Rng;

namespace {

LinearInequality li(std::initializer_list<long> cs, long num, long den = 1) {
  std::vector<Rational> c;
  for (long x : cs) c.push_back(rat(x));
  return LinearInequality(std::move(c), rat(num, den));
}

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(rat(x));
  return p;
}

}  // namespace

TEST_CASE("canonical rows scale the first nonzero coefficient to unit size") {
  LinearInequality r = li({0, -2, 4}, -2);
  CHECK(r.coeffs[1] == rat(-1));
  CHECK(r.coeffs[2] == rat(2));
  CHECK(r.rhs == rat(-1));
  // Trivial rows disappear at construction, contradictions stay.
  Polytope p(2, {li({0, 0}, 5), li({1, 0}, 1)});
  CHECK(p.hrep().size() == 1);
  CHECK(Polytope::empty_region(2).hrep().size() == 1);
  CHECK(Polytope::empty_region(2).hrep()[0].is_contradiction());
}

TEST_CASE("triangle projects to a segment") {
  // {x + y <= 1, x >= 0, y >= 0}, eliminate y -> {0 <= x <= 1}.
  Polytope p(2, {li({1, 1}, 1), li({-1, 0}, 0), li({0, -1}, 0)});
  Polytope q = fm_eliminate(p, 1);
  REQUIRE(q.dim() == 1);
  REQUIRE(q.hrep().size() == 2);
  CHECK(q.hrep()[0] == li({-1}, 0));
  CHECK(q.hrep()[1] == li({1}, 1));
}

TEST_CASE("box projects to its side") {
  // {d1 <= 2, d2 <= 3, d1, d2 >= 0}, eliminate d2 -> {0 <= d1 <= 2}.
  Polytope p(2, {li({1, 0}, 2), li({0, 1}, 3), li({-1, 0}, 0), li({0, -1}, 0)});
  Polytope q = fm_eliminate(p, 1);
  REQUIRE(q.hrep().size() == 2);
  CHECK(q.hrep()[0] == li({-1}, 0));
  CHECK(q.hrep()[1] == li({1}, 2));
}

TEST_CASE("dominated constraint is removed") {
  Polytope p(1, {li({1}, 1), li({1}, 2), li({-1}, 0)});
  Polytope q = remove_redundant(p);
  REQUIRE(q.hrep().size() == 2);
  CHECK(q.hrep()[0] == li({-1}, 0));
  CHECK(q.hrep()[1] == li({1}, 1));
}

TEST_CASE("tangent through a corner of the square is dropped") {
  // x + y <= 2 touches [0,1]^2 only at (1,1) and is implied by the box rows.
  Polytope p(2, {li({1, 1}, 2), li({1, 0}, 1), li({0, 1}, 1), li({-1, 0}, 0),
                 li({0, -1}, 0)});
  Polytope q = remove_redundant(p);
  CHECK(q.hrep().size() == 4);
  for (const auto& row : q.hrep()) CHECK(!(row == li({1, 1}, 2)));
}

TEST_CASE("infeasible systems collapse to the canonical empty region") {
  Polytope p(1, {li({1}, -1), li({-1}, 0)});
  Polytope q = remove_redundant(p);
  CHECK(is_empty(q));
  REQUIRE(q.hrep().size() == 1);
  CHECK(q.hrep()[0].is_contradiction());
  CHECK(vertices(q).empty());
}

TEST_CASE("unit cube vertices") {
  std::vector<LinearInequality> rows;
  for (int j = 0; j < 3; ++j) {
    std::vector<Rational> hi(3, rat(0)), lo(3, rat(0));
    hi[j] = rat(1);
    lo[j] = rat(-1);
    rows.emplace_back(hi, rat(1));
    rows.emplace_back(lo, rat(0));
  }
  auto vs = vertices(Polytope(3, rows));
  CHECK(vs.size() == 8);
}

TEST_CASE("simplex vertices") {
  Polytope p(3, {li({1, 1, 1}, 1), li({-1, 0, 0}, 0), li({0, -1, 0}, 0),
                 li({0, 0, -1}, 0)});
  auto vs = vertices(p);
  REQUIRE(vs.size() == 4);
  CHECK(std::count(vs.begin(), vs.end(), pt({0, 0, 0})) == 1);
  CHECK(std::count(vs.begin(), vs.end(), pt({1, 0, 0})) == 1);
  CHECK(std::count(vs.begin(), vs.end(), pt({0, 1, 0})) == 1);
  CHECK(std::count(vs.begin(), vs.end(), pt({0, 0, 1})) == 1);
}

TEST_CASE("unbounded inputs are reported distinctly") {
  Polytope half(1, {li({-1}, 0)});
  CHECK_THROWS_AS(vertices(half), UnboundedError);
  CHECK(!is_bounded(half));
}

TEST_CASE("contains checks dimensions") {
  Polytope p(2, {li({1, 0}, 1)});
  CHECK_THROWS_AS(p.contains(pt({1})), DimensionError);
  CHECK(p.contains(pt({0, 5})));
}

TEST_CASE("row order does not matter for equality") {
  Polytope a(2, {li({1, 0}, 1), li({0, 1}, 1), li({-1, 0}, 0), li({0, -1}, 0)});
  Polytope b(2, {li({0, -1}, 0), li({1, 0}, 1), li({-1, 0}, 0), li({0, 1}, 1)});
  CHECK(poly_equal(a, b));
  CHECK(poly_subset(a, a));
}

TEST_CASE("projection soundness against the exact interval oracle") {
  Rng rng(77);
  int checked = 0;
  for (int iter = 0; iter < 40; ++iter) {
    int dim = static_cast<int>(rng.range(2, 4));
    Polytope p = testutil::random_small_polytope(rng, dim, 6);
    if (is_empty(p)) continue;
    int var = static_cast<int>(rng.range(0, dim - 1));
    Polytope proj = fm_eliminate(p, var);
    // Sweep a grid in the projected space on step 1/8.
    for (int probe = 0; probe < 40; ++probe) {
      Point x;
      for (int j = 0; j < dim - 1; ++j) x.push_back(rat(rng.range(-16, 24), 8));
      // Exact witness interval for the eliminated coordinate.
      bool feasible = true;
      bool has_lo = false, has_hi = false;
      Rational lo(0), hi(0);
      for (const auto& row : p.hrep()) {
        Rational rest(0);
        int jj = 0;
        for (int j = 0; j < dim; ++j) {
          if (j == var) continue;
          rest += row.coeffs[j] * x[jj++];
        }
        Rational a = row.coeffs[var];
        if (a == 0) {
          if (rest > row.rhs) feasible = false;
        } else if (a > 0) {
          Rational bound = (row.rhs - rest) / a;
          if (!has_hi || bound < hi) hi = bound, has_hi = true;
        } else {
          Rational bound = (row.rhs - rest) / a;
          if (!has_lo || bound > lo) lo = bound, has_lo = true;
        }
      }
      if (feasible && has_lo && has_hi) feasible = lo <= hi;
      CHECK(proj.contains(x) == feasible);
      ++checked;
      // The one-in direction also holds for any witness on the 1/8 grid.
      if (feasible) {
        Point full(dim);
        Rational witness = has_lo ? lo : (has_hi ? hi : rat(0));
        int jj = 0;
        for (int j = 0; j < dim; ++j) full[j] = j == var ? witness : x[jj++];
        CHECK(p.contains(full));
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("vertices satisfy containment and outward nudges leave the set") {
  Rng rng(1234);
  int bumped = 0;
  for (int iter = 0; iter < 60; ++iter) {
    int dim = static_cast<int>(rng.range(2, 4));
    Polytope p = testutil::random_small_polytope(rng, dim, 5);
    if (is_empty(p)) continue;
    for (const auto& v : vertices(p)) {
      CHECK(p.contains(v));
      std::vector<Rational> normal(dim, rat(0));
      int tight = 0;
      for (const auto& row : p.hrep()) {
        if (row.lhs_at(v) == row.rhs) {
          for (int j = 0; j < dim; ++j) normal[j] += row.coeffs[j];
          ++tight;
        }
      }
      bool zero = true;
      for (const auto& c : normal) zero = zero && c == 0;
      if (zero || tight == 0) continue;
      Point nudged = v;
      for (int j = 0; j < dim; ++j) nudged[j] += normal[j] / (rat(1000) * tight);
      CHECK(!p.contains(nudged));
      ++bumped;
    }
  }
  CHECK(bumped > 50);
}

TEST_CASE("redundancy removal preserves membership") {
  Rng rng(555);
  for (int iter = 0; iter < 20; ++iter) {
    int dim = static_cast<int>(rng.range(2, 4));
    Polytope p = testutil::random_small_polytope(rng, dim, 6);
    Polytope q = remove_redundant(p);
    for (int probe = 0; probe < 50; ++probe) {
      Point x;
      for (int j = 0; j < dim; ++j) x.push_back(rat(rng.range(-24, 32), 8));
      CHECK(p.contains(x) == q.contains(x));
    }
  }
}

TEST_CASE("equality is an equivalence relation across representations") {
  Rng rng(99);
  for (int iter = 0; iter < 15; ++iter) {
    int dim = static_cast<int>(rng.range(2, 3));
    Polytope a = testutil::random_small_polytope(rng, dim, 4);
    if (is_empty(a)) continue;
    // Duplicate with scaled rows, shuffled order, and a redundant extra row.
    std::vector<LinearInequality> rows = a.hrep();
    for (auto& row : rows) {
      Rational scale = rat(rng.range(1, 5));
      for (auto& c : row.coeffs) c *= scale;
      row.rhs *= scale;
    }
    std::reverse(rows.begin(), rows.end());
    {
      auto extra = a.hrep()[0];
      extra.rhs += 1;
      rows.push_back(extra);
    }
    Polytope b(dim, rows);
    Polytope c = remove_redundant(a);
    CHECK(poly_equal(a, a));
    CHECK(poly_equal(a, b));
    CHECK(poly_equal(b, a));
    CHECK(poly_equal(b, c));
    CHECK(poly_equal(a, c));
  }
}

TEST_CASE("parallel vertex enumeration matches the serial reference") {
  Rng rng(321);
  for (int iter = 0; iter < 10; ++iter) {
    Polytope p = testutil::random_small_polytope(rng, 4, 10);
    if (is_empty(p)) continue;
    CHECK(vertices(p, false) == vertices(p, true));
  }
}

TEST_CASE("pipelines are bit-stable") {
  Rng rng1(4242), rng2(4242);
  for (int iter = 0; iter < 10; ++iter) {
    Polytope a = testutil::random_small_polytope(rng1, 3, 6);
    Polytope b = testutil::random_small_polytope(rng2, 3, 6);
    Polytope ra = remove_redundant(fm_eliminate(a, 1));
    Polytope rb = remove_redundant(fm_eliminate(b, 1));
    CHECK(ra.canonical_text() == rb.canonical_text());
  }
}
