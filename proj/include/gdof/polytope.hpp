#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdof/rational.hpp"

namespace gdof {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Point = std::vector<Rational>;

// One inequality coeffs.x <= rhs. Canonical form scales the row so the first
// nonzero coefficient has absolute value 1; ties between rows are then a
// plain lexicographic comparison, which makes syntactic dedup meaningful.
struct LinearInequality {
  std::vector<Rational> coeffs;
  Rational rhs;

  LinearInequality() = default;
  LinearInequality(std::vector<Rational> c, Rational r);

  void canonicalize();
  bool is_trivial() const;        // 0.x <= rhs, rhs >= 0
  bool is_contradiction() const;  // 0.x <= rhs, rhs < 0
  Rational lhs_at(const Point& x) const;
  bool holds_at(const Point& x) const;
};

bool operator==(const LinearInequality& a, const LinearInequality& b);
bool row_less(const LinearInequality& a, const LinearInequality& b);

class Polytope {
 public:
  explicit Polytope(int dim) : dim_(dim) {}
  Polytope(int dim, std::vector<LinearInequality> rows);

  // Canonical representation of the empty set: the single row 0.x <= -1.
  static Polytope empty_region(int dim);

  int dim() const { return dim_; }
  const std::vector<LinearInequality>& hrep() const { return rows_; }
  const std::optional<std::vector<Point>>& vrep() const { return vrep_; }
  void set_vrep(std::vector<Point> pts) { vrep_ = std::move(pts); }

  bool contains(const Point& x) const;  // throws DimensionError on mismatch

  // Line-per-row text form; bit-identical across runs for identical inputs.
  std::string canonical_text() const;

 private:
  int dim_ = 0;
  std::vector<LinearInequality> rows_;
  std::optional<std::vector<Point>> vrep_;
};

bool is_empty(const Polytope& p);
bool is_bounded(const Polytope& p);  // empty regions count as bounded

// Projects away coordinate `var`; the result carries no redundant rows.
Polytope fm_eliminate(const Polytope& p, int var);

// Multi-variable elimination used by the larger builders. Eliminates the
// given coordinates back to front with cheap dedup between steps and an
// exact pruning pass at the end (plus intermediate passes when rows pile up).
Polytope fm_eliminate_many(const Polytope& p, std::vector<int> vars);

// Exact minimal sub-representation with the same point set. An infeasible
// input comes back as the canonical empty region so callers can tell vacuous
// systems apart from tiny ones.
Polytope remove_redundant(const Polytope& p);

// Exact extreme points by enumeration of dim-subsets of rows. Throws
// UnboundedError for unbounded inputs; the empty region yields no points.
// Guarded by a row ceiling (64) and a subset-count ceiling.
std::vector<Point> vertices(const Polytope& p, bool parallel = true);

bool poly_subset(const Polytope& a, const Polytope& b);
bool poly_equal(const Polytope& a, const Polytope& b);

}  // namespace gdof
