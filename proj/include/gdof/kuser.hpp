#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdof/channel.hpp"
#include "gdof/polytope.hpp"

namespace gdof {

struct PatternError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered arrangement of distinct elements of {0} u [K]. The sentinel 0 is
// only legal as the head of a length-2 permutation (the seed shape).
struct Permutation {
  std::vector<int> e;

  Permutation() = default;
  explicit Permutation(std::vector<int> elems);
  int size() const { return static_cast<int>(e.size()); }
  bool operator==(const Permutation& o) const { return e == o.e; }
  bool operator<(const Permutation& o) const { return e < o.e; }
  std::string str() const;  // "(1,2,3)"
};

struct MergeResult {
  Permutation u1, u2, u3, u4;
};

// Splits p and q at a shared element into the four pieces; u3 runs through
// the supplied ordering of the tail intersection, u4 through the ordering of
// the tail union.
MergeResult merge(const Permutation& p, const Permutation& q, int shared,
                  const std::vector<int>& u3_order, const std::vector<int>& u4_order);

// Chain value of a permutation: 0 for singletons, delta_{p(2)} for the seed
// shape (0, x), and the sum of consecutive strength gaps otherwise.
Rational f_of_p(const Permutation& p, const DeltaSet& ds);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  enum class Kind { Seed, Combine, Merge };
  Kind kind = Kind::Seed;
  Permutation seed;               // Seed
  DerivationPtr left, right;      // Combine
  DerivationPtr parent;           // Merge
  int b1 = 0, b2 = 0;             // indices into the parent's sorted B
  int shared = 0;
  std::vector<int> u3_order, u4_order;
};

struct BoundingPattern {
  std::vector<Permutation> A, B;  // kept sorted
  DerivationPtr derivation;

  std::string key() const;   // canonical multiset encoding
  std::string str() const;   // "{(0,1),(1,2,3)~}" style, ~ marks B elements
};

BoundingPattern seed_pattern(const Permutation& p);
BoundingPattern combine_patterns(const BoundingPattern& x, const BoundingPattern& y);
BoundingPattern merge_in_pattern(const BoundingPattern& x, int b1, int b2, int shared,
                                 const std::vector<int>& u3_order,
                                 const std::vector<int>& u4_order);

// Rebuilds a pattern from its derivation trace.
BoundingPattern replay(const DerivationPtr& d);

struct GenerationBudget {
  int merge_depth = 2;
  int max_multiset = 8;
  long max_patterns = 100000;
};

struct GenerationStats {
  long emitted = 0;
  bool truncated = false;
};

// Streams seeds, rule-2 sums and rule-3 merge expansions in a fixed
// deterministic order until the budget runs out. The sink returns false to
// stop early.
GenerationStats generate_patterns(int K, const GenerationBudget& budget,
                                  const std::function<bool(const BoundingPattern&)>& sink);

struct GdofBound {
  std::vector<long> coeffs;  // multiplicity of each d_i, i in [K]
  Rational rhs;
  std::string provenance;    // pattern string or closed-form label
};

GdofBound bound_from_pattern(const BoundingPattern& pat, const DeltaSet& ds);

struct KBoundsResult {
  Polytope poly{0};
  bool truncated = false;
  long patterns_generated = 0;
  // Provenance of each surviving hrep row, aligned with poly.hrep(); the
  // derivation pointer is empty for the single-user and nonnegativity rows.
  std::vector<std::string> row_provenance;
  std::vector<DerivationPtr> row_derivations;
};

// Generates bounds within the budget, adds 0 <= d_i <= delta_i, and prunes
// exactly. Budgets default per GenerationBudget; K must be in [2, 8].
KBoundsResult enumerate_outer_bounds(const ChannelMatrix& ch, const GenerationBudget& budget);

// Human-readable derivation chain for kbounds --explain.
std::string explain_derivation(const DerivationPtr& d);

}  // namespace gdof
