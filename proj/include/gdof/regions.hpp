#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "gdof/channel.hpp"
#include "gdof/polytope.hpp"

namespace gdof {

struct RegimeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Converse region for a 3-user channel: single-user rows d_i <= delta_i,
// pairwise rows with both min-branches emitted, the triple-sum row, and
// d_i >= 0, pruned down to facets. Valid as an outer bound for every alpha.
Polytope outer_region(const ChannelMatrix& ch);

// Closed-form region of the cyclic (1,a,b) channel, defined for
// 0 <= a <= b <= 1 with b - a <= 1 - b; throws RegimeViolation outside.
Polytope cyclic_region(const Rational& a, const Rational& b);

// Known tighter sum-GDoF value for the cyclic (1,2,2) channel, kept as a
// reference constant; this library only checks it against the generic sum
// row of 4, it does not derive it.
Rational cyclic_122_sum_reference();

using UserOrder = std::array<int, 3>;  // 0-based user indices (i, j, k)

std::string part_label(char variant, const UserOrder& order);  // e.g. "D213"

// The two achievable families, parameterized by a user order (i, j, k).
// Both are defined only when the largest cross link is no stronger than
// min(alpha_ii, alpha_jj); otherwise the part is absent.
std::optional<Polytope> achievable_D_hat(const ChannelMatrix& ch, const UserOrder& order);
std::optional<Polytope> achievable_F_hat(const ChannelMatrix& ch, const UserOrder& order);

struct RegionVerdict {
  Polytope outer{3};
  std::map<std::string, std::optional<Polytope>> parts;  // all 12 labels
  std::optional<std::string> matched;  // label of the part equal to outer
  bool equal = false;
  // Bookkeeping: whether the SLS conditions held, under which antenna
  // relabeling the parts were built, and which part the case analysis
  // predicts. When the conditions fail the outer bound is still emitted but
  // is not known to be tight.
  bool conditions_satisfied = false;
  std::vector<int> antenna_permutation;
  std::optional<std::string> predicted;
  bool outer_known_tight = false;
};

RegionVerdict achievability_verdict(const ChannelMatrix& ch);

const std::array<UserOrder, 6>& all_user_orders();

}  // namespace gdof
