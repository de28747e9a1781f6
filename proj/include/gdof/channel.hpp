#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gdof/rational.hpp"

namespace gdof {

struct ChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// K receivers by M transmit antennas of nonnegative channel-strength
// exponents. alpha[k][m] is the strength of the link from antenna m to
// receiver k.
struct ChannelMatrix {
  int K = 0;
  int M = 0;
  std::vector<std::vector<Rational>> alpha;
};

// Validates shape and nonnegativity (negative strengths are rejected).
ChannelMatrix make_channel(std::vector<std::vector<Rational>> alpha);

struct DeltaSet {
  std::vector<Rational> delta_i;                // best strength per receiver
  std::vector<std::vector<Rational>> delta_ij;  // clipped strength gaps, diagonal unused
  std::optional<Rational> delta3;               // triple-sum bound, K == 3 only
};

DeltaSet compute_deltas(const ChannelMatrix& ch);

struct ConditionViolation {
  std::string rule;  // "max" or "sum"
  int i = 0, k = 0, m = 0;  // 1-based indices as reported
  Rational lhs, rhs;
};

struct ConditionReport {
  bool satisfied = false;
  // Antenna relabeling under which the conditions hold; identity is [0..M-1].
  std::optional<std::vector<int>> witness_permutation;
  // Violations recorded for the identity labeling.
  std::vector<ConditionViolation> violations;
  // Set when M > 6 and only the identity labeling was checked.
  bool identity_only = false;
};

// SLS-optimality test: max(alpha_im, alpha_ki) <= alpha_ii and
// alpha_ki + alpha_im <= alpha_ii + alpha_km for all i,k in [3], m in [M].
// Requires K == 3, M >= 3. Searches antenna relabelings exhaustively for
// M <= 6 when the identity labeling fails.
ConditionReport check_sls_conditions(const ChannelMatrix& ch);

// Cheap yes/no version of the identity-labeling test.
bool sls_conditions_identity(const ChannelMatrix& ch);

// Yes/no over all antenna labelings (exhaustive for M <= 6, identity-only
// beyond), without building a report.
bool sls_conditions_any_labeling(const ChannelMatrix& ch);

ChannelMatrix dual(const ChannelMatrix& ch);  // transpose; requires K == M

ChannelMatrix apply_antenna_permutation(const ChannelMatrix& ch,
                                        const std::vector<int>& perm);

// Simultaneous receiver/antenna relabeling: result[a][b] = alpha[o[a]][o[b]].
// Requires a square channel.
ChannelMatrix apply_user_order(const ChannelMatrix& ch, const std::array<int, 3>& order);

// Three-user cyclic channel: unit direct links, cross links laid out so that
// receiver 1 hears (1, a, b), receiver 2 hears (b, 1, a) and receiver 3
// hears (a, b, 1).
ChannelMatrix cyclic_channel(const Rational& a, const Rational& b);

// TIN optimality for the companion 3-user interference channel, evaluated on
// the 3x3 leading block.
bool tin_optimal_ic(const ChannelMatrix& ch);

}  // namespace gdof
