#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gdof/channel.hpp"
#include "gdof/polytope.hpp"
#include "gdof/regions.hpp"

namespace gdof {

struct ConstraintViolation : std::runtime_error {
  ConstraintViolation(std::string row, std::string detail)
      : std::runtime_error(row + ": " + detail), row_name(std::move(row)) {}
  std::string row_name;
};

// The four power-control exponents of a layered scheme.
struct SlsParams {
  Rational lambda, lambda_p, gamma, gamma_p;
};

enum class SlsVariant { D123, F123 };

std::string variant_name(SlsVariant v);
SlsVariant variant_from_name(const std::string& s);

// Rate split across the five message layers: per-user private loads, the
// {1,2} pair load with shares mu, and the {1,2,3} load with shares xi.
struct RateSplit {
  std::array<Rational, 3> d_single{};
  Rational d_pair{}, d_all{};
  std::array<Rational, 2> mu{};
  std::array<Rational, 3> xi{};
};

struct SlsScheme {
  SlsVariant variant = SlsVariant::D123;
  SlsParams params;
  RateSplit split;
  ChannelMatrix channel;
};

// Returns the name of the first violated parameter constraint ("constraint 4
// (alpha12 <= lambda+lambda'+gamma)") or nullopt when all ten hold.
std::optional<std::string> constraint_violation(SlsVariant variant,
                                                const ChannelMatrix& ch,
                                                const SlsParams& p);

// Parameter-constraint polytope rows over (lambda, lambda', gamma, gamma').
void param_constraint_rows(SlsVariant variant, const ChannelMatrix& ch,
                           std::vector<std::vector<Rational>>& A,
                           std::vector<Rational>& b);

// Seven-row region in (d1, d2, d3) for fixed feasible parameters. Throws
// ConstraintViolation when the parameters break a constraint row.
Polytope param_region_D(const ChannelMatrix& ch, const SlsParams& p);
Polytope param_region_F(const ChannelMatrix& ch, const SlsParams& p);

// The raw achievable region: thirteen variables (the GDoF triple, the five
// layer loads, the pair and triple shares), the defining equalities as row
// pairs, and all ten auxiliaries removed by Fourier-Motzkin steps. Equal to
// the param_region of the same inputs.
Polytope full_region_D123(const ChannelMatrix& ch, const SlsParams& p);
Polytope full_region_F123(const ChannelMatrix& ch, const SlsParams& p);

// Faster equivalent that removes the five equalities by substitution first
// and eliminates only the share variables; kept as a cross-check.
Polytope full_region_reduced(SlsVariant variant, const ChannelMatrix& ch,
                             const SlsParams& p);

struct SplitCheck {
  bool ok = false;
  std::array<Rational, 3> induced{};  // (d1, d2, d3) realized by the split
  std::string failure;                // first failed cap / share equation
};

SplitCheck validate_rate_split(const SlsScheme& s);

// One decoded layer at one receiver: the min-of-affine SINR exponent, the
// branch values behind the min, and the GDoF load the layer carries.
struct SinrEntry {
  int receiver = 0;           // 1-based
  std::string layer;          // "123", "12", "1", "2", "3"
  Rational exponent;
  Rational load;
  std::vector<Rational> branches;
};

struct SinrReport {
  std::vector<SinrEntry> entries;
  bool feasible = false;
};

SinrReport sinr_exponents(const SlsScheme& s);

// Decode orders and layer/antenna structure shared with the simulator.
std::vector<std::string> decode_order(int receiver);          // receiver 1..3
std::vector<std::string> scheme_layers();                     // all five layers
bool antenna_carries(SlsVariant v, int antenna, const std::string& layer);
int attenuated_antenna(SlsVariant v);  // 0-based antenna with the P^-gamma' factor

// Explicit parameters placing a point of the matched achievable part inside
// a fixed-parameter region. The closed-form corner tables are tried first
// (per user order, D family); every table hit is validated before being
// returned and a miss falls back to an exact lexicographic-minimal LP over
// the parameter constraints. Scheme constraints are evaluated in the
// channel's given antenna labeling; for a channel that conforms only under
// a relabeling, relabel first (the verdict reports the permutation).
struct VertexParams {
  SlsVariant variant = SlsVariant::D123;
  UserOrder order{0, 1, 2};
  SlsParams params;
  std::string source;                    // "table:A", "table:B3", "lp", ...
  std::optional<std::string> table_miss; // set when a table row failed validation
};

std::optional<VertexParams> params_for_vertex(const ChannelMatrix& ch, const Point& v);

// Completes the end-to-end construction: a rate split whose induced point is
// exactly `target` under the given variant/params (users already reordered).
std::optional<RateSplit> split_for_point(SlsVariant variant, const ChannelMatrix& ch,
                                         const SlsParams& p,
                                         const std::array<Rational, 3>& target);

}  // namespace gdof
