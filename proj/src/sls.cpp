#include "gdof/sls.hpp"

#include <algorithm>

#include "gdof/simplex.hpp"

namespace gdof {

std::string variant_name(SlsVariant v) { return v == SlsVariant::D123 ? "D123" : "F123"; }

SlsVariant variant_from_name(const std::string& s) {
  if (s == "D123") return SlsVariant::D123;
  if (s == "F123") return SlsVariant::F123;
  throw ParseError("unknown scheme variant '" + s + "'");
}

namespace {

Rational rmax(std::initializer_list<Rational> xs) { return std::max(xs); }

struct ParamRow {
  std::array<int, 4> par;  // coefficients on (lambda, lambda', gamma, gamma')
  Rational rhs;
  std::string name;
};

std::vector<ParamRow> constraint_table(SlsVariant v, const ChannelMatrix& ch) {
  const auto& a = ch.alpha;
  std::vector<ParamRow> rows;
  if (v == SlsVariant::D123) {
    rows.push_back({{1, 1, 1, 1}, a[0][0], "constraint 1 (lambda+lambda'+gamma+gamma' <= alpha11)"});
    rows.push_back({{1, 1, 0, 0}, a[1][1], "constraint 2 (lambda+lambda' <= alpha22)"});
    rows.push_back({{1, 0, 0, 0}, a[2][2], "constraint 3 (lambda <= alpha33)"});
    rows.push_back({{-1, -1, -1, 0}, -a[0][1], "constraint 4 (alpha12 <= lambda+lambda'+gamma)"});
    rows.push_back({{-1, 0, -1, 0}, -a[0][2], "constraint 5 (alpha13 <= lambda+gamma)"});
    rows.push_back({{-1, -1, 0, -1}, -a[1][0], "constraint 6 (alpha21 <= lambda+lambda'+gamma')"});
    rows.push_back({{-1, 0, 0, 0}, -a[1][2], "constraint 7 (alpha23 <= lambda)"});
    rows.push_back({{-1, 0, 0, -1}, -a[2][0], "constraint 8 (alpha31 <= lambda+gamma')"});
    rows.push_back({{-1, 0, 0, 0}, -a[2][1], "constraint 9 (alpha32 <= lambda)"});
  } else {
    rows.push_back({{1, 1, 1, 0}, a[0][0], "constraint 1 (lambda+lambda'+gamma <= alpha11)"});
    rows.push_back({{1, 1, 0, 1}, a[1][1], "constraint 2 (lambda+lambda'+gamma' <= alpha22)"});
    rows.push_back({{1, 0, 0, 0}, a[2][2], "constraint 3 (lambda <= alpha33)"});
    rows.push_back({{-1, -1, -1, -1}, -a[0][1], "constraint 4 (alpha12 <= lambda+lambda'+gamma+gamma')"});
    rows.push_back({{-1, 0, -1, 0}, -a[0][2], "constraint 5 (alpha13 <= lambda+gamma)"});
    rows.push_back({{-1, -1, 0, 0}, -a[1][0], "constraint 6 (alpha21 <= lambda+lambda')"});
    rows.push_back({{-1, 0, 0, 0}, -a[1][2], "constraint 7 (alpha23 <= lambda)"});
    rows.push_back({{-1, 0, 0, 0}, -a[2][0], "constraint 8 (alpha31 <= lambda)"});
    rows.push_back({{-1, 0, 0, -1}, -a[2][1], "constraint 9 (alpha32 <= lambda+gamma')"});
  }
  static const char* pname[4] = {"lambda", "lambda'", "gamma", "gamma'"};
  for (int j = 0; j < 4; ++j) {
    std::array<int, 4> c{};
    c[j] = -1;
    rows.push_back({c, Rational(0), std::string("constraint 10 (0 <= ") + pname[j] + ")"});
  }
  return rows;
}

std::array<Rational, 4> param_vec(const SlsParams& p) {
  return {p.lambda, p.lambda_p, p.gamma, p.gamma_p};
}

// One region row: d-part . (d1,d2,d3) <= alpha_part + par . params.
struct RegionRow {
  std::array<int, 3> d;
  Rational alpha_part;
  std::array<int, 4> par;
};

std::vector<RegionRow> region_rows(SlsVariant v, const ChannelMatrix& ch) {
  const auto& a = ch.alpha;
  Rational total = a[0][0] + a[1][1] + a[2][2];
  if (v == SlsVariant::D123) {
    return {
        {{1, 0, 0}, a[0][0], {0, 0, -1, -1}},
        {{0, 1, 0}, a[1][1], {0, 0, 0, 0}},
        {{0, 0, 1}, a[2][2], {0, 0, 0, 0}},
        {{1, 1, 0}, a[0][0] + a[1][1], {-1, -1, -1, -1}},
        {{1, 0, 1}, a[0][0] + a[2][2], {-1, 0, -1, -1}},
        {{0, 1, 1}, a[1][1] + a[2][2], {-1, 0, 0, 0}},
        {{1, 1, 1}, total, {-2, -1, -1, -1}},
    };
  }
  return {
      {{1, 0, 0}, a[0][0], {0, 0, -1, 0}},
      {{0, 1, 0}, a[1][1], {0, 0, 0, -1}},
      {{0, 0, 1}, a[2][2], {0, 0, 0, 0}},
      {{1, 1, 0}, a[0][0] + a[1][1], {-1, -1, -1, -1}},
      {{1, 0, 1}, a[0][0] + a[2][2], {-1, 0, -1, 0}},
      {{0, 1, 1}, a[1][1] + a[2][2], {-1, 0, 0, -1}},
      {{1, 1, 1}, total, {-2, -1, -1, -1}},
  };
}

void require_3x3(const ChannelMatrix& ch, const char* what) {
  if (ch.K != 3 || ch.M < 3) throw ChannelError(std::string(what) + " requires K == 3, M >= 3");
}

Polytope param_region(SlsVariant v, const ChannelMatrix& ch, const SlsParams& p) {
  require_3x3(ch, "param region");
  if (auto bad = constraint_violation(v, ch, p))
    throw ConstraintViolation(*bad, "parameters outside the feasible set");
  auto pv = param_vec(p);
  std::vector<LinearInequality> rows;
  for (const auto& rr : region_rows(v, ch)) {
    std::vector<Rational> c(3);
    for (int j = 0; j < 3; ++j) c[j] = rr.d[j];
    Rational rhs = rr.alpha_part;
    for (int j = 0; j < 4; ++j) rhs += rr.par[j] * pv[j];
    rows.emplace_back(std::move(c), rhs);
  }
  for (int j = 0; j < 3; ++j) {
    std::vector<Rational> c(3, Rational(0));
    c[j] = -1;
    rows.emplace_back(std::move(c), Rational(0));
  }
  return Polytope(3, std::move(rows));
}

// Caps on (s1, s2, s3, s12, s123) per variant.
std::array<Rational, 5> layer_caps(SlsVariant v, const ChannelMatrix& ch,
                                   const SlsParams& p) {
  const auto& a = ch.alpha;
  if (v == SlsVariant::D123)
    return {a[0][0] - p.lambda - p.lambda_p - p.gamma - p.gamma_p,
            a[1][1] - p.lambda - p.lambda_p, a[2][2] - p.lambda, p.lambda_p,
            p.lambda};
  return {a[0][0] - p.lambda - p.lambda_p - p.gamma,
          a[1][1] - p.lambda - p.lambda_p - p.gamma_p, a[2][2] - p.lambda,
          p.lambda_p, p.lambda};
}

}  // namespace

std::optional<std::string> constraint_violation(SlsVariant variant,
                                                const ChannelMatrix& ch,
                                                const SlsParams& p) {
  require_3x3(ch, "constraint check");
  auto pv = param_vec(p);
  for (const auto& row : constraint_table(variant, ch)) {
    Rational lhs(0);
    for (int j = 0; j < 4; ++j) lhs += row.par[j] * pv[j];
    if (lhs > row.rhs) return row.name;
  }
  return std::nullopt;
}

void param_constraint_rows(SlsVariant variant, const ChannelMatrix& ch,
                           std::vector<std::vector<Rational>>& A,
                           std::vector<Rational>& b) {
  for (const auto& row : constraint_table(variant, ch)) {
    std::vector<Rational> c(4);
    for (int j = 0; j < 4; ++j) c[j] = row.par[j];
    A.push_back(std::move(c));
    b.push_back(row.rhs);
  }
}

Polytope param_region_D(const ChannelMatrix& ch, const SlsParams& p) {
  return param_region(SlsVariant::D123, ch, p);
}

Polytope param_region_F(const ChannelMatrix& ch, const SlsParams& p) {
  return param_region(SlsVariant::F123, ch, p);
}

// Variables of the reduced split system: (d1, d2, d3, w1, w2, y1, y2, y3).
// w are the pair-layer shares, y the triple-layer shares; the private loads
// s_k were substituted out through the defining equalities.
Polytope full_region_reduced(SlsVariant v, const ChannelMatrix& ch, const SlsParams& p) {
  require_3x3(ch, "full region");
  if (auto bad = constraint_violation(v, ch, p))
    throw ConstraintViolation(*bad, "parameters outside the feasible set");
  auto caps = layer_caps(v, ch, p);
  auto row = [](std::initializer_list<std::pair<int, int>> terms, const Rational& rhs) {
    std::vector<Rational> c(8, Rational(0));
    for (auto [idx, coef] : terms) c[idx] = coef;
    return LinearInequality(std::move(c), rhs);
  };
  std::vector<LinearInequality> rows;
  // s_k <= cap_k and s_k >= 0 with s1 = d1-w1-y1, s2 = d2-w2-y2, s3 = d3-y3.
  rows.push_back(row({{0, 1}, {3, -1}, {5, -1}}, caps[0]));
  rows.push_back(row({{0, -1}, {3, 1}, {5, 1}}, Rational(0)));
  rows.push_back(row({{1, 1}, {4, -1}, {6, -1}}, caps[1]));
  rows.push_back(row({{1, -1}, {4, 1}, {6, 1}}, Rational(0)));
  rows.push_back(row({{2, 1}, {7, -1}}, caps[2]));
  rows.push_back(row({{2, -1}, {7, 1}}, Rational(0)));
  // Pair and triple layer caps on the share sums.
  rows.push_back(row({{3, 1}, {4, 1}}, caps[3]));
  rows.push_back(row({{5, 1}, {6, 1}, {7, 1}}, caps[4]));
  for (int j = 0; j < 8; ++j) rows.push_back(row({{j, -1}}, Rational(0)));
  Polytope sys(8, std::move(rows));
  return fm_eliminate_many(sys, {3, 4, 5, 6, 7});
}

namespace {

Polytope full_region(SlsVariant variant, const ChannelMatrix& ch, const SlsParams& p) {
  require_3x3(ch, "full region");
  if (auto bad = constraint_violation(variant, ch, p))
    throw ConstraintViolation(*bad, "parameters outside the feasible set");
  auto caps = layer_caps(variant, ch, p);
  // Variables: d1 d2 d3 | s1 s2 s3 s12 s123 | w1 w2 | y1 y2 y3.
  auto row = [](std::initializer_list<std::pair<int, int>> terms, const Rational& rhs) {
    std::vector<Rational> c(13, Rational(0));
    for (auto [idx, coef] : terms) c[idx] = coef;
    return LinearInequality(std::move(c), rhs);
  };
  std::vector<LinearInequality> rows;
  auto equality = [&](std::initializer_list<std::pair<int, int>> terms) {
    std::vector<std::pair<int, int>> neg;
    for (auto [idx, coef] : terms) neg.emplace_back(idx, -coef);
    rows.push_back(row(terms, Rational(0)));
    std::vector<Rational> c(13, Rational(0));
    for (auto [idx, coef] : neg) c[idx] = coef;
    rows.emplace_back(std::move(c), Rational(0));
  };
  equality({{0, 1}, {3, -1}, {8, -1}, {10, -1}});   // d1 = s1 + w1 + y1
  equality({{1, 1}, {4, -1}, {9, -1}, {11, -1}});   // d2 = s2 + w2 + y2
  equality({{2, 1}, {5, -1}, {12, -1}});            // d3 = s3 + y3
  equality({{6, 1}, {8, -1}, {9, -1}});             // s12 = w1 + w2
  equality({{7, 1}, {10, -1}, {11, -1}, {12, -1}}); // s123 = y1 + y2 + y3
  for (int j = 0; j < 5; ++j) rows.push_back(row({{3 + j, 1}}, caps[j]));
  for (int j = 0; j < 13; ++j) rows.push_back(row({{j, -1}}, Rational(0)));
  Polytope sys(13, std::move(rows));
  return fm_eliminate_many(sys, {3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
}

}  // namespace

Polytope full_region_D123(const ChannelMatrix& ch, const SlsParams& p) {
  return full_region(SlsVariant::D123, ch, p);
}

Polytope full_region_F123(const ChannelMatrix& ch, const SlsParams& p) {
  return full_region(SlsVariant::F123, ch, p);
}

SplitCheck validate_rate_split(const SlsScheme& s) {
  SplitCheck out;
  const RateSplit& sp = s.split;
  auto caps = layer_caps(s.variant, s.channel, s.params);
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.failure = why;
    return out;
  };
  for (int k = 0; k < 3; ++k)
    if (sp.d_single[k] < 0) return fail("negative private load");
  if (sp.d_pair < 0 || sp.d_all < 0) return fail("negative layer load");
  for (const auto& m : sp.mu)
    if (m < 0) return fail("negative pair share");
  for (const auto& x : sp.xi)
    if (x < 0) return fail("negative triple share");
  if (sp.mu[0] + sp.mu[1] != 1) return fail("pair shares must sum to 1");
  if (sp.xi[0] + sp.xi[1] + sp.xi[2] != 1) return fail("triple shares must sum to 1");
  for (int k = 0; k < 3; ++k)
    if (sp.d_single[k] > caps[k]) return fail("private load exceeds its cap");
  if (sp.d_pair > caps[3]) return fail("pair load exceeds its cap");
  if (sp.d_all > caps[4]) return fail("triple load exceeds its cap");
  out.ok = true;
  out.induced[0] = sp.d_single[0] + sp.mu[0] * sp.d_pair + sp.xi[0] * sp.d_all;
  out.induced[1] = sp.d_single[1] + sp.mu[1] * sp.d_pair + sp.xi[1] * sp.d_all;
  out.induced[2] = sp.d_single[2] + sp.xi[2] * sp.d_all;
  return out;
}

namespace {

enum Sym {
  A11, A12, A13, A21, A22, A23, A31, A32, A33, LAM, LAMP, GAM, GAMP, NSYM
};

using Branch = std::vector<std::pair<int, int>>;  // (symbol, coefficient)

struct LayerRow {
  int receiver;  // 1-based
  const char* layer;
  std::vector<Branch> branches;
};

const std::vector<LayerRow>& sinr_table(SlsVariant v) {
  static const std::vector<LayerRow> d_table = {
      {1, "123", {{{LAM, 1}},
                  {{A11, 1}, {GAMP, -1}},
                  {{LAM, 1}, {A11, 1}, {GAMP, -1}, {A12, -1}},
                  {{LAM, 1}, {A11, 1}, {GAMP, -1}, {A13, -1}}}},
      {1, "12", {{{LAMP, 1}},
                 {{A11, 1}, {LAM, -1}, {GAMP, -1}},
                 {{LAMP, 1}, {A11, 1}, {GAMP, -1}, {A12, -1}},
                 {{A11, 1}, {GAMP, -1}, {A13, -1}}}},
      {1, "1", {{{A11, 1}, {LAM, -1}, {LAMP, -1}, {GAM, -1}, {GAMP, -1}},
                {{A11, 1}, {A12, -1}, {GAMP, -1}},
                {{A11, 1}, {A13, -1}, {GAMP, -1}, {LAMP, -1}}}},
      {2, "123", {{{A22, 1}},
                  {{LAM, 1}},
                  {{LAM, 1}, {A22, 1}, {GAMP, 1}, {A21, -1}},
                  {{LAM, 1}, {A22, 1}, {A23, -1}}}},
      {2, "12", {{{LAMP, 1}},
                 {{A22, 1}, {LAM, -1}},
                 {{A22, 1}, {LAMP, 1}, {GAMP, 1}, {A21, -1}},
                 {{A22, 1}, {A23, -1}}}},
      {2, "2", {{{A22, 1}, {LAM, -1}, {LAMP, -1}},
                {{A22, 1}, {A21, -1}, {GAMP, 1}},
                {{A22, 1}, {A23, -1}, {LAMP, -1}}}},
      {3, "123", {{{A33, 1}},
                  {{LAM, 1}},
                  {{LAM, 1}, {A33, 1}, {GAMP, 1}, {A31, -1}},
                  {{LAM, 1}, {A33, 1}, {A32, -1}}}},
      {3, "3", {{{A33, 1}, {LAM, -1}},
                {{A33, 1}, {A31, -1}, {GAMP, 1}},
                {{A33, 1}, {A32, -1}}}},
  };
  static const std::vector<LayerRow> f_table = {
      {1, "123", {{{A11, 1}},
                  {{LAM, 1}},
                  {{LAM, 1}, {A11, 1}, {GAMP, 1}, {A12, -1}},
                  {{LAM, 1}, {A11, 1}, {A13, -1}}}},
      {1, "12", {{{LAMP, 1}},
                 {{A11, 1}, {LAM, -1}},
                 {{LAMP, 1}, {A11, 1}, {GAMP, 1}, {A12, -1}},
                 {{A11, 1}, {A13, -1}}}},
      {1, "1", {{{A11, 1}, {LAM, -1}, {LAMP, -1}},
                {{A11, 1}, {A12, -1}, {GAMP, 1}},
                {{A11, 1}, {A13, -1}, {LAMP, -1}}}},
      {2, "123", {{{A22, 1}, {GAMP, -1}},
                  {{LAM, 1}},
                  {{LAM, 1}, {A22, 1}, {GAMP, -1}, {A21, -1}},
                  {{LAM, 1}, {A22, 1}, {GAMP, -1}, {A23, -1}}}},
      {2, "12", {{{LAMP, 1}},
                 {{A22, 1}, {GAMP, -1}, {LAM, -1}},
                 {{LAMP, 1}, {A22, 1}, {GAMP, -1}, {A21, -1}},
                 {{A22, 1}, {GAMP, -1}, {A23, -1}}}},
      {2, "2", {{{A22, 1}, {LAM, -1}, {LAMP, -1}, {GAMP, -1}},
                {{A22, 1}, {A21, -1}, {GAMP, -1}},
                {{A22, 1}, {A23, -1}, {LAMP, -1}, {GAMP, -1}}}},
      {3, "123", {{{A33, 1}},
                  {{LAM, 1}},
                  {{LAM, 1}, {A33, 1}, {A31, -1}},
                  {{LAM, 1}, {A33, 1}, {GAMP, 1}, {A32, -1}}}},
      {3, "3", {{{A33, 1}, {LAM, -1}},
                {{A33, 1}, {A31, -1}},
                {{A33, 1}, {A32, -1}, {GAMP, 1}}}},
  };
  return v == SlsVariant::D123 ? d_table : f_table;
}

Rational sym_value(int sym, const ChannelMatrix& ch, const SlsParams& p) {
  if (sym < 9) return ch.alpha[sym / 3][sym % 3];
  switch (sym) {
    case LAM: return p.lambda;
    case LAMP: return p.lambda_p;
    case GAM: return p.gamma;
    default: return p.gamma_p;
  }
}

}  // namespace

std::vector<std::string> decode_order(int receiver) {
  switch (receiver) {
    case 1: return {"123", "12", "1"};
    case 2: return {"123", "12", "2"};
    case 3: return {"123", "3"};
    default: throw std::invalid_argument("receiver index out of range");
  }
}

std::vector<std::string> scheme_layers() { return {"123", "12", "1", "2", "3"}; }

bool antenna_carries(SlsVariant, int antenna, const std::string& layer) {
  if (layer == "123") return true;
  if (layer == "12") return antenna == 0 || antenna == 1;
  if (layer == "1") return antenna == 0;
  if (layer == "2") return antenna == 1;
  if (layer == "3") return antenna == 2;
  throw std::invalid_argument("unknown layer '" + layer + "'");
}

int attenuated_antenna(SlsVariant v) { return v == SlsVariant::D123 ? 0 : 1; }

SinrReport sinr_exponents(const SlsScheme& s) {
  require_3x3(s.channel, "SINR exponents");
  SinrReport rep;
  rep.feasible = true;
  auto load_of = [&](const std::string& layer) -> Rational {
    if (layer == "123") return s.split.d_all;
    if (layer == "12") return s.split.d_pair;
    return s.split.d_single[layer[0] - '1'];
  };
  for (const auto& row : sinr_table(s.variant)) {
    SinrEntry e;
    e.receiver = row.receiver;
    e.layer = row.layer;
    e.load = load_of(row.layer);
    bool first = true;
    for (const auto& br : row.branches) {
      Rational val(0);
      for (auto [sym, coef] : br) val += coef * sym_value(sym, s.channel, s.params);
      e.branches.push_back(val);
      if (first || val < e.exponent) e.exponent = val;
      first = false;
    }
    if (e.load > e.exponent) rep.feasible = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

namespace {

struct TableCandidate {
  std::string name;
  std::array<Rational, 3> point;
  std::vector<std::pair<bool, SlsParams>> cases;  // (guard holds, params)
};

// Corner-point parameter tables for the D-family region in the coordinates
// of one user order. Guards are evaluated exactly; the first valid case wins.
std::vector<TableCandidate> corner_tables(const ChannelMatrix& ch) {
  const auto& a = ch.alpha;
  Rational mx = rmax({a[0][1], a[0][2], a[1][0], a[1][2], a[2][0], a[2][1]});
  Rational m4 = rmax({a[1][2], a[2][1], a[2][0], a[0][2]});
  Rational m2 = std::max(a[1][2], a[2][1]);
  Rational asum = rmax({mx + m2, a[0][2] + a[1][0], a[0][1] + a[2][0], a[0][2] + a[2][0]});
  Rational maxall = mx;
  for (int i = 0; i < 3; ++i) maxall = std::max(maxall, a[i][i]);

  std::vector<TableCandidate> out;

  out.push_back({"A",
                 {a[0][0], a[1][1] - mx, a[2][2] - m4},
                 {{true, {m4, mx - m4, Rational(0), Rational(0)}}}});

  auto b_cases = [&](const Rational& lam) {
    std::vector<std::pair<bool, SlsParams>> cs;
    Rational g13 = a[0][2] - m2, g31 = a[2][0] - m2;
    cs.push_back({a[0][2] + a[1][0] == asum, {lam, a[1][0] - a[2][0], g13, g31}});
    cs.push_back({a[0][2] + a[2][0] == asum, {lam, Rational(0), g13, g31}});
    cs.push_back({a[0][1] + a[2][0] == asum, {lam, a[0][1] - a[0][2], g13, g31}});
    Rational r12 = rmax({a[1][0], a[2][1], a[1][2]});
    cs.push_back({mx + lam == asum && mx == a[0][1],
                  {lam, r12 - lam, a[0][1] - r12, Rational(0)}});
    cs.push_back({mx + lam == asum && mx == a[0][2],
                  {lam, Rational(0), a[0][2] - m2, Rational(0)}});
    Rational r21 = rmax({a[0][1], a[1][2], a[2][1]});
    cs.push_back({mx + lam == asum && mx == a[1][0],
                  {lam, r21 - lam, Rational(0), a[1][0] - r21}});
    cs.push_back({mx + lam == asum && mx == a[2][0],
                  {lam, Rational(0), Rational(0), a[2][0] - m2}});
    cs.push_back({mx + lam == asum && mx == m2,
                  {lam, Rational(0), Rational(0), Rational(0)}});
    return cs;
  };
  out.push_back({"B", {a[0][0] - asum + m2, a[1][1], a[2][2] - m2}, b_cases(m2)});

  {
    Rational lam = asum - mx;
    std::vector<std::pair<bool, SlsParams>> cs;
    Rational r12 = rmax({a[1][0], a[2][1], a[1][2]});
    cs.push_back({mx == a[0][1], {lam, r12 - lam, a[0][1] - r12, Rational(0)}});
    Rational r21 = rmax({a[0][1], a[2][1], a[1][2]});
    cs.push_back({mx == a[1][0], {lam, r21 - lam, Rational(0), a[1][0] - r21}});
    cs.push_back({mx == a[2][0], {lam, Rational(0), Rational(0), a[2][0] - lam}});
    cs.push_back({mx == a[0][2], {lam, Rational(0), a[0][2] - lam, Rational(0)}});
    cs.push_back({mx == m2, {lam, Rational(0), Rational(0), Rational(0)}});
    out.push_back({"C", {a[0][0] - mx, a[1][1], a[2][2] + mx - asum}, cs});
  }

  {
    std::vector<std::pair<bool, SlsParams>> cs;
    {
      Rational lam = rmax({a[1][2], a[2][1], a[2][0]});
      cs.push_back({m4 == a[0][2], {lam, asum - a[0][2] - lam, a[0][2] - lam, Rational(0)}});
    }
    {
      Rational lam = rmax({a[1][2], a[2][1], a[0][2]});
      cs.push_back({m4 == a[2][0], {lam, asum - a[2][0] - lam, Rational(0), a[2][0] - lam}});
    }
    cs.push_back({m4 == m2, {m2, asum - 2 * m2, Rational(0), Rational(0)}});
    out.push_back({"D", {a[0][0] - m4, a[1][1] + m4 - asum, a[2][2]}, cs});
  }

  out.push_back({"E", {a[0][0] - asum + m2, a[1][1] - m2, a[2][2]}, b_cases(m2)});

  {
    Rational lam = asum - mx;
    Rational lamp = mx - m4;
    Rational gam = rmax({a[0][2] - lam, a[0][1] - lam - lamp, Rational(0)});
    Rational gamp = mx + m4 - asum - gam;
    out.push_back({"F",
                   {a[0][0] + asum - mx - m4, a[1][1] + m4 - asum, a[2][2] + mx - asum},
                   {{true, {lam, lamp, gam, gamp}}}});
  }

  out.push_back({"O",
                 {Rational(0), Rational(0), Rational(0)},
                 {{true, {maxall, maxall, maxall, maxall}}}});
  return out;
}

bool params_nonneg(const SlsParams& p) {
  return p.lambda >= 0 && p.lambda_p >= 0 && p.gamma >= 0 && p.gamma_p >= 0;
}

bool point_in_param_region(SlsVariant v, const ChannelMatrix& ch, const SlsParams& p,
                           const std::array<Rational, 3>& x) {
  auto pv = param_vec(p);
  for (const auto& rr : region_rows(v, ch)) {
    Rational lhs(0), rhs = rr.alpha_part;
    for (int j = 0; j < 3; ++j) lhs += rr.d[j] * x[j];
    for (int j = 0; j < 4; ++j) rhs += rr.par[j] * pv[j];
    if (lhs > rhs) return false;
  }
  for (int j = 0; j < 3; ++j)
    if (x[j] < 0) return false;
  return true;
}

}  // namespace

std::optional<VertexParams> params_for_vertex(const ChannelMatrix& ch, const Point& v) {
  require_3x3(ch, "params_for_vertex");
  if (v.size() != 3) throw DimensionError("params_for_vertex expects a 3d point");

  std::optional<std::string> miss;

  for (const auto& o : all_user_orders()) {
    ChannelMatrix work = apply_user_order(ch, o);
    std::array<Rational, 3> tv = {v[o[0]], v[o[1]], v[o[2]]};
    for (const auto& cand : corner_tables(work)) {
      if (!(cand.point[0] == tv[0] && cand.point[1] == tv[1] && cand.point[2] == tv[2]))
        continue;
      for (const auto& [guard, params] : cand.cases) {
        if (!guard) continue;
        if (params_nonneg(params) &&
            !constraint_violation(SlsVariant::D123, work, params) &&
            point_in_param_region(SlsVariant::D123, work, params, tv)) {
          VertexParams out;
          out.variant = SlsVariant::D123;
          out.order = o;
          out.params = params;
          out.source = "table:" + cand.name;
          out.table_miss = miss;
          return out;
        }
        miss = "table:" + cand.name;
      }
    }
  }

  // Exact LP fallback: feasibility over the parameter constraints plus the
  // affine membership rows of the target point, lexicographically minimal in
  // (lambda, lambda', gamma, gamma').
  for (const auto& o : all_user_orders()) {
    ChannelMatrix work = apply_user_order(ch, o);
    std::array<Rational, 3> tv = {v[o[0]], v[o[1]], v[o[2]]};
    bool coords_ok = tv[0] >= 0 && tv[1] >= 0 && tv[2] >= 0;
    if (!coords_ok) continue;
    for (SlsVariant variant : {SlsVariant::D123, SlsVariant::F123}) {
      std::vector<std::vector<Rational>> A;
      std::vector<Rational> b;
      param_constraint_rows(variant, work, A, b);
      bool possible = true;
      for (const auto& rr : region_rows(variant, work)) {
        Rational dval(0);
        for (int j = 0; j < 3; ++j) dval += rr.d[j] * tv[j];
        // d.v <= alpha_part + par.params  <=>  -par.params <= alpha_part - d.v
        std::vector<Rational> c(4);
        bool all_zero = true;
        for (int j = 0; j < 4; ++j) {
          c[j] = -rr.par[j];
          if (rr.par[j] != 0) all_zero = false;
        }
        Rational rhs = rr.alpha_part - dval;
        if (all_zero) {
          if (rhs < 0) { possible = false; break; }
          continue;
        }
        A.push_back(std::move(c));
        b.push_back(rhs);
      }
      if (!possible) continue;
      std::vector<std::vector<Rational>> objectives;
      for (int j = 0; j < 4; ++j) {
        std::vector<Rational> e(4, Rational(0));
        e[j] = 1;
        objectives.push_back(std::move(e));
      }
      auto sol = lp_lex_min(A, b, objectives);
      if (!sol) continue;
      VertexParams out;
      out.variant = variant;
      out.order = o;
      out.params = {(*sol)[0], (*sol)[1], (*sol)[2], (*sol)[3]};
      out.source = "lp";
      out.table_miss = miss;
      return out;
    }
  }
  return std::nullopt;
}

std::optional<RateSplit> split_for_point(SlsVariant variant, const ChannelMatrix& ch,
                                         const SlsParams& p,
                                         const std::array<Rational, 3>& target) {
  require_3x3(ch, "split_for_point");
  auto caps = layer_caps(variant, ch, p);
  // Variables: s1 s2 s3 s12 s123 w1 w2 y1 y2 y3.
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  auto row = [&](std::initializer_list<std::pair<int, int>> terms, const Rational& rhs) {
    std::vector<Rational> c(10, Rational(0));
    for (auto [idx, coef] : terms) c[idx] = coef;
    A.push_back(std::move(c));
    b.push_back(rhs);
  };
  auto equality = [&](std::initializer_list<std::pair<int, int>> terms,
                      const Rational& rhs) {
    row(terms, rhs);
    std::vector<Rational> c(10, Rational(0));
    for (auto [idx, coef] : terms) c[idx] = -coef;
    A.push_back(std::move(c));
    b.push_back(-rhs);
  };
  equality({{0, 1}, {5, 1}, {7, 1}}, target[0]);
  equality({{1, 1}, {6, 1}, {8, 1}}, target[1]);
  equality({{2, 1}, {9, 1}}, target[2]);
  equality({{3, 1}, {5, -1}, {6, -1}}, Rational(0));
  equality({{4, 1}, {7, -1}, {8, -1}, {9, -1}}, Rational(0));
  for (int j = 0; j < 5; ++j) row({{j, 1}}, caps[j]);
  for (int j = 0; j < 10; ++j) row({{j, -1}}, Rational(0));

  auto sol = lp_feasible_point(A, b);
  if (!sol) return std::nullopt;
  const auto& x = *sol;
  RateSplit sp;
  sp.d_single = {x[0], x[1], x[2]};
  sp.d_pair = x[3];
  sp.d_all = x[4];
  if (x[3] > 0) {
    sp.mu = {x[5] / x[3], x[6] / x[3]};
  } else {
    sp.mu = {Rational(1), Rational(0)};
  }
  if (x[4] > 0) {
    sp.xi = {x[7] / x[4], x[8] / x[4], x[9] / x[4]};
  } else {
    sp.xi = {Rational(1), Rational(0), Rational(0)};
  }
  return sp;
}

}  // namespace gdof
