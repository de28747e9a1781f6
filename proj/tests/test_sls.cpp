#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gdof/simplex.hpp"
#include "gdof/sls.hpp"
#include "test_util.hpp"

using namespace gdof;
using testutil::Rng;

namespace {

SlsParams p4(const Rational& l, const Rational& lp, const Rational& g, const Rational& gp) {
  return SlsParams{l, lp, g, gp};
}

ChannelMatrix zero_channel() {
  return make_channel(
      std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, rat(0))));
}

RateSplit zero_split() {
  RateSplit s;
  s.mu = {rat(1), rat(0)};
  s.xi = {rat(1), rat(0), rat(0)};
  return s;
}

RateSplit vertex_a_split() {
  RateSplit s;
  s.d_single = {rat(1, 10), rat(1, 5), rat(1, 10)};
  s.d_pair = rat(1, 5);
  s.d_all = rat(9, 10);
  s.mu = {rat(1), rat(0)};
  s.xi = {rat(1), rat(0), rat(0)};
  return s;
}

// Random split obeying the caps, shares on a coarse rational grid.
RateSplit random_valid_split(SlsVariant v, const ChannelMatrix& ch, const SlsParams& p,
                             Rng& rng) {
  const auto& a = ch.alpha;
  Rational caps[5];
  if (v == SlsVariant::D123) {
    caps[0] = a[0][0] - p.lambda - p.lambda_p - p.gamma - p.gamma_p;
    caps[1] = a[1][1] - p.lambda - p.lambda_p;
    caps[2] = a[2][2] - p.lambda;
  } else {
    caps[0] = a[0][0] - p.lambda - p.lambda_p - p.gamma;
    caps[1] = a[1][1] - p.lambda - p.lambda_p - p.gamma_p;
    caps[2] = a[2][2] - p.lambda;
  }
  caps[3] = p.lambda_p;
  caps[4] = p.lambda;
  RateSplit s;
  for (int k = 0; k < 3; ++k) s.d_single[k] = caps[k] * rat(rng.range(0, 4), 4);
  s.d_pair = caps[3] * rat(rng.range(0, 4), 4);
  s.d_all = caps[4] * rat(rng.range(0, 4), 4);
  Rational m = rat(rng.range(0, 4), 4);
  s.mu = {m, 1 - m};
  Rational x1 = rat(rng.range(0, 4), 4);
  Rational x2 = (1 - x1) * rat(rng.range(0, 4), 4);
  s.xi = {x1, x2, 1 - x1 - x2};
  return s;
}

}  // namespace

TEST_CASE("fixed-parameter region rows on the reference channel") {
  Polytope r = param_region_D(testutil::reference_channel(), p4(rat(9, 10), rat(1, 5), rat(0), rat(0)));
  std::map<std::vector<Rational>, Rational> rows;
  for (const auto& row : r.hrep()) rows[row.coeffs] = row.rhs;
  CHECK(rows[{rat(1), rat(0), rat(0)}] == rat(6, 5));
  CHECK(rows[{rat(0), rat(1), rat(0)}] == rat(13, 10));
  CHECK(rows[{rat(0), rat(0), rat(1)}] == rat(1));
  CHECK(rows[{rat(1), rat(1), rat(0)}] == rat(7, 5));
  CHECK(rows[{rat(1), rat(0), rat(1)}] == rat(13, 10));
  CHECK(rows[{rat(0), rat(1), rat(1)}] == rat(7, 5));
  CHECK(rows[{rat(1), rat(1), rat(1)}] == rat(3, 2));
}

TEST_CASE("constraint violations are named") {
  // alpha12 > lambda + lambda' + gamma.
  try {
    param_region_D(testutil::reference_channel(), p4(rat(1, 2), rat(1, 4), rat(0), rat(0)));
    FAIL("expected a constraint violation");
  } catch (const ConstraintViolation& e) {
    CHECK(e.row_name.find("constraint 4") != std::string::npos);
  }
  try {
    param_region_F(testutil::reference_channel(), p4(rat(9, 10), rat(0), rat(0), rat(0)));
    FAIL("expected a constraint violation");
  } catch (const ConstraintViolation& e) {
    // alpha12 = 11/10 > 9/10 = lambda+lambda'+gamma+gamma'.
    CHECK(e.row_name.find("constraint 4") != std::string::npos);
  }
  CHECK_THROWS_AS(
      param_region_D(testutil::reference_channel(), p4(rat(-1, 10), rat(1), rat(1), rat(1))),
      ConstraintViolation);
}

TEST_CASE("degenerate zero instance") {
  Polytope r = param_region_D(zero_channel(), p4(rat(0), rat(0), rat(0), rat(0)));
  auto vs = vertices(r);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0] == Point{rat(0), rat(0), rat(0)});
  Polytope f = full_region_D123(zero_channel(), p4(rat(0), rat(0), rat(0), rat(0)));
  CHECK(poly_equal(r, f));
}

TEST_CASE("elimination routes agree with the direct rows") {
  ChannelMatrix ref_ch = testutil::reference_channel();
  SlsParams p = p4(rat(9, 10), rat(1, 5), rat(0), rat(0));
  Polytope direct = param_region_D(ref_ch, p);
  Polytope sub = full_region_D123(ref_ch, p);
  Polytope rows = full_region_reduced(SlsVariant::D123, ref_ch, p);
  CHECK(poly_equal(direct, sub));
  CHECK(poly_equal(direct, rows));
  Polytope directF = param_region_F(ref_ch, p);
  Polytope subF = full_region_F123(ref_ch, p);
  Polytope rowsF = full_region_reduced(SlsVariant::F123, ref_ch, p);
  CHECK(poly_equal(directF, subF));
  CHECK(poly_equal(directF, rowsF));
  // Containment in the parameter-free hull regions.
  auto dhat = achievable_D_hat(ref_ch, UserOrder{0, 1, 2});
  REQUIRE(dhat.has_value());
  CHECK(poly_subset(direct, *dhat));
  auto fhat = achievable_F_hat(ref_ch, UserOrder{0, 1, 2});
  REQUIRE(fhat.has_value());
  CHECK(poly_subset(directF, *fhat));
}

TEST_CASE("grid membership oracle for the projected region") {
  // Membership in the projection must match LP feasibility of the unprojected
  // split system, point by point, on a 1/16 grid.
  ChannelMatrix ref_ch = testutil::reference_channel();
  SlsParams p = p4(rat(9, 10), rat(1, 5), rat(0), rat(0));
  Polytope proj = full_region_D123(ref_ch, p);
  Polytope direct = param_region_D(ref_ch, p);
  long top = 21;  // ceil(max alpha_ii * 16) with max alpha_ii = 13/10
  long inside = 0;
  for (long i = 0; i <= top; i += 1) {
    for (long j = 0; j <= top; j += 1) {
      for (long k = 0; k <= top; k += 1) {
        std::array<Rational, 3> t{rat(i, 16), rat(j, 16), rat(k, 16)};
        bool feasible = split_for_point(SlsVariant::D123, ref_ch, p, t).has_value();
        Point x{t[0], t[1], t[2]};
        CHECK(proj.contains(x) == feasible);
        CHECK(direct.contains(x) == feasible);
        inside += feasible ? 1 : 0;
      }
    }
  }
  CHECK(inside > 100);
}

TEST_CASE("random conforming instances keep the chain equal") {
  Rng rng(424242);
  for (int iter = 0; iter < 25; ++iter) {
    ChannelMatrix ch = testutil::random_conforming_channel(rng);
    SlsParams pd = testutil::random_feasible_params(SlsVariant::D123, ch, rng);
    CHECK(poly_equal(full_region_D123(ch, pd), param_region_D(ch, pd)));
    SlsParams pf = testutil::random_feasible_params(SlsVariant::F123, ch, rng);
    CHECK(poly_equal(full_region_F123(ch, pf), param_region_F(ch, pf)));
  }
}

TEST_CASE("rate split validation") {
  SlsScheme s;
  s.variant = SlsVariant::D123;
  s.channel = testutil::reference_channel();
  s.params = p4(rat(9, 10), rat(1, 5), rat(0), rat(0));

  s.split = zero_split();
  SplitCheck c0 = validate_rate_split(s);
  CHECK(c0.ok);
  CHECK(c0.induced == std::array<Rational, 3>{rat(0), rat(0), rat(0)});

  s.split = vertex_a_split();
  SplitCheck c1 = validate_rate_split(s);
  CHECK(c1.ok);
  CHECK(c1.induced == std::array<Rational, 3>{rat(6, 5), rat(1, 5), rat(1, 10)});

  s.split.d_all = rat(1);  // above the lambda cap of 9/10
  SplitCheck c2 = validate_rate_split(s);
  CHECK(!c2.ok);

  s.split = vertex_a_split();
  s.split.mu = {rat(1, 2), rat(1, 4)};
  CHECK(!validate_rate_split(s).ok);
}

TEST_CASE("exponent of the top layer at receiver 1") {
  SlsScheme s;
  s.variant = SlsVariant::D123;
  s.channel = make_channel({{rat(6, 5), rat(11, 10), rat(9, 10)},
                            {rat(0), rat(2), rat(0)},
                            {rat(0), rat(0), rat(2)}});
  s.params = p4(rat(3, 10), rat(0), rat(0), rat(1, 10));
  s.split = zero_split();
  SinrReport rep = sinr_exponents(s);
  REQUIRE(!rep.entries.empty());
  const SinrEntry& e = rep.entries[0];
  CHECK(e.receiver == 1);
  CHECK(e.layer == "123");
  REQUIRE(e.branches.size() == 4);
  CHECK(e.branches[0] == rat(3, 10));
  CHECK(e.branches[1] == rat(11, 10));
  CHECK(e.branches[2] == rat(3, 10));
  CHECK(e.branches[3] == rat(1, 2));
  CHECK(e.exponent == rat(3, 10));
}

TEST_CASE("zero channel, zero parameters") {
  SlsScheme s;
  s.variant = SlsVariant::F123;
  s.channel = zero_channel();
  s.params = p4(rat(0), rat(0), rat(0), rat(0));
  s.split = zero_split();
  SinrReport rep = sinr_exponents(s);
  for (const auto& e : rep.entries) CHECK(e.exponent == rat(0));
  CHECK(rep.feasible);
  s.split.d_all = rat(1, 10);
  CHECK(!sinr_exponents(s).feasible);
}

TEST_CASE("exponent tables match their closed forms") {
  // Independent transcriptions of all sixteen decodability rows.
  using Row = std::function<Rational(const ChannelMatrix&, const SlsParams&)>;
  auto mins = [](std::initializer_list<Rational> xs) { return std::min(xs); };
  std::map<std::pair<int, std::string>, Row> d_rows = {
      {{1, "123"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({p.lambda, a[0][0] - p.gamma_p,
                      p.lambda + a[0][0] - p.gamma_p - a[0][1],
                      p.lambda + a[0][0] - p.gamma_p - a[0][2]});
       }},
      {{1, "12"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({p.lambda_p, a[0][0] - p.lambda - p.gamma_p,
                      p.lambda_p + a[0][0] - p.gamma_p - a[0][1],
                      a[0][0] - p.gamma_p - a[0][2]});
       }},
      {{1, "1"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[0][0] - p.lambda - p.lambda_p - p.gamma - p.gamma_p,
                      a[0][0] - a[0][1] - p.gamma_p,
                      a[0][0] - a[0][2] - p.gamma_p - p.lambda_p});
       }},
      {{2, "123"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[1][1], p.lambda, p.lambda + a[1][1] + p.gamma_p - a[1][0],
                      p.lambda + a[1][1] - a[1][2]});
       }},
      {{2, "12"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({p.lambda_p, a[1][1] - p.lambda,
                      a[1][1] + p.lambda_p + p.gamma_p - a[1][0], a[1][1] - a[1][2]});
       }},
      {{2, "2"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[1][1] - p.lambda - p.lambda_p, a[1][1] - a[1][0] + p.gamma_p,
                      a[1][1] - a[1][2] - p.lambda_p});
       }},
      {{3, "123"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[2][2], p.lambda, p.lambda + a[2][2] + p.gamma_p - a[2][0],
                      p.lambda + a[2][2] - a[2][1]});
       }},
      {{3, "3"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[2][2] - p.lambda, a[2][2] - a[2][0] + p.gamma_p,
                      a[2][2] - a[2][1]});
       }},
  };
  std::map<std::pair<int, std::string>, Row> f_rows = {
      {{1, "123"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[0][0], p.lambda, p.lambda + a[0][0] + p.gamma_p - a[0][1],
                      p.lambda + a[0][0] - a[0][2]});
       }},
      {{1, "12"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({p.lambda_p, a[0][0] - p.lambda,
                      p.lambda_p + a[0][0] + p.gamma_p - a[0][1], a[0][0] - a[0][2]});
       }},
      {{1, "1"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[0][0] - p.lambda - p.lambda_p, a[0][0] - a[0][1] + p.gamma_p,
                      a[0][0] - a[0][2] - p.lambda_p});
       }},
      {{2, "123"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[1][1] - p.gamma_p, p.lambda,
                      p.lambda + a[1][1] - p.gamma_p - a[1][0],
                      p.lambda + a[1][1] - p.gamma_p - a[1][2]});
       }},
      {{2, "12"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({p.lambda_p, a[1][1] - p.gamma_p - p.lambda,
                      p.lambda_p + a[1][1] - p.gamma_p - a[1][0],
                      a[1][1] - p.gamma_p - a[1][2]});
       }},
      {{2, "2"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[1][1] - p.lambda - p.lambda_p - p.gamma_p,
                      a[1][1] - a[1][0] - p.gamma_p,
                      a[1][1] - a[1][2] - p.lambda_p - p.gamma_p});
       }},
      {{3, "123"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[2][2], p.lambda, p.lambda + a[2][2] - a[2][0],
                      p.lambda + a[2][2] + p.gamma_p - a[2][1]});
       }},
      {{3, "3"}, [&](const ChannelMatrix& c, const SlsParams& p) {
         const auto& a = c.alpha;
         return mins({a[2][2] - p.lambda, a[2][2] - a[2][0],
                      a[2][2] - a[2][1] + p.gamma_p});
       }},
  };

  Rng rng(112233);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<std::vector<Rational>> a(3, std::vector<Rational>(3));
    for (auto& row : a)
      for (auto& x : row) x = rat(rng.range(0, 32), 16);
    SlsScheme s;
    s.channel = make_channel(a);
    s.params = p4(rat(rng.range(0, 16), 16), rat(rng.range(0, 16), 16),
                  rat(rng.range(0, 16), 16), rat(rng.range(0, 16), 16));
    s.split = zero_split();
    for (SlsVariant v : {SlsVariant::D123, SlsVariant::F123}) {
      s.variant = v;
      const auto& expect = v == SlsVariant::D123 ? d_rows : f_rows;
      SinrReport rep = sinr_exponents(s);
      REQUIRE(rep.entries.size() == 8);
      for (const auto& e : rep.entries) {
        auto it = expect.find({e.receiver, e.layer});
        REQUIRE(it != expect.end());
        CHECK(e.exponent == it->second(s.channel, s.params));
      }
    }
  }
}

TEST_CASE("valid parameters and splits always decode") {
  Rng rng(60606);
  for (int iter = 0; iter < 200; ++iter) {
    ChannelMatrix ch = testutil::random_conforming_channel(rng);
    for (SlsVariant v : {SlsVariant::D123, SlsVariant::F123}) {
      SlsParams p = testutil::random_feasible_params(v, ch, rng);
      SlsScheme s{v, p, random_valid_split(v, ch, p, rng), ch};
      SplitCheck sc = validate_rate_split(s);
      CHECK(sc.ok);
      SinrReport rep = sinr_exponents(s);
      CHECK(rep.feasible);
      for (const auto& e : rep.entries) CHECK(e.exponent >= 0);
    }
  }
}

TEST_CASE("shrinking a feasible split keeps it feasible") {
  Rng rng(515151);
  for (int iter = 0; iter < 100; ++iter) {
    ChannelMatrix ch = testutil::random_conforming_channel(rng);
    SlsVariant v = rng.next() % 2 ? SlsVariant::D123 : SlsVariant::F123;
    SlsParams p = testutil::random_feasible_params(v, ch, rng);
    SlsScheme s{v, p, random_valid_split(v, ch, p, rng), ch};
    REQUIRE(validate_rate_split(s).ok);
    SlsScheme smaller = s;
    smaller.split.d_single[rng.range(0, 2)] *= rat(rng.range(0, 3), 4);
    smaller.split.d_pair *= rat(rng.range(0, 4), 4);
    smaller.split.d_all *= rat(rng.range(0, 4), 4);
    CHECK(validate_rate_split(smaller).ok);
    CHECK(sinr_exponents(smaller).feasible);
  }
}

TEST_CASE("corner parameters for the reference vertex") {
  auto res = params_for_vertex(testutil::reference_channel(),
                               Point{rat(6, 5), rat(1, 5), rat(1, 10)});
  REQUIRE(res.has_value());
  CHECK(res->variant == SlsVariant::D123);
  CHECK(res->order == UserOrder{0, 1, 2});
  CHECK(res->params.lambda == rat(9, 10));
  CHECK(res->params.lambda_p == rat(1, 5));
  CHECK(res->params.gamma == rat(0));
  CHECK(res->params.gamma_p == rat(0));
  CHECK(res->source == "table:A");
}

TEST_CASE("origin of the zero channel uses the all-max parameters") {
  auto res = params_for_vertex(zero_channel(), Point{rat(0), rat(0), rat(0)});
  REQUIRE(res.has_value());
  CHECK(res->params.lambda == rat(0));
  CHECK(res->params.lambda_p == rat(0));
  CHECK(res->params.gamma == rat(0));
  CHECK(res->params.gamma_p == rat(0));
}

TEST_CASE("interior points go through the LP fallback") {
  auto res = params_for_vertex(testutil::reference_channel(),
                               Point{rat(1, 2), rat(1, 4), rat(1, 8)});
  REQUIRE(res.has_value());
  CHECK(res->source == "lp");
  // Verify the certificate by direct membership.
  ChannelMatrix work = apply_user_order(testutil::reference_channel(), res->order);
  Polytope region = res->variant == SlsVariant::D123 ? param_region_D(work, res->params)
                                                     : param_region_F(work, res->params);
  CHECK(region.contains(Point{rat(1, 2), rat(1, 4), rat(1, 8)}));
}

TEST_CASE("every vertex of the matched part gets valid parameters") {
  Rng rng(777);
  for (int iter = 0; iter < 25; ++iter) {
    ChannelMatrix ch = testutil::random_conforming_channel(rng);
    RegionVerdict v = achievability_verdict(ch);
    REQUIRE(v.equal);
    const Polytope& part = *v.parts.at(*v.matched);
    for (const auto& vert : vertices(part)) {
      auto res = params_for_vertex(ch, vert);
      REQUIRE(res.has_value());
      ChannelMatrix work = apply_user_order(ch, res->order);
      std::array<Rational, 3> tv{vert[res->order[0]], vert[res->order[1]],
                                 vert[res->order[2]]};
      Polytope region = res->variant == SlsVariant::D123
                            ? param_region_D(work, res->params)
                            : param_region_F(work, res->params);
      CHECK(region.contains(Point{tv[0], tv[1], tv[2]}));
    }
  }
}

TEST_CASE("splits exist for every outer vertex, end to end") {
  Rng rng(31415);
  for (int iter = 0; iter < 15; ++iter) {
    ChannelMatrix ch = testutil::random_conforming_channel(rng);
    Polytope outer = outer_region(ch);
    for (const auto& vert : vertices(outer)) {
      auto res = params_for_vertex(ch, vert);
      REQUIRE(res.has_value());
      ChannelMatrix work = apply_user_order(ch, res->order);
      std::array<Rational, 3> tv{vert[res->order[0]], vert[res->order[1]],
                                 vert[res->order[2]]};
      auto split = split_for_point(res->variant, work, res->params, tv);
      REQUIRE(split.has_value());
      SlsScheme s{res->variant, res->params, *split, work};
      SplitCheck sc = validate_rate_split(s);
      CHECK(sc.ok);
      CHECK(sc.induced == tv);
      CHECK(sinr_exponents(s).feasible);
    }
  }
}
