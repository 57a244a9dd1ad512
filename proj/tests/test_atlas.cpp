#include <gtest/gtest.h>

#include <lfm/atlas.hpp>

using namespace lfm;

namespace {

CycNum Q(long p, long q = 1) { return CycNum::rational(p, q); }
Poly T() { return param_t(); }
Poly S() { return param_s(); }
Poly C(const CycNum& c) { return pc(c); }
Poly Z() { return C(Q(0)); }

// critical normal form with beta0 != 0 so that the displays are not degenerate
const CycNum b0 = Q(2), a0 = Q(3), a2 = Q(5);
MapParameters critical() { return MapParameters({a0, Q(0), a2, Q(1)}, {b0, Q(1), Q(0), Q(0)}); }
// a generic member satisfying the dominance conditions of the X blowup
MapParameters generic() { return MapParameters({Q(1), Q(2), Q(3), Q(5)}, {Q(7), Q(1), Q(2), Q(4)}); }

Poly eps() { return Poly::var(3, kEps); }
Poly one3() { return Poly(3, CycNum(1)); }

}  // namespace

TEST(Charts, ChartToP3) {
  CycNum c = Q(4), d = Q(-3);
  auto s03 = line_divisor_element(3, {Z(), C(Q(1)), C(c), Z()}, {C(Q(1)), C(d)}, 0);
  auto x = chart_to_p3(s03);
  EXPECT_EQ(x[0], eps());
  EXPECT_EQ(x[1], one3());
  EXPECT_EQ(x[2], Poly(3, c));
  EXPECT_EQ(x[3], eps().scaled(d));
  auto e1 = point_divisor_element(1, {C(Q(1)), Z(), C(c), C(d)}, 0);
  auto y = chart_to_p3(e1);
  EXPECT_EQ(y[0], eps());
  EXPECT_EQ(y[1], one3());
  EXPECT_EQ(y[2], eps().scaled(c));
  EXPECT_EQ(y[3], eps().scaled(d));
  auto p = p3_point({Q(1), Q(2), Q(3), Q(4)});
  auto z = chart_to_p3(p);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(z[i], Poly(3, Q(i + 1)));
}

TEST(ApplyFY, SigmaBetaToE3) {
  auto f = build_family_map(critical());
  // [x0 : -b0 x0 : x2 : x3] with x0 = 1, x2 = t, x3 = s
  auto sb = p3_element({C(Q(1)), C(-b0), T(), S()}, 2);
  auto r = apply_fY(f, sb, Atlas::Y());
  EXPECT_EQ(r, point_divisor_element(3, {C(Q(1)), T(), S(), Z()}, 2));
}

TEST(ApplyFY, E3ToS01) {
  auto f = build_family_map(critical());
  // (0, xi1, xi2)_{E3} with xi1 = t, xi2 = s
  auto e3 = point_divisor_element(3, {C(Q(1)), T(), S(), Z()}, 2);
  auto r = apply_fY(f, e3, Atlas::Y());
  // (0, xi2, b0 + xi1)_{S01}: normal (1 : xi2), base [0 : 0 : b0 + xi1 : 1]
  EXPECT_EQ(r, line_divisor_element(1, {Z(), Z(), C(b0) + T(), C(Q(1))}, {C(Q(1)), S()}, 2));
}

TEST(ApplyFY, S01ToSigma0) {
  auto f = build_family_map(critical());
  // (0, eta1, x2)_{S01} with eta1 = t, x2 = s
  auto s01 = line_divisor_element(1, {Z(), Z(), S(), C(Q(1))}, {C(Q(1)), T()}, 2);
  auto r = apply_fY(f, s01, Atlas::Y());
  Poly k = C(b0) + T();
  EXPECT_EQ(r, p3_element({Z(), S() * k, k, C(Q(1)) + S().scaled(a2)}, 2));
}

TEST(ApplyFY, S03ToE1) {
  auto p = generic();
  auto f = build_family_map(p);
  // (0, x2, xi3)_{S03} with x2 = t, xi3 = s
  auto s03 = line_divisor_element(3, {Z(), C(Q(1)), T(), Z()}, {C(Q(1)), S()}, 2);
  auto r = apply_fY(f, s03, Atlas::X());
  // (0, xi3, (a1 + a2 x2)/(b1 + b2 x2))_{E1} as direction [1 : 0 : xi3 : ratio]
  Poly den = C(p.beta[1]) + T().scaled(p.beta[2]), num = C(p.alpha[1]) + T().scaled(p.alpha[2]);
  EXPECT_EQ(r, point_divisor_element(1, {den, Z(), S() * den, num}, 2));
}

TEST(ApplyFY, E1ToSigmaB) {
  auto p = generic();
  auto f = build_family_map(p);
  auto e1 = point_divisor_element(1, {C(Q(1)), Z(), T(), S()}, 2);
  auto r = apply_fY(f, e1, Atlas::X());
  EXPECT_EQ(r, p3_element({C(p.beta[1]), T().scaled(p.beta[1]), S().scaled(p.beta[1]), C(p.alpha[1])}, 2));
}

TEST(ApplyFY, FiberF0BetaGammaBlowsUpToF0BC) {
  auto f = build_family_map(critical());
  // point (0, eta1, -a2)_{S01} of the fiber, eta1 = 4
  auto q = line_divisor_element(1, {Z(), Z(), C(Q(1)), C(-a2)}, {C(Q(1)), C(Q(4))}, 0);
  EXPECT_THROW(apply_fY(f, q, Atlas::Y()), DirectionDependent);
  // every lift lands in the S03 fiber over [0 : 1 : -a2 : 0]
  std::vector<OrbitElement> seen;
  for (int k = 1; k <= 3; ++k) {
    Vec4 w{Q(k), Q(2 * k + 1), Q(-k), Q(k * k)}, wn{Q(0), Q(0), Q(k + 3), Q(1 - k)};
    auto r = detail::apply_once(f, q, Atlas::Y(), w, wn);
    EXPECT_EQ(r.chart, Chart::S03);
    EXPECT_TRUE(detail::proj_equal(r.tuple(), {Z(), C(Q(1)), C(-a2), Z()}));
    seen.push_back(r);
  }
  EXPECT_FALSE(seen[0] == seen[1]);
}

TEST(ApplyFY, FiberOverE2MapsIntoForbiddenLine) {
  auto f = build_family_map(critical());
  // (eta, 0, 0) in the chart [xi s : s : 1 : x3] is base e2 with normal (eta : 1)
  auto q = line_divisor_element(1, {Z(), Z(), C(Q(1)), Z()}, {C(Q(3)), C(Q(1))}, 0);
  EXPECT_THROW(apply_fY(f, q, Atlas::Y()), HitForbidden);
}

TEST(ApplyFY, OffCentersMatchesSubstitution) {
  auto p = generic();
  auto f = build_family_map(p);
  std::array<Poly, 4> x{C(Q(1)), T() + C(Q(2)), T() * T(), C(Q(3)) - T()};
  auto r = apply_fY(f, p3_element(x, 1), Atlas::Y());
  std::array<Poly, 4> y;
  std::vector<Poly> xs(x.begin(), x.end());
  for (int i = 0; i < 4; ++i) y[i] = f.comps[i].substitute(xs);
  EXPECT_EQ(r, p3_element(y, 1));
}

TEST(ApplyFY, LevelTwoInputIsDirectionDependent) {
  auto f = build_family_map(critical());
  // E3 direction along Σ01 is the level-2 curve E3 ∩ S01; a single-ε lift cannot see it
  auto q = point_divisor_element(3, {Z(), Z(), C(Q(1)), Z()}, 0);
  EXPECT_THROW(apply_fY(f, q, Atlas::Y()), DirectionDependent);
}

TEST(Elements, Dimension) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(dimension(p3_element({C(Q(1)), T(), S(), Z()}, 2), rng), 2);
  EXPECT_EQ(dimension(p3_element({C(Q(1)), T(), T() * T(), Z()}, 1), rng), 1);
  EXPECT_EQ(dimension(line_divisor_element(1, {Z(), Z(), C(Q(1)), C(Q(2))}, {C(Q(1)), T()}, 1), rng), 1);
  EXPECT_EQ(dimension(p3_point({Q(1), Q(2), Q(3), Q(4)}), rng), 0);
}
