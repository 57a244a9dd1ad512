#include <gtest/gtest.h>

#include <lfm/orbit.hpp>

using namespace lfm;

namespace {

CycNum Q(long p, long q = 1) { return CycNum::rational(p, q); }
const CycNum w = CycNum::zeta(3);

MapParameters params(Vec4 a, Vec4 b) { return MapParameters(std::move(a), std::move(b)); }
MapParameters sec7(long a) { return params({Q(a), Q(0), w, Q(1)}, {Q(0), Q(1), Q(0), Q(0)}); }
MapParameters lyness(long a) { return params({Q(a), Q(0), Q(1), Q(1)}, {Q(0), Q(1), Q(0), Q(0)}); }
MapParameters p8() { return params({Q(1), Q(0), Q(1), Q(1)}, {Q(0), Q(1), Q(0), Q(0)}); }
MapParameters p8b() { return params({Q(-1), Q(0), Q(-1), Q(1)}, {Q(0), Q(1), Q(0), Q(0)}); }
MapParameters p12() { return params({Q(-1, 2), Q(0), Q(-1), Q(1)}, {Q(1), Q(1), Q(0), Q(0)}); }
MapParameters eta_family() {
  CycNum eta = CycNum::zeta(6);
  return params({eta / (Q(1) - eta), Q(0), eta, Q(1)}, {eta * eta, Q(1), Q(0), Q(0)});
}
MapParameters zeta5() { return params({Q(0), Q(0), CycNum::zeta(5), Q(1)}, {Q(0), Q(1), Q(0), Q(0)}); }

std::string ms(const OrbitSignature& s) { return s.m_s ? std::to_string(*s.m_s) : "inf"; }

}  // namespace

TEST(Signature, Sec7) {
  auto s = gamma_orbit_signature(sec7(2));
  EXPECT_EQ(s.N, 11);
  EXPECT_TRUE(s.d_list.empty());
  EXPECT_TRUE(s.u_list.empty());
  EXPECT_FALSE(s.m_s);
  EXPECT_EQ(s.trace.back().tag, EventTag::Terminate);
}

TEST(Signature, Sec7ChartSequence) {
  auto s = gamma_orbit_signature(sec7(2));
  std::vector<Chart> want{Chart::P3, Chart::P3,  Chart::P3, Chart::E3, Chart::S01, Chart::P3,
                          Chart::S03, Chart::E1, Chart::P3, Chart::P3, Chart::P3};
  ASSERT_EQ(s.trace.size(), want.size());
  for (size_t i = 0; i < want.size(); ++i) EXPECT_EQ(s.trace[i].element.chart, want[i]) << "step " << i + 1;
}

TEST(Signature, Lyness) {
  auto s = gamma_orbit_signature(lyness(3));
  EXPECT_EQ(s.N, 10);
  ASSERT_TRUE(s.m_s);
  EXPECT_EQ(*s.m_s, 3);
  EXPECT_TRUE(s.whole_fiber);
  EXPECT_TRUE(s.d_list.empty());
  EXPECT_TRUE(s.u_list.empty());
  // the special fiber is entered at step m_s + 2
  EXPECT_EQ(s.trace[*s.m_s + 1].tag, EventTag::EnterF0BetaGamma);
}

TEST(Signature, Period8) {
  auto s = gamma_orbit_signature(p8());
  EXPECT_EQ(s.N, 5);
  EXPECT_EQ(s.d_list, std::vector<int>{2});
  EXPECT_EQ(s.u_list, std::vector<int>{3});
  EXPECT_EQ(ms(s), "inf");
  EXPECT_EQ(gamma_orbit_signature(p8b()).N, 3);
}

TEST(Signature, Period12) { EXPECT_EQ(gamma_orbit_signature(p12()).N, 4); }

TEST(Signature, EtaFamily) {
  auto s = gamma_orbit_signature(eta_family());
  EXPECT_EQ(s.N, 6);
  EXPECT_EQ(s.d_list, std::vector<int>{2});
  EXPECT_EQ(s.u_list, std::vector<int>{4});
}

TEST(Signature, FifthRoot) { EXPECT_EQ(gamma_orbit_signature(zeta5()).N, 19); }

TEST(Signature, BlowupContinuationIsTheSigmaCLine) {
  auto s = gamma_orbit_signature(p8());
  const auto& ev = s.trace[2];
  ASSERT_EQ(ev.tag, EventTag::BlowupAtSigmaBetaGamma);
  EXPECT_EQ(ev.dim, 0);
  EXPECT_EQ(s.trace[3].dim, 1);
}

TEST(Signature, TraceDimensions) {
  for (auto p : {sec7(2), lyness(3), p8(), eta_family()}) {
    auto s = gamma_orbit_signature(p);
    for (size_t i = 1; i < s.trace.size(); ++i) {
      EXPECT_LE(s.trace[i].dim, 1);
      // dimension grows only right after a blowup or the special fiber
      if (s.trace[i].dim > s.trace[i - 1].dim) {
        auto t = s.trace[i - 1].tag;
        EXPECT_TRUE(t == EventTag::BlowupAtSigmaBetaGamma || t == EventTag::EnterF0BetaGamma);
      }
    }
  }
}

TEST(Signature, NonCriticalRejected) {
  EXPECT_THROW(gamma_orbit_signature(params({Q(1), Q(2), Q(3), Q(5)}, {Q(7), Q(1), Q(2), Q(4)})),
               std::invalid_argument);
}

TEST(Signature, NonClosingReported) { EXPECT_THROW(gamma_orbit_signature(sec7(2), 6), NonClosing); }

TEST(Signature, InvariantUnderNormalizingActions) {
  for (auto p : {lyness(3), p8(), eta_family()}) {
    auto s = gamma_orbit_signature(p);
    auto q = act_translate(act_dilate(act_scale(p, Q(3)), Q(-2)), Q(5, 7));
    auto t = gamma_orbit_signature(q);
    EXPECT_EQ(s.N, t.N);
    EXPECT_EQ(s.d_list, t.d_list);
    EXPECT_EQ(s.u_list, t.u_list);
    EXPECT_EQ(ms(s), ms(t));
  }
}

TEST(Duality, Period8SelfDual) {
  auto s = gamma_orbit_signature(p8()), g = inverse_signature(p8());
  EXPECT_EQ(g.N, 5);
  EXPECT_TRUE(duality_check(s, g));
}

TEST(Duality, EtaFamily) {
  auto s = gamma_orbit_signature(eta_family()), g = inverse_signature(eta_family());
  EXPECT_TRUE(duality_check(s, g));
}

TEST(Duality, Sec7Vacuous) {
  auto s = gamma_orbit_signature(sec7(2));
  EXPECT_TRUE(duality_check(s, s));
}

TEST(Duality, PerturbedFails) {
  auto s = gamma_orbit_signature(p8()), g = inverse_signature(p8());
  g.u_list[0] += 1;
  EXPECT_FALSE(duality_check(s, g));
  g = inverse_signature(p8());
  g.N += 1;
  EXPECT_FALSE(duality_check(s, g));
}

TEST(Rotor, IntersectionCounts) {
  auto g = rotor_orbit(sec7(2));
  ASSERT_EQ(g.size(), 11u);
  auto I = [&](int j, int k) { return curve_intersections(g[j - 1], g[k - 1]); };
  EXPECT_EQ(I(1, 9), 2);
  EXPECT_EQ(I(11, 3), 2);
  EXPECT_EQ(I(11, 5), 1);
  EXPECT_EQ(I(11, 9), 1);
  EXPECT_EQ(I(11, 10), 1);
}

TEST(Rotor, IntersectionIsSymmetric) {
  auto g = rotor_orbit(sec7(2));
  for (auto [j, k] : std::vector<std::pair<int, int>>{{1, 9}, {3, 11}, {5, 11}, {4, 10}, {8, 10}})
    EXPECT_EQ(curve_intersections(g[j - 1], g[k - 1]), curve_intersections(g[k - 1], g[j - 1]));
}

TEST(Rotor, GenericityPredicates) {
  EXPECT_THROW(rotor_orbit(sec7(1)), std::invalid_argument);
  EXPECT_THROW(rotor_orbit(sec7(0)), std::invalid_argument);
  EXPECT_THROW(rotor_orbit(lyness(3)), std::invalid_argument);
}

TEST(Rotor, PlaneCurveIntersection) {
  // a conic and a line in x3 = 0 meet twice
  Poly t = param_t(), one = pc(Q(1)), z = pc(Q(0));
  auto conic = p3_element({one, t, t * t, z}, 1);
  auto line = p3_element({one, t, pc(Q(2)) + t.scaled(Q(-1)), z}, 1);
  EXPECT_EQ(curve_intersections(conic, line), 2);
  // meets x3 = 0 only at [1 : 5 : -1 : 0]
  auto skew = p3_element({one, pc(Q(5)), t, one + t}, 1);
  EXPECT_EQ(curve_intersections(conic, skew), 0);
}

TEST(Noncritical, Lemma33iFourCycle) {
  auto c = noncritical_certificate(params({Q(1), Q(2), Q(3), Q(5)}, {Q(7), Q(0), Q(1), Q(1)}));
  EXPECT_EQ(c.lemma, "3.3(i)");
  ASSERT_TRUE(c.certified);
  ASSERT_EQ(c.orbit.size(), 4u);
  EXPECT_EQ(c.orbit[0], p3_point({Q(0), Q(0), Q(0), Q(1)}));
  EXPECT_EQ(c.orbit[1].chart, Chart::S03);
  // (0,0,a3) in the S03 chart near e2
  EXPECT_EQ(c.orbit[1], line_divisor_element(3, {pc(Q(0)), pc(Q(0)), pc(Q(1)), pc(Q(0))}, {pc(Q(1)), pc(Q(5))}, 0));
  // (0, a3, a2/b2) in E1
  EXPECT_EQ(c.orbit[2], point_divisor_element(1, {pc(Q(1)), pc(Q(0)), pc(Q(5)), pc(Q(3))}, 0));
  EXPECT_EQ(c.orbit[3], c.orbit[0]);
}

TEST(Noncritical, Lemma33iiiInvariantCurves) {
  auto c = noncritical_certificate(params({Q(1), Q(2), Q(3), Q(5)}, {Q(7), Q(0), Q(0), Q(1)}));
  EXPECT_EQ(c.lemma, "3.3(iii)");
  EXPECT_TRUE(c.certified);
  EXPECT_EQ(c.invariant_cycle.size(), 2u);
  // f^2 e3 = [0 : b0 + a3 : 0 : a2]
  EXPECT_EQ(c.orbit[2], p3_point({Q(0), Q(12), Q(0), Q(3)}));
}

TEST(Noncritical, Lemma34) {
  auto c = noncritical_certificate(params({Q(1), Q(0), Q(3), Q(5)}, {Q(7), Q(1), Q(0), Q(2)}));
  EXPECT_EQ(c.lemma, "3.4");
  EXPECT_TRUE(c.inverse);
  EXPECT_TRUE(c.certified);
  auto d = noncritical_certificate(params({Q(1), Q(0), Q(3), Q(5)}, {Q(7), Q(1), Q(2), Q(0)}));
  ASSERT_TRUE(d.certified);
  // [0 : b2^2 : -b2 : 1] is fixed
  EXPECT_EQ(d.orbit.back(), p3_point({Q(0), Q(4), Q(-2), Q(1)}));
}

TEST(Noncritical, Lemma35) {
  auto c = noncritical_certificate(params({Q(1), Q(0), Q(3), Q(0)}, {Q(7), Q(1), Q(0), Q(0)}));
  EXPECT_EQ(c.lemma, "3.5(i)");
  ASSERT_TRUE(c.certified);
  EXPECT_EQ(c.period, 2);
  // (0,0,0)_{E2} <-> (0, b0/a2, 0)_{S02}
  EXPECT_EQ(c.orbit.back(), point_divisor_element(2, {pc(Q(1)), pc(Q(0)), pc(Q(0)), pc(Q(0))}, 0));
  auto d = noncritical_certificate(params({Q(1), Q(0), Q(0), Q(3)}, {Q(7), Q(1), Q(0), Q(0)}));
  EXPECT_EQ(d.lemma, "3.5(ii)");
  EXPECT_TRUE(d.inverse);
  ASSERT_TRUE(d.certified);
  EXPECT_EQ(d.orbit.back(), point_divisor_element(2, {pc(Q(1)), pc(Q(-7)), pc(Q(0)), pc(Q(-7))}, 0));
}

TEST(Noncritical, UnresolvedCasesReportWhy) {
  auto c = noncritical_certificate(params({Q(1), Q(2), Q(0), Q(5)}, {Q(7), Q(0), Q(0), Q(1)}));
  EXPECT_EQ(c.lemma, "3.3(ii)");
  EXPECT_FALSE(c.certified);
  EXPECT_FALSE(c.note.empty());
  auto d = noncritical_certificate(params({Q(1), Q(2), Q(3), Q(5)}, {Q(7), Q(0), Q(1), Q(0)}));
  EXPECT_EQ(d.lemma, "3.3(iv)");
  EXPECT_FALSE(d.certified);
  EXPECT_THROW(noncritical_certificate(sec7(2)), std::invalid_argument);
}
