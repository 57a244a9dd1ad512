#include <gtest/gtest.h>

#include <lfm/io.hpp>

#include <numeric>

using namespace lfm;

namespace {

CycNum Q(long p, long q = 1) { return CycNum::rational(p, q); }
const CycNum w = CycNum::zeta(3);
IntPoly P(std::initializer_list<long> ascending) { return IntPoly(ascending); }

Poly X(int i) { return Poly::var(3, i); }
PlanePoint pt(CycNum a, CycNum b, CycNum c) { return plane_point({a, b, c}); }
PlanePoint e1() { return pt(Q(0), Q(1), Q(0)); }

bool proportional_maps(const BirationalMap& f, const BirationalMap& g) {
  CycNum r;
  for (int i = 0; i < 3; ++i)
    for (auto& [m, c] : f.comps[i].terms()) {
      CycNum d = g.comps[i].coeff(m);
      if (d.is_zero()) return false;
      if (r.is_zero()) r = c / d;
      if (c / d != r) return false;
    }
  for (int i = 0; i < 3; ++i)
    if (f.comps[i].terms().size() != g.comps[i].terms().size()) return false;
  return true;
}

struct RotorFixture {
  std::string lemma;
  CycNum a;
  LedgerFile recipe, stable;
};

RotorFixture load(const std::string& name) {
  json j = read_json_file(std::string(LFM_DATA_DIR) + "/" + name);
  return {j["lemma"], cycnum_from_json(j["a"]), ledger_from_json(j["recipe"]), ledger_from_json(j["stable"])};
}

const char* kFixtures[] = {"rotor_c1.json", "rotor_c2.json", "rotor_c3.json",
                           "rotor_c4.json", "rotor_c5.json", "rotor_c6.json"};

}  // namespace

TEST(Restrict, MatchesRotorFormula) {
  for (CycNum a : {Q(2), w * w, Q(1)}) {
    auto r = restrict_to_plane(MapParameters({a, Q(0), w, Q(1)}, {Q(0), Q(1), Q(0), Q(0)}));
    EXPECT_TRUE(proportional_maps(r, rotor_plane_map(a))) << a;
  }
}

TEST(Restrict, Case81bQuadratic) {
  auto r = restrict_to_plane(MapParameters({Q(0), Q(0), w, Q(1)}, {Q(0), Q(1), Q(0), Q(0)}));
  BirationalMap g;
  g.comps = {(X(0) * X(2)).scaled(w), (X(0) * X(1)).scaled(w) + (X(1) * X(1)).scaled(w * w) + (X(1) * X(2)).scaled(w),
             (X(1) * X(2)).scaled(w) + X(2) * X(2)};
  EXPECT_EQ(r.degree(), 2);
  EXPECT_TRUE(proportional_maps(r, g));
}

TEST(Restrict, LynessQuadratic) {
  auto r = restrict_to_plane(MapParameters({Q(3), Q(0), Q(1), Q(1)}, {Q(0), Q(1), Q(0), Q(0)}));
  BirationalMap g;
  g.comps = {X(0) * (X(0).scaled(Q(3)) + X(1).scaled(Q(3)) + X(2)), X(1) * (X(0) + X(1) + X(2)),
             X(2) * (X(0).scaled(Q(3)) + X(1) + X(2))};
  EXPECT_TRUE(proportional_maps(r, g));
}

TEST(Exceptional, GenericRotorHasFour) {
  auto g = rotor_plane_map(Q(2));
  auto v = plane_exceptional_verify(g, rotor_exceptional_curves(Q(2)));
  ASSERT_EQ(v.size(), 4u);
  for (auto& e : v) {
    EXPECT_TRUE(e.divides_jacobian);
    EXPECT_TRUE(e.contracted);
  }
  EXPECT_EQ(*v[0].image, e1().p);
  EXPECT_EQ(*v[1].image, pt(Q(0), Q(1), Q(-2) * w).p);
}

TEST(Exceptional, LineX0Rejected) {
  auto v = plane_exceptional_verify(rotor_plane_map(Q(2)), {X(0)});
  EXPECT_FALSE(v[0].divides_jacobian);
  EXPECT_FALSE(v[0].contracted);
  EXPECT_FALSE(v[0].residue.empty());
}

TEST(Exceptional, DegenerateCaseLines) {
  // for a = w^2 the Jacobian is (x0 + x2)(x0 + w^2 x2)^2 up to a unit
  auto g = rotor_plane_map(w * w);
  EXPECT_EQ(g.degree(), 2);
  Poly J = jacobian(g);
  Poly l1 = X(0) + X(2), l2 = X(0) + X(2).scaled(w * w);
  auto q = J.divide(l1 * l2 * l2);
  ASSERT_TRUE(q);
  EXPECT_EQ(q->degree(), 0);
  for (auto& e : plane_exceptional_verify(g, {l1, l2})) EXPECT_TRUE(e.contracted);
}

TEST(Orbit, ThreeCycles) {
  auto g = rotor_plane_map(Q(2));
  auto o = plane_point_orbit(g, pt(Q(0), Q(1), Q(-2) * w), 10);
  EXPECT_EQ(o.end, OrbitEnd::Periodic);
  EXPECT_EQ(o.period, 3);
  EXPECT_EQ(o.preperiod, 0);
  EXPECT_EQ(o.points[1], pt(Q(0), Q(1), Q(-2)));
  EXPECT_EQ(o.points[2], pt(Q(0), Q(1), Q(-2) * w * w));
  auto c4 = plane_point_orbit(g, pt(Q(1), Q(0), -w * w), 10);
  EXPECT_EQ(c4.period, 3);
  EXPECT_EQ(c4.points[1], pt(Q(1), Q(0), -w));
  EXPECT_EQ(c4.points[2], pt(Q(1), Q(0), Q(-1)));
}

TEST(Orbit, C3Formula) {
  CycNum a = Q(2);
  auto g = rotor_plane_map(a);
  auto o = plane_point_orbit(g, pt(Q(1), -w * w, Q(0)), 6);
  EXPECT_EQ(o.end, OrbitEnd::Open);
  for (int j = 1; j <= 7; ++j) EXPECT_EQ(o.points[j - 1], pt(Q(1), -w * w * (w / a).pow(j - 1), Q(0)));
}

TEST(Orbit, C1HitsE1) {
  auto g = rotor_plane_map(Q(2));
  std::mt19937_64 rng(3);
  auto start = plane_point(detail::point_on_curve(rotor_exceptional_curves(Q(2))[0], rng));
  auto o = plane_point_orbit(g, start, 10);
  EXPECT_EQ(o.end, OrbitEnd::HitsIndeterminacy);
  EXPECT_EQ(o.step, 1);
  EXPECT_EQ(o.points[1], e1());
  // after blowing up e1 the image is a point of E1 and the orbit stays regular
  PlaneLedger L;
  L.points = {e1()};
  L.labels = {"E1"};
  auto lifted = plane_point_orbit(g, start, 10, L);
  EXPECT_NE(lifted.end, OrbitEnd::HitsIndeterminacy);
  EXPECT_EQ(lifted.points[1].level(), 1);
}

TEST(Pic, C1Matrix) {
  auto f = load("rotor_c1.json");
  auto pic = plane_pic_matrix(rotor_plane_map(f.a), f.recipe.ledger);
  IntMatrix expect{{3, 1}, {-1, 0}};
  EXPECT_EQ(pic.action.M, expect);
  auto th = invariant_class(pic.action);
  EXPECT_NEAR(th.theta[1], -1.0, 1e-9);
  EXPECT_NEAR(th.self_intersection, th.lambda * th.lambda - 1, 1e-9);
  EXPECT_NEAR(th.lambda, (3 + std::sqrt(5.0)) / 2, 1e-12);
}

TEST(Pic, IntersectionForm) {
  ClassVector2D h{1, 0}, e{0, 1}, th{3, -1};
  EXPECT_EQ(intersect(h, h), 1);
  EXPECT_EQ(intersect(e, e), -1);
  EXPECT_EQ(intersect(h, e), 0);
  EXPECT_EQ(intersect(th, th), 8);
}

TEST(Fixtures, RulesReproduce) {
  for (auto name : kFixtures) {
    auto f = load(name);
    auto g = rotor_plane_map(f.a);
    for (auto* L : {&f.recipe, &f.stable}) {
      auto pic = plane_pic_matrix(g, L->ledger);
      EXPECT_EQ(pic.preimages, L->rules) << name;
    }
  }
}

TEST(Fixtures, StableLedgersAreStable) {
  for (auto name : kFixtures) {
    auto f = load(name);
    EXPECT_TRUE(stability_witness(rotor_plane_map(f.a), f.stable.ledger).stable) << name;
  }
}

TEST(Fixtures, DegreesMatchPredictions) {
  for (auto name : kFixtures) {
    auto f = load(name);
    auto g = rotor_plane_map(f.a);
    auto pic = plane_pic_matrix(g, f.stable.ledger);
    auto d = line_degrees(g, 8);
    auto pred = predicted_degrees(pic.action, 8);
    ASSERT_EQ(d.degrees.size(), 8u);
    for (int n = 0; n < 8; ++n) EXPECT_EQ(pred[n], d.degrees[n]) << name << " n=" << n + 1;
  }
}

TEST(Fixtures, CompleteLedgerReproducesStable) {
  for (auto name : kFixtures) {
    auto f = load(name);
    auto L = complete_ledger(rotor_plane_map(f.a), f.recipe.ledger);
    EXPECT_EQ(L.points.size(), f.stable.ledger.points.size()) << name;
    for (auto& p : L.points) EXPECT_TRUE(f.stable.ledger.contains(p)) << name;
  }
}

TEST(Fixtures, PicardMatrixIndependentOfSeed) {
  // sampling only picks generic members, so the matrix must not depend on the draw
  for (auto name : kFixtures) {
    auto f = load(name);
    auto g = rotor_plane_map(f.a);
    auto M = plane_pic_matrix(g, f.stable.ledger).action.M;
    for (uint64_t seed : {1, 17, 99, 1000})
      EXPECT_EQ(plane_pic_matrix(g, f.stable.ledger, seed).action.M, M) << name << " seed " << seed;
  }
}

TEST(Fixtures, AutomorphismsPreserveForm) {
  // once no curve is contracted g lifts to an automorphism and M^T J M = J
  int checked = 0;
  for (auto name : kFixtures) {
    auto f = load(name);
    auto g = rotor_plane_map(f.a);
    if (!stability_witness(g, f.stable.ledger).exceptional.empty()) continue;
    auto M = plane_pic_matrix(g, f.stable.ledger).action.M;
    ++checked;
    int n = int(M.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ClassVector2D a(n), b(n);
        for (int k = 0; k < n; ++k) a[k] = M[k][i], b[k] = M[k][j];
        EXPECT_EQ(intersect(a, b), i != j ? 0 : i == 0 ? 1 : -1) << name;
      }
  }
  EXPECT_EQ(checked, 2);
}

TEST(CharPoly, LemmaC3RecipeAgrees) {
  auto f = load("rotor_c3.json");
  auto cp = char_poly_det(plane_pic_matrix(rotor_plane_map(f.a), f.recipe.ledger).action);
  EXPECT_EQ(cp, P({0, 1, 0, 0, 0, 1, -3, 1}));
}

TEST(CharPoly, LemmaC4Factor) {
  auto f = load("rotor_c4.json");
  auto cp = char_poly_det(plane_pic_matrix(rotor_plane_map(f.a), f.stable.ledger).action);
  EXPECT_TRUE(cp.divide(P({-1, -2, -1, 1})).has_value());
  auto dd = dynamical_degree(cp);
  EXPECT_NEAR(dd.value, dynamical_degree(P({-1, -2, -1, 1})).value, 1e-12);
}

TEST(CharPoly, LemmaC2RecipeDiffers) {
  // a = z6 also meets the C.3 condition with j = 2, and the recipe ledger is not stable
  auto f = load("rotor_c2.json");
  CycNum a = f.a;
  EXPECT_EQ(a.pow(4), w * w);
  EXPECT_EQ(a.pow(2), w.pow(4));
  auto g = rotor_plane_map(a);
  EXPECT_FALSE(stability_witness(g, f.recipe.ledger).stable);
  EXPECT_EQ(char_poly_det(plane_pic_matrix(g, f.recipe.ledger).action), P({1, 0, 0, 0, 1, -3, 1}));
  auto stable = char_poly_det(plane_pic_matrix(g, f.stable.ledger).action);
  EXPECT_EQ(stable, P({-1, 0, 0, 1, 0, 1, 0, 1, -3, 1}));
}

TEST(CharPoly, DegenerateCasesArePeriodic) {
  for (CycNum a : {w * w, Q(1)}) {
    auto g = rotor_plane_map(a);
    EXPECT_EQ(period_of(g, 6), 3);
  }
  auto c5 = load("rotor_c5.json");
  auto cp = char_poly_det(plane_pic_matrix(rotor_plane_map(c5.a), c5.stable.ledger).action);
  EXPECT_EQ(cp, P({-1, 1}).pow(3) * P({1, 1, 1}));
}

TEST(Verdict, Lemmas) {
  auto verdict = [](const std::string& name) {
    auto f = load(name);
    auto pic = plane_pic_matrix(rotor_plane_map(f.a), f.stable.ledger).action;
    auto gc = growth_class(pic);
    auto cp = char_poly_det(pic);
    std::optional<double> th;
    if (gc.tag == GrowthTag::Exponential) th = invariant_class(pic).self_intersection;
    return std::make_pair(gc.tag, automorphism_verdict(gc, salem_verdict(cp), th));
  };
  auto [g1, v1] = verdict("rotor_c1.json");
  EXPECT_EQ(g1, GrowthTag::Exponential);
  EXPECT_FALSE(v1.possible);
  for (auto n : {"rotor_c2.json", "rotor_c3.json", "rotor_c4.json"}) {
    auto [g, v] = verdict(n);
    EXPECT_EQ(g, GrowthTag::Exponential) << n;
    EXPECT_FALSE(v.possible) << n;
  }
  for (auto n : {"rotor_c5.json", "rotor_c6.json"}) {
    auto [g, v] = verdict(n);
    EXPECT_EQ(g, GrowthTag::Periodic) << n;
    EXPECT_TRUE(v.possible) << n;
  }
}

TEST(Verdict, QuadraticAndLinear) {
  GrowthClass q;
  q.tag = GrowthTag::Quadratic;
  auto v = automorphism_verdict(q, SalemVerdict{}, std::nullopt);
  EXPECT_TRUE(v.possible);
  EXPECT_FALSE(v.note.empty());
  q.tag = GrowthTag::Linear;
  EXPECT_FALSE(automorphism_verdict(q, SalemVerdict{}, std::nullopt).possible);
}

TEST(LineDegrees, AgreeWithSymbolic) {
  auto g = rotor_plane_map(Q(2));
  EXPECT_EQ(line_degrees(g, 2).degrees, iterate_degrees(g, 2).degrees);
  auto f = build_family_map(MapParameters({Q(2), Q(0), w, Q(1)}, {Q(0), Q(1), Q(0), Q(0)}));
  EXPECT_EQ(line_degrees(f, 8).degrees, (std::vector<int>{2, 3, 3, 4, 6, 8, 10, 13}));
  EXPECT_EQ(line_degrees(rotor_plane_map(Q(2)), 8).degrees,
            (std::vector<int>{3, 8, 21, 55, 144, 377, 987, 2584}));
}

TEST(LineDegrees, LynessSecondDifferencesPeriodic) {
  // quadratic growth: second differences repeat with period 12 and sum to 4 over a period
  auto f = build_family_map(MapParameters({Q(3), Q(0), Q(1), Q(1)}, {Q(0), Q(1), Q(0), Q(0)}));
  auto d = line_degrees(f, 40).degrees;
  std::vector<int> dd;
  for (size_t i = 2; i < d.size(); ++i) dd.push_back(d[i] - 2 * d[i - 1] + d[i - 2]);
  for (size_t i = 12; i < dd.size(); ++i) EXPECT_EQ(dd[i], dd[i - 12]) << i;
  EXPECT_EQ(std::accumulate(dd.begin(), dd.begin() + 12, 0), 4);
}

TEST(Io, RoundTrip) {
  CycNum z = CycNum::zeta(12) * Q(3, 7) + Q(1);
  EXPECT_EQ(cycnum_from_json(to_json(z)), z);
  EXPECT_EQ(cycnum_from_json(json(5)), Q(5));
  EXPECT_EQ(cycnum_from_json(json("-2/6")), Q(-1, 3));
  Poly p = rotor_exceptional_curves(w)[3];
  EXPECT_EQ(poly_from_json(to_json(p), 3), p);
  PlanePoint q = plane_point({Q(0), Q(1), Q(0)}, {Slope{false, w}, Slope{true, Q(0)}});
  EXPECT_EQ(plane_point_from_json(to_json(q)), q);
  EXPECT_THROW(cycnum_from_json(json("x")), FormatError);
  EXPECT_THROW(plane_point_from_json(json{{"p", {0, 0, 0}}}), FormatError);
}

TEST(Io, LedgerRejectsOrphanPoint) {
  json j = {{"curves", json::array()},
            {"points", {to_json(plane_point({Q(0), Q(1), Q(0)}, {Slope{false, Q(1)}}))}}};
  EXPECT_THROW(ledger_from_json(j), FormatError);
}
