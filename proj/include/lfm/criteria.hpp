#pragma once

#include "invariants.hpp"
#include "io.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace lfm {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  // fails against the published value for a reason recorded in the README; the computed value is checked instead
  bool known_deviation = false;
  std::string detail;
};

namespace detail {

inline IntPoly ip(std::initializer_list<long> ascending) { return IntPoly(ascending); }

inline double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct RotorCase {
  std::string lemma;
  CycNum a;
  LedgerFile recipe, stable;
};

inline RotorCase load_rotor(const std::string& data_dir, const std::string& name) {
  json j = read_json_file(data_dir + "/" + name);
  return {j.at("lemma"), cycnum_from_json(j.at("a")), ledger_from_json(j.at("recipe")),
          ledger_from_json(j.at("stable"))};
}

struct RotorAnalysis {
  PicAction recipe, stable;
  bool recipe_stable = false;
  GrowthClass growth;
  DynamicalDegree degree;
  SalemVerdict salem;
  std::optional<double> theta_squared;
  AutomorphismVerdict verdict;
};

// Char poly from the declared ledger; growth and verdict from the stable one.
inline RotorAnalysis analyze_rotor(const RotorCase& c) {
  RotorAnalysis r;
  auto g = rotor_plane_map(c.a);
  r.recipe = plane_pic_matrix(g, c.recipe.ledger).action;
  r.recipe_stable = stability_witness(g, c.recipe.ledger).stable;
  r.stable = plane_pic_matrix(g, c.stable.ledger).action;
  r.growth = growth_class(r.stable);
  IntPoly cp = char_poly_det(r.stable);
  r.degree = dynamical_degree(cp);
  r.salem = salem_verdict(cp);
  if (r.growth.tag == GrowthTag::Exponential) r.theta_squared = invariant_class(r.stable).self_intersection;
  r.verdict = automorphism_verdict(r.growth, r.salem, r.theta_squared);
  return r;
}

inline MapParameters params_file(const std::string& data_dir, const std::string& name) {
  return params_from_json(read_json_file(data_dir + "/" + name));
}

}  // namespace detail

inline CheckResult criterion_periodicity(const std::string& data) {
  CheckResult r{1, "periodicity of the four period 8/12 maps"};
  std::ostringstream d;
  r.pass = true;
  std::pair<const char*, int> cases[] = {{"p8.json", 8}, {"p8b.json", 8}, {"p12.json", 12}, {"p12b.json", 12}};
  for (auto [file, want] : cases) {
    auto t = std::chrono::steady_clock::now();
    auto p = period_of(build_family_map(detail::params_file(data, file)), 16);
    double s = detail::seconds_since(t);
    bool ok = p && *p == want && s < 60;
    r.pass &= ok;
    d << file << "=" << (p ? std::to_string(*p) : "none") << " (" << std::fixed << std::setprecision(2) << s
      << "s) ";
  }
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_sec7_degree(const std::string& data) {
  CheckResult r{2, "dynamical degree of the a=2 map"};
  auto s = gamma_orbit_signature(detail::params_file(data, "sec7.json"));
  IntPoly bracket = char_poly_bracket(s);
  IntPoly want = detail::ip({-1, -1, 0, 1}).shifted(11) + detail::ip({-1, 0, 1, 1});
  IntPoly factor = detail::ip({1, 0, 0, -1, -1, -1, 0, 0, 1});
  double lam = dynamical_degree(bracket).value;
  r.pass = s.N == 11 && s.m() == 0 && !s.m_s && bracket == want && bracket.divide(factor) &&
           std::fabs(lam - 1.28064) < 1e-4;
  std::ostringstream d;
  d << "N=" << s.N << " m=" << s.m() << " m_s=" << (s.m_s ? std::to_string(*s.m_s) : "inf") << " bracket=" << bracket
    << " lambda=" << std::setprecision(8) << lam;
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_y_level() {
  CheckResult r{3, "Y-level Picard action"};
  IntPoly cp = char_poly_det(picY_matrix());
  double rho = dynamical_degree(cp).value;
  r.pass = cp == detail::ip({1, 0, 1}) * detail::ip({-1, -1, 0, 1}) && std::fabs(rho - 1.32472) < 1e-4;
  std::ostringstream d;
  d << "charpoly=" << cp << " radius=" << std::setprecision(8) << rho;
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_zeta5(const std::string& data) {
  CheckResult r{4, "fifth-root-of-unity map, N=19"};
  auto s = gamma_orbit_signature(detail::params_file(data, "zeta5.json"));
  IntPoly want = detail::ip({-1, -1, 0, 1}).shifted(19) + detail::ip({-1, 0, 1, 1});
  IntPoly bracket = char_poly_bracket(s);
  double lam = dynamical_degree(want).value;
  r.pass = s.N == 19 && bracket == want && std::fabs(lam - 1.3211018) < 1e-5;
  std::ostringstream d;
  d << "N=" << s.N << " lambda=" << std::setprecision(10) << lam;
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_identity(uint64_t seed = 20) {
  CheckResult r{5, "det char poly = ±(t^2+1)·bracket on random signatures"};
  std::mt19937_64 rng(seed);
  auto t = std::chrono::steady_clock::now();
  int ok = 0, n = 60;
  for (int i = 0; i < n; ++i) ok += identity_check(random_signature(rng)) != 0;
  double s = detail::seconds_since(t);
  r.pass = ok == n && s < 60;
  std::ostringstream d;
  d << ok << "/" << n << " signatures in " << std::fixed << std::setprecision(2) << s << "s";
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_lyness(const std::string& data) {
  CheckResult r{6, "Lyness map integrability"};
  auto p = detail::params_file(data, "lyness.json");
  auto s = gamma_orbit_signature(p);
  auto pic = picZ_matrix(s);
  auto g = growth_class(pic);
  auto deg = iterate_degrees(build_family_map(p), 10);
  auto pred = predicted_degrees(pic, 10);
  bool same = deg.degrees.size() == 10;
  for (size_t i = 0; same && i < 10; ++i) same = pred[i] == deg.degrees[i];
  r.pass = s.N == 10 && s.m_s == 3 && g.tag == GrowthTag::Quadratic && g.jordan_at_one == 3 && same;
  std::ostringstream d;
  d << "N=" << s.N << " m_s=" << (s.m_s ? std::to_string(*s.m_s) : "inf") << " growth=" << growth_name(g.tag)
    << " jordan=" << g.jordan_at_one << " degrees" << (same ? "=" : "!=") << "prediction";
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_invariants(const std::string& data) {
  CheckResult r{7, "invariant quartics"};
  std::ostringstream d;
  using namespace quartics;
  CycNum two(2);
  auto sec7 = build_family_map(detail::params_file(data, "sec7.json"));
  auto basis = invariant_space(sec7, 4, multiplier_of(sec7, P1(two)));
  bool p1 = basis.size() == 1 && proportional(basis[0], P1(two));
  d << "P1 " << (p1 ? "recovered" : "missing");

  auto ly = build_family_map(detail::params_file(data, "lyness.json"));
  auto hits = scan_multipliers(ly, 4);
  bool lyn = !hits.empty() && hits[0].dimension >= 3;
  for (auto Pq : {Q0(), Q1(CycNum(3)), Q2(CycNum(3))}) lyn = lyn && satisfies_invariance(ly, Pq, hits[0].t);
  d << "; Lyness dim=" << (hits.empty() ? 0 : hits[0].dimension) << (lyn ? " contains Q0,Q1,Q2" : " incomplete");

  auto rot = build_family_map(detail::params_file(data, "rotor81b.json"));
  std::vector<std::string> failed;
  for (auto [name, R] : std::vector<std::pair<std::string, Poly>>{{"R0", R0()}, {"R1", R1()}, {"R2", R2()}}) {
    try {
      auto t = multiplier_of(rot, R);
      auto sp = invariant_space(rot, 4, t);
      bool in = false;
      for (auto& b : sp) in |= proportional(b, R);
      if (!in) failed.push_back(name);
    } catch (const NotASolution&) {
      failed.push_back(name);
      d << "; " << name << " as printed is not invariant";
    }
  }
  CycNum k = pencil_action(sec7, P0(), P1(two));
  bool kappa = k * k * k == CycNum(1) && k != CycNum(1);
  d << "; kappa^3=1 " << (kappa ? "yes" : "no");

  bool resub = true;
  for (auto f : {sec7, ly, rot})
    for (auto& h : scan_multipliers(f, 4))
      for (auto& P : invariant_space(f, 4, h.t)) {
        auto q = P.substitute(f.comps).divide(jacobian_form(f));
        resub = resub && q && *q == P.scaled(h.t);
      }
  d << "; resubstitution " << (resub ? "exact" : "failed");
  bool r83 = failed.empty(), r2_only = failed == std::vector<std::string>{"R2"};
  r.pass = p1 && lyn && r83 && kappa && resub;
  // recorded deviation: only the printed R2 fails, and the corrected form is in the kernel
  bool fixed = r2_only && invariant_space(rot, 4, multiplier_of(rot, R2_solution())).size() == 1;
  r.known_deviation = !r.pass && p1 && lyn && kappa && resub && fixed;
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_singular() {
  CheckResult r{8, "A1 points of P1 (a=2)"};
  using namespace quartics;
  auto P = P1(CycNum(2));
  auto e1 = singular_check(P, {CycNum(0), CycNum(1), CycNum(0), CycNum(0)});
  auto e3 = singular_check(P, {CycNum(0), CycNum(0), CycNum(0), CycNum(1)});
  auto pm = singular_check_diagonal(P, CycNum(1) + CycNum::zeta(3), CycNum(2));
  r.pass = e1 == SingularType::A1 && e3 == SingularType::A1 && pm == SingularType::A1;
  r.detail = std::string("e1 ") + singular_name(e1) + ", e3 " + singular_name(e3) + ", p± " + singular_name(pm);
  return r;
}

inline CheckResult criterion_rotor_lemmas(const std::string& data) {
  CheckResult r{9, "rotor map lemmas"};
  std::ostringstream d;
  bool all = true, recorded = true;
  // computed values recorded for the lemmas that disagree with the published ones
  auto as_recorded = [&](bool ok) { recorded &= ok; };
  auto item = [&](const std::string& lemma, bool ok, const std::string& what) {
    all &= ok;
    if (lemma == "C.1" || lemma == "C.3" || lemma == "C.4") recorded &= ok;
    d << lemma << (ok ? " ok" : " MISMATCH") << " (" << what << "); ";
  };
  auto str = [](const auto& x) {
    std::ostringstream o;
    o << x;
    return o.str();
  };
  using detail::ip;
  {
    auto a = detail::analyze_rotor(detail::load_rotor(data, "rotor_c1.json"));
    auto th = invariant_class(a.recipe);
    bool ok = a.recipe.M == IntMatrix{{3, 1}, {-1, 0}} &&
              std::fabs(th.self_intersection - (th.lambda * th.lambda - 1)) < 1e-9 && !a.verdict.possible;
    item("C.1", ok, "theta^2=" + str(th.self_intersection));
  }
  {
    auto a = detail::analyze_rotor(detail::load_rotor(data, "rotor_c2.json"));
    IntPoly cp = char_poly_det(a.recipe);
    item("C.2", cp == ip({1, -2, 1, 0, 3, -4, 1}) && !a.verdict.possible, "charpoly " + str(cp));
    as_recorded(cp == ip({1, 0, 0, 0, 1, -3, 1}) && !a.verdict.possible);
  }
  {
    auto a = detail::analyze_rotor(detail::load_rotor(data, "rotor_c3.json"));
    IntPoly cp = char_poly_det(a.recipe);
    item("C.3", cp == ip({0, 1, 0, 0, 0, 1, -3, 1}) && !a.verdict.possible,
         "charpoly " + str(cp) + (a.recipe_stable ? "" : ", declared ledger unstable"));
  }
  {
    auto a = detail::analyze_rotor(detail::load_rotor(data, "rotor_c4.json"));
    double want = dynamical_degree(ip({-1, -2, -1, 1})).value;
    item("C.4", std::fabs(a.degree.value - want) < 1e-9 && !a.verdict.possible, "lambda=" + str(a.degree.value));
  }
  {
    auto a = detail::analyze_rotor(detail::load_rotor(data, "rotor_c5.json"));
    IntPoly cp = char_poly_det(a.stable);
    IntPoly want = ip({0, 1}) * ip({1, 1}) * ip({-1, 1}).pow(3);
    item("C.5", cp == want && a.growth.jordan_at_one == 2 && !a.verdict.possible,
         "charpoly " + str(cp) + ", growth " + growth_name(a.growth.tag));
    as_recorded(cp == ip({-1, 1}).pow(3) * ip({1, 1, 1}) && a.growth.tag == GrowthTag::Periodic);
  }
  {
    auto a = detail::analyze_rotor(detail::load_rotor(data, "rotor_c6.json"));
    IntPoly cp = char_poly_det(a.recipe);
    IntPoly want = ip({-1, 1}).pow(4) * ip({1, 1}) * ip({1, 1, 1});
    item("C.6", cp == want && a.growth.tag == GrowthTag::Quadratic && a.verdict.possible,
         "charpoly " + str(cp) + ", growth " + growth_name(a.growth.tag));
    as_recorded(cp == ip({0, 0, 1}) * ip({-1, 1}).pow(3) * ip({1, 1, 1}) &&
                a.growth.tag == GrowthTag::Periodic && a.verdict.possible);
  }
  r.pass = all;
  r.known_deviation = !all && recorded;
  r.detail = d.str();
  return r;
}

inline CheckResult criterion_rotor_geometry(const std::string& data) {
  CheckResult r{10, "rotor curve intersections (a=2)"};
  auto g = rotor_orbit(detail::params_file(data, "sec7.json"));
  auto I = [&](int j, int k) { return curve_intersections(g[j - 1], g[k - 1]); };
  int c[] = {I(1, 9), I(11, 3), I(11, 5), I(11, 9), I(11, 10)};
  r.pass = g.size() == 11 && c[0] == 2 && c[1] == 2 && c[2] == 1 && c[3] == 1 && c[4] == 1;
  std::ostringstream d;
  d << "(1,9)=" << c[0] << " (11,3)=" << c[1] << " (11,5)=" << c[2] << " (11,9)=" << c[3] << " (11,10)=" << c[4];
  r.detail = d.str();
  return r;
}

inline std::vector<std::function<CheckResult()>> acceptance_criteria(const std::string& data) {
  return {[=] { return criterion_periodicity(data); }, [=] { return criterion_sec7_degree(data); },
          [] { return criterion_y_level(); },          [=] { return criterion_zeta5(data); },
          [] { return criterion_identity(); },         [=] { return criterion_lyness(data); },
          [=] { return criterion_invariants(data); },  [] { return criterion_singular(); },
          [=] { return criterion_rotor_lemmas(data); },  [=] { return criterion_rotor_geometry(data); }};
}


// Published examples outside the ten criteria. Each check groups the examples of one area.
namespace detail {

struct Tally {
  int ok = 0, n = 0;
  std::vector<std::string> bad;
  void operator()(const std::string& name, bool pass) {
    ++n;
    if (pass) ++ok;
    else bad.push_back(name);
  }
  void guarded(const std::string& name, const std::function<bool()>& f) {
    bool pass = false;
    try {
      pass = f();
    } catch (const std::exception&) {
    }
    (*this)(name, pass);
  }
  CheckResult result(int id, std::string title) const {
    CheckResult r{id, std::move(title)};
    r.pass = bad.empty();
    std::ostringstream d;
    d << ok << "/" << n << " examples";
    for (size_t i = 0; i < bad.size(); ++i) d << (i ? ", " : "; failed: ") << bad[i];
    r.detail = d.str();
    return r;
  }
};

inline Poly xv(int i, int nv = 4) { return Poly::var(nv, i); }

inline MapParameters mp(Vec4 a, Vec4 b) { return MapParameters(std::move(a), std::move(b)); }
inline CycNum qn(long p, long q = 1) { return CycNum::rational(p, q); }

}  // namespace detail

inline CheckResult example_algebra() {
  detail::Tally t;
  CycNum eta = CycNum::zeta(6);
  t("eta^2 - eta + 1 = 0", (eta * eta - eta + CycNum(1)).is_zero());
  t("root of x^3-x-1", std::fabs(dynamical_degree(detail::ip({-1, -1, 0, 1})).value - 1.324718) < 1e-5);
  t("root of t^8-t^5-t^4-t^3+1",
    std::fabs(dynamical_degree(detail::ip({1, 0, 0, -1, -1, -1, 0, 0, 1})).value - 1.28064) < 1e-5);
  return t.result(11, "exact arithmetic and roots");
}

inline CheckResult example_family(const std::string& data) {
  using detail::qn;
  using detail::xv;
  detail::Tally t;
  CycNum w = CycNum::zeta(3);
  auto sec7 = detail::params_file(data, "sec7.json");
  auto f = build_family_map(sec7);
  t("map for alpha=(a,0,w,1)", f.comps.size() == 4 && f.comps[0] == xv(0) * xv(1) && f.comps[1] == xv(1) * xv(2) &&
                                   f.comps[2] == xv(1) * xv(3) &&
                                   f.comps[3] == xv(0) * (xv(0).scaled(2) + xv(2).scaled(w) + xv(3)));
  auto q = conjugate_inverse_params(sec7);
  t("conjugate inverse is critical",
    is_critical(q) && q == detail::mp({qn(2), qn(0), qn(1), w}, {qn(0), qn(1), qn(0), qn(0)}));
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-4, 4);
  bool div = true;
  for (int i = 0; i < 10;) {
    Vec4 a, b;
    for (int k = 0; k < 4; ++k) a[k] = qn(d(rng)), b[k] = qn(d(rng));
    MapParameters p(a, b);
    if (!p.degeneracy().empty()) continue;
    ++i;
    div = div && jacobian_factored(p).divisible;
  }
  t("Jacobian divisible by (beta.x)^2", div);
  auto c = classify_parameters(sec7);
  t("a=2 map critical and normalized", c.critical && c.normalized == sec7);
  t("beta2=beta3!=0 is Lemma 3.3(i)",
    classify_parameters(detail::mp({qn(1), qn(1), qn(1), qn(1)}, {qn(0), qn(0), qn(1), qn(1)})).lemma == "3.3(i)");
  auto l35 = classify_parameters(detail::mp({qn(3), qn(0), qn(0), qn(1)}, {qn(0), qn(1), qn(0), qn(0)}));
  t("alpha2=0 is Lemma 3.5", !l35.critical && l35.lemma.rfind("3.5", 0) == 0);
  auto p8 = iterate_degrees(build_family_map(detail::params_file(data, "p8.json")), 16).degrees;
  bool per = p8.size() == 16;
  for (int i = 8; per && i < 16; ++i) per = p8[i] == p8[i - 8];
  t("period-8 degrees repeat", per);
  // second differences of the Lyness degrees are periodic (period 12) with positive mean, so growth is quadratic
  auto ly = line_degrees(build_family_map(detail::params_file(data, "lyness.json")), 40).degrees;
  bool quad = ly.size() == 40;
  std::vector<int> dd;
  for (size_t i = 2; quad && i < ly.size(); ++i) dd.push_back(ly[i] - 2 * ly[i - 1] + ly[i - 2]);
  int sum = 0;
  for (size_t i = 0; quad && i < dd.size(); ++i) {
    if (i >= 12) quad = dd[i] == dd[i - 12];
    if (i < 12) sum += dd[i];
  }
  t("Lyness degrees grow quadratically", quad && sum > 0);
  return t.result(12, "parameter family, degrees and classification");
}

inline CheckResult example_atlas() {
  using detail::qn;
  detail::Tally t;
  auto Z = pc(qn(0)), one = pc(qn(1));
  Poly eps = Poly::var(3, kEps), unit(3, CycNum(1));
  CycNum c = qn(4), d = qn(-3);
  auto x = chart_to_p3(line_divisor_element(3, {Z, one, pc(c), Z}, {one, pc(d)}, 0));
  t("S03 chart point", x[0] == eps && x[1] == unit && x[2] == Poly(3, c) && x[3] == eps.scaled(d));
  auto y = chart_to_p3(point_divisor_element(1, {one, Z, pc(c), pc(d)}, 0));
  t("E1 chart point", y[0] == eps && y[1] == unit && y[2] == eps.scaled(c) && y[3] == eps.scaled(d));
  CycNum b0 = qn(2), a2 = qn(5);
  auto f = build_family_map(detail::mp({qn(3), qn(0), a2, qn(1)}, {b0, qn(1), qn(0), qn(0)}));
  Poly T = param_t(), S = param_s();
  t.guarded("Sigma_beta to E3", [&] {
    return apply_fY(f, p3_element({one, pc(-b0), T, S}, 2), Atlas::Y()) ==
           point_divisor_element(3, {one, T, S, Z}, 2);
  });
  t.guarded("E3 to S01", [&] {
    return apply_fY(f, point_divisor_element(3, {one, T, S, Z}, 2), Atlas::Y()) ==
           line_divisor_element(1, {Z, Z, pc(b0) + T, one}, {one, S}, 2);
  });
  t.guarded("special fiber blows up into the S03 fiber", [&] {
    auto q = line_divisor_element(1, {Z, Z, one, pc(-a2)}, {one, pc(qn(4))}, 0);
    Vec4 w{qn(1), qn(3), qn(-1), qn(1)}, wn{qn(0), qn(0), qn(4), qn(0)};
    auto r = detail::apply_once(f, q, Atlas::Y(), w, wn);
    return r.chart == Chart::S03 && detail::proj_equal(r.tuple(), {Z, one, pc(-a2), Z});
  });
  return t.result(13, "blowup charts and orbit steps");
}

inline CheckResult example_signatures(const std::string& data) {
  detail::Tally t;
  auto sig = [&](const char* f) { return gamma_orbit_signature(detail::params_file(data, f)); };
  auto s8 = sig("p8.json");
  t("period-8 signature {5,[2],[3]}", s8.N == 5 && s8.d_list == std::vector<int>{2} &&
                                          s8.u_list == std::vector<int>{3} && !s8.m_s);
  t("second period-8 map N=3", sig("p8b.json").N == 3);
  t("period-12 map N=4", sig("p12.json").N == 4);
  auto s12 = sig("p12b.json");
  t("eta family {6,[2],[4]}", s12.N == 6 && s12.d_list == std::vector<int>{2} && s12.u_list == std::vector<int>{4});
  return t.result(14, "orbit signatures");
}

inline CheckResult example_noncritical() {
  using detail::mp;
  using detail::qn;
  detail::Tally t;
  t.guarded("Lemma 3.3(i) four-cycle", [&] {
    auto c = noncritical_certificate(mp({qn(1), qn(2), qn(3), qn(5)}, {qn(7), qn(0), qn(1), qn(1)}));
    return c.certified && c.orbit.size() == 4 && c.orbit[0] == p3_point({qn(0), qn(0), qn(0), qn(1)}) &&
           c.orbit[1].chart == Chart::S03 && c.orbit[3] == c.orbit[0];
  });
  t.guarded("Lemma 3.4 preperiodic under the inverse", [&] {
    auto c = noncritical_certificate(mp({qn(1), qn(0), qn(3), qn(5)}, {qn(7), qn(1), qn(0), qn(2)}));
    return c.lemma == "3.4" && c.inverse && c.certified;
  });
  t.guarded("Lemma 3.5 two-cycles", [&] {
    auto c = noncritical_certificate(mp({qn(1), qn(0), qn(3), qn(0)}, {qn(7), qn(1), qn(0), qn(0)}));
    auto d = noncritical_certificate(mp({qn(1), qn(0), qn(0), qn(3)}, {qn(7), qn(1), qn(0), qn(0)}));
    return c.certified && c.period == 2 && d.certified && d.inverse;
  });
  return t.result(15, "non-critical certificates");
}

inline CheckResult example_picard() {
  using detail::ip;
  detail::Tally t;
  auto sig = [](int N, std::vector<int> d = {}, std::vector<int> u = {}, std::optional<int> ms = {}) {
    OrbitSignature s;
    s.N = N;
    s.d_list = std::move(d);
    s.u_list = std::move(u);
    s.m_s = ms;
    return s;
  };
  t("Y-level first entry 2", picY_matrix().M[0][0] == 2);
  auto p = picZ_matrix(sig(11));
  std::vector<std::vector<long>> top{{2, 0, 1, 0, 1, 0},     {-1, 0, -1, 0, 0, 0}, {0, 1, -1, 0, 0, 0},
                                     {-1, 0, -1, 0, -1, 0}, {-1, 0, -1, 1, -1, 0}, {-1, 0, 0, 0, -1, 0}};
  bool block = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) block = block && p.M[i][j] == top[i][j];
  t("top 6x6 block of the N=11 matrix", block);
  IntPoly c3 = ip({-1, -1, 0, 1});
  IntPoly lyb = c3.shifted(10) + (ip({-1, 1}) * ip({1, 1, 1})).shifted(5) + ip({-1, 0, 1, 1});
  t("Lyness bracket", char_poly_bracket(sig(10, {}, {}, 3)) == lyb);
  IntPoly full = ip({1, 0, 1}) * (c3.shifted(11) + ip({-1, 0, 1, 1}));
  IntPoly det = char_poly_det(p);
  t("N=11 det = ±(t^2+1) bracket", det == full || det == -full);
  IntPoly f5 = ip({1, 0, 1}) * ip({1, 0, 1}) * (c3.shifted(3) + ip({-1, 0, 1, 1}));
  IntPoly d5 = char_poly_det(picZ_matrix(sig(5, {2}, {3})));
  t("{5,[2],[3]} det formula", d5 == f5 || d5 == -f5);
  t("N=19 degree 1.3211018", std::fabs(dynamical_degree(char_poly_bracket(sig(19))).value - 1.3211018) < 1e-6);
  auto ly = growth_class(picZ_matrix(sig(10, {}, {}, 3)));
  t("Lyness 3x3 Jordan block", ly.tag == GrowthTag::Quadratic && ly.jordan_at_one == 3);
  auto g11 = growth_class(p);
  t("N=11 exponential 1.28064", g11.tag == GrowthTag::Exponential && std::fabs(g11.delta - 1.28064) < 1e-5);
  std::mt19937_64 rng(3);
  bool two = predicted_degrees(picY_matrix(), 1)[0] == 2;
  for (int i = 0; i < 10; ++i) two = two && predicted_degrees(picZ_matrix(random_signature(rng)), 1)[0] == 2;
  t("first degree is 2", two);
  t("C.2 polynomial not Salem", !salem_verdict(ip({1, -2, 1, 0, 3, -4, 1})).salem);
  return t.result(16, "Picard actions and spectra");
}

inline CheckResult example_rotor(const std::string& data) {
  using detail::qn;
  detail::Tally t;
  CycNum w = CycNum::zeta(3), a(2);
  auto pt = [](CycNum x, CycNum y, CycNum z) { return plane_point({x, y, z}); };
  auto prop = [](const BirationalMap& f, const BirationalMap& g) {
    return f.comps.size() == g.comps.size() && detail::proj_equal(f.comps, g.comps);
  };
  auto X = [](int i) { return detail::xv(i, 3); };
  t.guarded("cubic rotor map (a=2)",
            [&] { return prop(restrict_to_plane(detail::params_file(data, "sec7.json")), rotor_plane_map(a)); });
  t.guarded("quadratic rotor map (w case)", [&] {
    auto r = restrict_to_plane(detail::params_file(data, "rotor81b.json"));
    return r.degree() == 2;
  });
  t.guarded("Lyness rotor map", [&] {
    BirationalMap g;
    g.comps = {X(0) * (X(0).scaled(qn(3)) + X(1).scaled(qn(3)) + X(2)), X(1) * (X(0) + X(1) + X(2)),
               X(2) * (X(0).scaled(qn(3)) + X(1) + X(2))};
    return prop(restrict_to_plane(detail::params_file(data, "lyness.json")), g);
  });
  auto g = rotor_plane_map(a);
  auto v = plane_exceptional_verify(g, rotor_exceptional_curves(a));
  bool four = v.size() == 4;
  for (auto& e : v) four = four && e.divides_jacobian && e.contracted;
  t("four exceptional curves verified", four);
  t("C2 image [0:1:-aw]", four && v[1].image && *v[1].image == pt(qn(0), qn(1), -a * w).p);
  auto o = plane_point_orbit(g, pt(qn(0), qn(1), -a * w), 10);
  t("three-cycle", o.end == OrbitEnd::Periodic && o.period == 3 && o.points[1] == pt(qn(0), qn(1), -a) &&
                       o.points[2] == pt(qn(0), qn(1), -a * w * w));
  auto c3 = plane_point_orbit(g, pt(qn(1), -w * w, qn(0)), 6);
  bool formula = c3.points.size() >= 7;
  for (int j = 1; formula && j <= 7; ++j) formula = c3.points[j - 1] == pt(qn(1), -w * w * (w / a).pow(j - 1), qn(0));
  t("C3 orbit formula", formula);
  std::mt19937_64 rng(3);
  auto c1 = plane_point_orbit(g, plane_point(detail::point_on_curve(rotor_exceptional_curves(a)[0], rng)), 10);
  t("C1 reaches e1 at step 1", c1.end == OrbitEnd::HitsIndeterminacy && c1.step == 1 &&
                                   c1.points[1] == pt(qn(0), qn(1), qn(0)));
  CycNum z6 = cycnum_from_json(read_json_file(data + "/rotor_c2.json").at("a"));
  t("zeta6 satisfies a^4 = w^2", z6.pow(4) == w * w);
  return t.result(17, "planar rotor map");
}

inline std::vector<std::function<CheckResult()>> reference_examples(const std::string& data) {
  return {[] { return example_algebra(); },  [=] { return example_family(data); },
          [] { return example_atlas(); },    [=] { return example_signatures(data); },
          [] { return example_noncritical(); }, [] { return example_picard(); },
          [=] { return example_rotor(data); }};
}

}  // namespace lfm
