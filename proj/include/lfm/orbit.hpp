#pragma once

#include "atlas.hpp"

namespace lfm {

struct NonClosing : std::runtime_error {
  int n_max;
  explicit NonClosing(int n) : std::runtime_error("orbit did not close within " + std::to_string(n) + " steps"), n_max(n) {}
};

enum class EventTag { Advance, FiberOfGamma, BlowupAtSigmaBetaGamma, EnterF0BetaGamma, Terminate };

inline const char* event_name(EventTag t) {
  static const char* n[] = {"Advance", "FiberOfGamma", "BlowupAtSigmaBetaGamma", "EnterF0BetaGamma", "Terminate"};
  return n[int(t)];
}

struct OrbitEvent {
  int step;
  EventTag tag;
  OrbitElement element;  // f_Y^step Σγ
  int dim;
  bool whole_fiber = false;  // EnterF0BetaGamma only
};

struct OrbitSignature {
  int N = 0;
  std::vector<int> d_list, u_list;
  std::optional<int> m_s;  // absent means infinite
  bool whole_fiber = true;
  std::vector<OrbitEvent> trace;

  int m() const { return int(d_list.size()); }
};

namespace detail {

inline Poly dot(const Vec4& v, const std::array<Poly, 4>& x) {
  Poly r(kParamVars);
  for (int i = 0; i < 4; ++i)
    if (!v[i].is_zero()) r += x[i].scaled(v[i]);
  return r;
}

inline bool minors_vanish(const std::vector<Poly>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      Poly di = v[i].derivative(0), dj = v[j].derivative(0);
      if (v[i] * dj != v[j] * di) return false;
    }
  return true;
}

}  // namespace detail

inline MapParameters critical_normal_form(const MapParameters& p) {
  ParamClass c = classify_parameters(p);
  if (!c.critical) throw std::invalid_argument("parameters are not critical (" + c.lemma + ")");
  return c.normalized;
}

// Forward orbit of Σγ in Y, starting from f_Y Σγ = Σ_BC at step 1.
inline OrbitSignature gamma_orbit_signature(const MapParameters& params, int n_max = 64) {
  MapParameters p = critical_normal_form(params);
  BirationalMap f = build_family_map(p);
  Vec4 beta = p.beta, gamma = p.gamma();
  const auto& al = p.alpha;
  Atlas Y = Atlas::Y();
  std::mt19937_64 rng(7);
  Poly t = param_t();

  OrbitSignature sig;
  OrbitElement e = p3_element({pc(CycNum(1)), t, pc(-al[0]) - t.scaled(al[2]), pc(CycNum(0))}, 1);
  Vec4 f0bg{CycNum(0), CycNum(0), CycNum(1), -al[2]};
  for (int step = 1; step <= n_max; ++step) {
    int dim = dimension(e, rng);
    OrbitEvent ev{step, EventTag::Advance, e, dim};
    std::optional<OrbitElement> next;
    if (e.chart == Chart::P3) {
      bool in_b = detail::dot(beta, e.a).is_zero(), in_g = detail::dot(gamma, e.a).is_zero();
      if (in_b && in_g && dim == 1) {
        ev.tag = EventTag::Terminate;
        sig.N = step;
        sig.trace.push_back(ev);
        return sig;
      }
      if (in_b && in_g && dim == 0) {
        // the point blows up to the line Σ_C ∩ {p3 x1 = p2 x2}, i.e. [p0 : p2 : p3 : t]
        ev.tag = EventTag::BlowupAtSigmaBetaGamma;
        sig.u_list.push_back(step);
        next = p3_element({e.a[0], e.a[2], e.a[3], t}, 1);
        if (!e.a[0].is_zero()) {
          CycNum mu = e.a[2].constant_term() / e.a[0].constant_term();
          OrbitElement alt = p3_element({pc(CycNum(1)), pc(mu), pc(-al[0] - al[2] * mu), t}, 1);
          if (!(alt == *next)) throw std::logic_error("blowup line disagrees with the Σ_C parameterization");
        }
      } else if (in_g && dim == 1 && detail::minors_vanish({e.a[0], e.a[2], e.a[3]})) {
        ev.tag = EventTag::FiberOfGamma;
        sig.d_list.push_back(step);
      }
    } else if (e.chart == Chart::S01) {
      std::array<Poly, 4> base{pc(f0bg[0]), pc(f0bg[1]), pc(f0bg[2]), pc(f0bg[3])};
      if (detail::proj_equal(e.tuple(), {base.begin(), base.end()})) {
        ev.tag = EventTag::EnterF0BetaGamma;
        ev.whole_fiber = dim == 1;
        if (sig.m_s) throw std::logic_error("orbit entered the special fiber twice");
        sig.m_s = step - 2;
        sig.whole_fiber = ev.whole_fiber;
        next = line_divisor_element(3, {pc(CycNum(0)), pc(CycNum(1)), pc(-al[2]), pc(CycNum(0))},
                                    {pc(CycNum(1)), t}, 1);
      }
    }
    sig.trace.push_back(ev);
    e = next ? *next : apply_fY(f, e, Y, 1000 + step);
  }
  throw NonClosing(n_max);
}

// N - u_j = d_{m+1-j} and N - d_j = u_{m+1-j} across the signatures of f and f^{-1}
inline bool duality_check(const OrbitSignature& f, const OrbitSignature& g) {
  if (f.N != g.N) return false;
  if (f.u_list.size() != g.d_list.size() || f.d_list.size() != g.u_list.size()) return false;
  int m = int(f.u_list.size());
  for (int j = 0; j < m; ++j)
    if (f.N - f.u_list[j] != g.d_list[m - 1 - j]) return false;
  m = int(f.d_list.size());
  for (int j = 0; j < m; ++j)
    if (f.N - f.d_list[j] != g.u_list[m - 1 - j]) return false;
  return true;
}

inline OrbitSignature inverse_signature(const MapParameters& params, int n_max = 64) {
  return gamma_orbit_signature(conjugate_inverse_params(critical_normal_form(params)), n_max);
}

}  // namespace lfm

namespace lfm {

namespace detail {

inline UPoly as_upoly(const Poly& p) {
  if (p.degree_in(1) > 0) throw std::invalid_argument("expected a one-parameter family");
  return UPoly::from_poly(p, 0);
}

// homogeneous forms of degree k (in n variables) vanishing on the curve v(t)
inline std::vector<Poly> vanishing_forms(const std::vector<Poly>& v, int k) {
  int n = int(v.size());
  std::vector<uint64_t> monos;
  std::function<void(int, int, uint64_t)> gen = [&](int i, int left, uint64_t m) {
    if (i == n - 1) {
      monos.push_back(Mono::set(m, i, left));
      return;
    }
    for (int e = left; e >= 0; --e) gen(i + 1, left - e, Mono::set(m, i, e));
  };
  gen(0, k, 0);
  std::vector<UPoly> vals;
  for (auto m : monos) {
    Poly p(kParamVars, CycNum(1));
    for (int i = 0; i < n; ++i) p = p * v[i].pow(Mono::get(m, i));
    vals.push_back(as_upoly(p));
  }
  int rows = 0;
  for (auto& u : vals) rows = std::max(rows, u.degree() + 1);
  CycMatrix M(rows, std::vector<CycNum>(monos.size()));
  for (size_t c = 0; c < monos.size(); ++c)
    for (int r = 0; r < rows; ++r) M[r][c] = vals[c][r];
  std::vector<Poly> forms;
  for (auto& ker : kernel(M, int(monos.size()))) {
    Poly f(n);
    for (size_t c = 0; c < monos.size(); ++c)
      if (!ker[c].is_zero()) f.add_term(monos[c], ker[c]);
    forms.push_back(f);
  }
  return forms;
}

inline int param_degree(const std::vector<Poly>& v) {
  int d = 0;
  for (auto& p : v) d = std::max(d, p.degree());
  return d;
}

inline std::vector<CycNum> leading_vector(const std::vector<Poly>& v) {
  int d = param_degree(v);
  std::vector<CycNum> r;
  for (auto& p : v) r.push_back(as_upoly(p)[d]);
  return r;
}

// parameter values (finite roots as a squarefree polynomial, plus infinity)
struct ParamSet {
  UPoly finite;
  bool infinity = false;
  int count() const { return std::max(0, finite.degree()) + (infinity ? 1 : 0); }
};

// parameters t at which the curve a(t) lies on the curve b
inline ParamSet incidence(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  int k = std::max(1, param_degree(b));
  auto forms = vanishing_forms(b, k);
  ParamSet r;
  std::vector<CycNum> top = leading_vector(a);
  r.infinity = true;
  UPoly g;
  for (auto& F : forms) {
    UPoly q = as_upoly(F.substitute(a));
    g = gcd(g, q);
    if (!F.eval(top).is_zero()) r.infinity = false;
  }
  if (g.is_zero()) throw std::invalid_argument("curves share a component");
  r.finite = squarefree_part(g);
  return r;
}

// the single root of a degree-1 polynomial
inline CycNum linear_root(const UPoly& p) {
  if (p.degree() != 1) throw UnsupportedConfiguration("intersection at a center with a non-rational parameter");
  return -p[0] / p[1];
}

// chart point of the strict transform of a P3 curve at parameter tau lying on a center
inline OrbitElement chart_point_at(const std::vector<Poly>& a, const CycNum& tau, Chart c) {
  // shift to t = tau + h and read the lowest-order terms in h
  std::vector<UPoly> sh;
  UPoly lin({tau, CycNum(1)});
  for (auto& p : a) sh.push_back(as_upoly(p).compose(lin));
  auto low = [&](const std::vector<int>& idx) {
    for (int k = 1;; ++k) {
      bool nz = false;
      for (int i : idx) nz |= !sh[i][k].is_zero();
      if (nz) {
        std::vector<Poly> r;
        for (int i : idx) r.push_back(pc(sh[i][k]));
        return r;
      }
      if (k > 64) throw std::logic_error("curve is constant at a center");
    }
  };
  int j = chart_index(c);
  if (is_point_divisor(c)) {
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
      if (i != j) idx.push_back(i);
    auto r = low(idx);
    std::array<Poly, 4> d;
    d[j] = pc(CycNum(0));
    for (size_t q = 0; q < idx.size(); ++q) d[idx[q]] = r[q];
    return point_divisor_element(j, d, 0);
  }
  auto r = low({0, j});
  std::array<Poly, 4> base;
  for (int i = 0; i < 4; ++i) base[i] = pc(sh[i][0]);
  return line_divisor_element(j, base, {r[0], r[1]}, 0);
}

inline std::vector<Poly> center_conditions(const std::vector<Poly>& a, Chart c) {
  int j = chart_index(c);
  if (is_point_divisor(c)) {
    std::vector<Poly> r;
    for (int i = 0; i < 4; ++i)
      if (i != j) r.push_back(a[i]);
    return r;
  }
  return {a[0], a[j]};
}

inline UPoly gcd_of(const std::vector<Poly>& ps, UPoly g = UPoly()) {
  for (auto& p : ps) g = gcd(g, as_upoly(p));
  return g;
}

// points where the strict transform of a P3 curve meets the divisor c
inline std::vector<OrbitElement> divisor_hits(const std::vector<Poly>& a, Chart c) {
  std::vector<OrbitElement> r;
  UPoly h = gcd_of(center_conditions(a, c));
  if (h.degree() <= 0) return r;
  UPoly sq = squarefree_part(h);
  if (sq.degree() != 1) throw UnsupportedConfiguration("curve meets a center at a non-rational parameter");
  r.push_back(chart_point_at(a, linear_root(sq), c));
  return r;
}

inline bool element_contains(const OrbitElement& curve, const OrbitElement& pt) {
  if (curve.chart != pt.chart) return false;
  auto on = [](const std::vector<Poly>& v, const std::vector<Poly>& q) {
    std::vector<Poly> minors;
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        minors.push_back(v[i].scaled(q[j].constant_term()) - v[j].scaled(q[i].constant_term()));
    return minors;
  };
  std::vector<Poly> conds = on(curve.tuple(), pt.tuple());
  if (is_line_divisor(curve.chart)) {
    auto more = on({curve.n[0], curve.n[1]}, {pt.n[0], pt.n[1]});
    conds.insert(conds.end(), more.begin(), more.end());
  }
  bool all_zero = true;
  for (auto& c : conds) all_zero &= c.is_zero();
  if (all_zero) return true;
  UPoly g = gcd_of(conds);
  if (g.degree() > 0) return true;
  // t = infinity
  std::vector<Poly> v = curve.tuple();
  if (is_line_divisor(curve.chart)) {
    v.push_back(curve.n[0]);
    v.push_back(curve.n[1]);
  }
  int d = param_degree(v);
  for (auto& c : conds)
    if (!as_upoly(c)[d].is_zero()) return false;
  return true;
}

}  // namespace detail

// Number of points in which two one-parameter orbit elements meet inside Y.
inline int curve_intersections(const OrbitElement& A, const OrbitElement& B, const Atlas& atlas = Atlas::Y()) {
  if (A.chart != Chart::P3 && B.chart == Chart::P3) return curve_intersections(B, A, atlas);
  std::vector<Poly> a = A.tuple();
  if (A.chart == Chart::P3 && B.chart == Chart::P3) {
    detail::ParamSet ps = detail::incidence(a, B.tuple());
    int count = ps.count();
    // points on a blown-up center are separated unless the lifted directions agree
    std::vector<Chart> centers;
    for (int j : atlas.points) centers.push_back(point_chart(j));
    for (int j : atlas.lines) centers.push_back(line_chart(j));
    for (Chart c : centers) {
      UPoly h = detail::gcd_of(detail::center_conditions(a, c), ps.finite);
      if (h.degree() <= 0) continue;
      auto ha = detail::divisor_hits(a, c);
      auto hb = detail::divisor_hits(B.tuple(), c);
      for (auto& q : ha) {
        bool same = false;
        for (auto& r : hb) same |= q == r;
        if (!same) --count;
      }
    }
    return count;
  }
  if (A.chart == Chart::P3) {
    int count = 0;
    for (auto& q : detail::divisor_hits(a, B.chart))
      if (detail::element_contains(B, q)) ++count;
    return count;
  }
  if (A.chart != B.chart) return 0;
  if (is_point_divisor(A.chart)) return detail::incidence(a, B.tuple()).count();
  throw UnsupportedConfiguration("intersection of two curves in the same line divisor");
}

// f_Y^j Σγ for j = 1..N along the rotor of a (7.1) map
inline std::vector<OrbitElement> rotor_orbit(const MapParameters& p, int n_max = 64) {
  const auto &a = p.alpha, &b = p.beta;
  CycNum w = a[2];
  bool shape = b == Vec4{CycNum(0), CycNum(1), CycNum(0), CycNum(0)} && a[1].is_zero() && a[3].is_one();
  if (!shape || !(w * w + w + CycNum(1)).is_zero())
    throw std::invalid_argument("rotor_orbit expects beta = (0,1,0,0), alpha = (a,0,w,1) with w a primitive cube root");
  CycNum av = a[0];
  if (av.is_zero()) throw std::invalid_argument("genericity: a = 0");
  if (av.is_one()) throw std::invalid_argument("genericity: a = 1");
  if (av == w || av == w * w) throw std::invalid_argument("genericity: a is a cube root of unity");
  OrbitSignature s = gamma_orbit_signature(p, n_max);
  std::vector<OrbitElement> r;
  for (auto& e : s.trace) r.push_back(e.element);
  return r;
}

}  // namespace lfm

namespace lfm {

struct NoncriticalCertificate {
  std::string lemma;
  bool inverse = false;  // orbit taken under f^{-1}
  std::string space;     // "X", "Z" or "P3"
  OrbitElement start;
  std::vector<OrbitElement> orbit;  // f^1 V, f^2 V, ...
  int preperiod = -1, period = -1;  // orbit[preperiod] == orbit[preperiod + period]
  std::vector<OrbitElement> invariant_cycle;  // curves carrying the orbit when it never repeats
  bool certified = false;
  std::string note;
};

namespace detail {

// hyperplane {v.x = 0} parameterized by the two free coordinates
inline OrbitElement hyperplane_element(const Vec4& v) {
  int k = 3;
  while (v[k].is_zero()) --k;
  std::array<Poly, 4> x;
  Poly free[3] = {pc(CycNum(1)), param_t(), param_s()};
  int q = 0;
  Poly rest(kParamVars);
  for (int i = 0; i < 4; ++i) {
    if (i == k) continue;
    x[i] = free[q++].scaled(v[k]);
    rest += x[i].scaled(v[i]);
  }
  x[k] = -rest;
  return p3_element(x, 2);
}

// one-parameter coordinates of an element; line-divisor points use the products base_i * normal_k
inline std::vector<Poly> curve_coords(const OrbitElement& e) {
  std::vector<Poly> sub{param_t(), param_t().scaled(CycNum(2)) + pc(CycNum(3))};
  std::vector<Poly> r;
  auto tu = e.tuple();
  if (is_line_divisor(e.chart)) {
    for (auto& b : tu)
      for (auto& n : e.n) r.push_back((b * n).substitute(sub));
  } else {
    for (auto& b : tu) r.push_back(b.substitute(sub));
  }
  return r;
}

inline bool same_locus(const OrbitElement& a, const OrbitElement& b, std::mt19937_64& rng) {
  if (a.chart != b.chart) return false;
  int da = dimension(a, rng), db = dimension(b, rng);
  if (da != db) return false;
  if (da == 0) return a == b;
  if (da > 1) throw UnsupportedConfiguration("surface comparison in a certificate orbit");
  auto ca = curve_coords(a), cb = curve_coords(b);
  for (auto& F : vanishing_forms(cb, std::max(1, param_degree(cb))))
    if (!F.substitute(ca).is_zero()) return false;
  return true;
}

inline bool lies_on(const OrbitElement& pt, const OrbitElement& curve) {
  if (pt.chart != curve.chart) return false;
  auto cc = curve_coords(curve), cp = curve_coords(pt);
  std::vector<CycNum> v;
  for (auto& x : cp) v.push_back(x.constant_term());
  for (auto& F : vanishing_forms(cc, std::max(1, param_degree(cc))))
    if (!F.eval(v).is_zero()) return false;
  return true;
}

}  // namespace detail

// Replays the orbit of the exceptional hypersurface named by the non-critical
// lemma and reports where it becomes (pre)periodic without meeting I(f).
inline NoncriticalCertificate noncritical_certificate(const MapParameters& params, int n_max = 24) {
  ParamClass pcl = classify_parameters(params);
  if (pcl.critical) throw std::invalid_argument("parameters are critical");
  const MapParameters& p = pcl.normalized;
  NoncriticalCertificate c;
  c.lemma = pcl.lemma;
  Atlas atlas{};
  Vec4 x0{CycNum(1), CycNum(0), CycNum(0), CycNum(0)};
  if (c.lemma == "3.3(i)" || c.lemma == "3.3(ii)" || c.lemma == "3.3(iii)") {
    c.space = "X";
    atlas = Atlas::X();
    c.start = detail::hyperplane_element(p.beta);
  } else if (c.lemma == "3.3(iv)") {
    c.space = "X";
    atlas = Atlas::X();
    c.inverse = true;
    c.start = detail::hyperplane_element(x0);
  } else if (c.lemma == "3.4") {
    c.space = "P3";
    c.inverse = true;
    c.start = detail::hyperplane_element(x0);
  } else if (c.lemma == "3.5(i)" || c.lemma == "3.5(ii)") {
    c.space = "Z";
    atlas = Atlas::Z();
    c.inverse = c.lemma == "3.5(ii)";
    c.start = line_divisor_element(2, {pc(CycNum(0)), param_t(), pc(CycNum(0)), pc(CycNum(1))},
                                   {pc(CycNum(1)), param_s()}, 2);
  } else {
    c.note = "map is essentially linear; no exceptional orbit to replay";
    return c;
  }
  BirationalMap f = c.inverse ? build_family_inverse(p) : build_family_map(p);
  std::mt19937_64 rng(11);
  OrbitElement e = c.start;
  try {
    for (int n = 1; n <= n_max; ++n) {
      e = apply_fY(f, e, atlas, 500 + n);
      if (n == 1 && dimension(e, rng) == 2) {
        c.note = "start hypersurface is not exceptional";
        return c;
      }
      for (size_t k = 0; k < c.orbit.size(); ++k)
        if (detail::same_locus(c.orbit[k], e, rng)) {
          c.orbit.push_back(e);
          c.preperiod = int(k);
          c.period = n - 1 - int(k);
          c.certified = true;
          return c;
        }
      c.orbit.push_back(e);
    }
    if (c.lemma == "3.3(iii)") {
      // Σ02 and the S03 fiber over e2 are exchanged; the orbit stays on them
      OrbitElement L = p3_element({pc(CycNum(0)), param_t(), pc(CycNum(0)), pc(CycNum(1))}, 1);
      OrbitElement K = line_divisor_element(3, {pc(CycNum(0)), pc(CycNum(0)), pc(CycNum(1)), pc(CycNum(0))},
                                            {pc(CycNum(1)), param_t()}, 1);
      c.invariant_cycle = {L, K};
      bool ok = detail::same_locus(apply_fY(f, L, atlas, 91), K, rng) &&
                detail::same_locus(apply_fY(f, K, atlas, 92), L, rng);
      for (size_t k = 1; k < c.orbit.size() && ok; ++k)
        ok = detail::lies_on(c.orbit[k], L) || detail::lies_on(c.orbit[k], K);
      c.certified = ok;
      if (ok) {
        c.note = "orbit confined to the 2-cycle of curves Σ02 <-> S03 fiber over e2";
        return c;
      }
    }
    c.note = "orbit did not repeat within " + std::to_string(n_max) + " steps";
  } catch (const DirectionDependent& ex) {
    c.note = std::string("orbit meets the indeterminacy locus: ") + ex.what();
  } catch (const UnsupportedConfiguration& ex) {
    c.note = std::string("unsupported chart configuration: ") + ex.what();
  }
  return c;
}

}  // namespace lfm
