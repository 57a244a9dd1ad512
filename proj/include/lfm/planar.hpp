#pragma once

#include "birmap.hpp"
#include "mgcd.hpp"
#include "picard.hpp"

#include <random>

namespace lfm {

using Vec3 = std::array<CycNum, 3>;

// Return map f^8 on the rotor plane Σ3 = {x3 = 0}, reduced, in coordinates x0, x1, x2.
inline BirationalMap restrict_to_plane(const MapParameters& p, int iterate = 8, int plane = 3) {
  BirationalMap f = build_family_map(p), F = f;
  for (int i = 1; i < iterate; ++i) F = compose_reduce(F, f);
  if (!F.comps[plane].specialize(plane, CycNum(0)).is_zero())
    throw std::invalid_argument("restrict_to_plane: plane is not invariant under this iterate");
  std::vector<int> keep;
  for (int i = 0; i < 4; ++i) keep.push_back(i == plane ? -1 : i - (i > plane));
  std::vector<Poly> r;
  for (int i = 0; i < 4; ++i)
    if (i != plane) r.push_back(F.comps[i].specialize(plane, CycNum(0)).remap(3, keep));
  BirationalMap g;
  g.comps = gcd_reduce(std::move(r)).comps;
  return g;
}

// The cubic rotor map g on Σ3 for alpha = (a, 0, w, 1), beta = (0, 1, 0, 0), with common factors removed.
inline BirationalMap rotor_plane_map(const CycNum& a) {
  CycNum w = CycNum::zeta(3), w2 = w * w;
  Poly x0 = Poly::var(3, 0), x1 = Poly::var(3, 1), x2 = Poly::var(3, 2);
  Poly g0 = x0 * (x0.scaled(a) + x2.scaled(w)) * (x0.scaled(a) + x1.scaled(a) + x2.scaled(w));
  Poly g1 = x1 * (x1 * x2 + (x0 * x0).scaled(a * w) + (x0 * x1).scaled(a * w) + (x0 * x2).scaled(a * w) +
                  (x0 * x2).scaled(w2) + (x2 * x2).scaled(w2));
  Poly g2 = x2.scaled(w) * (x0.scaled(a) + x2.scaled(w)) * (x1 + x0.scaled(a * w) + x2.scaled(w2));
  BirationalMap g;
  g.comps = gcd_reduce({g0, g1, g2}).comps;
  return g;
}

// The four exceptional curves of the rotor map.
inline std::vector<Poly> rotor_exceptional_curves(const CycNum& a) {
  CycNum w = CycNum::zeta(3), w2 = w * w;
  Poly x0 = Poly::var(3, 0), x1 = Poly::var(3, 1), x2 = Poly::var(3, 2);
  return {x0.scaled(a) + x2.scaled(w), x0.scaled(a) + x1.scaled(a) + x2.scaled(w),
          x0.scaled(a * w) + x1 + x2.scaled(w2),
          (x0 * x0).scaled(a * w) + (x0 * x1).scaled(a * w) + (x0 * x2).scaled(a * w) + (x0 * x2).scaled(w2) +
              x1 * x2 + (x2 * x2).scaled(w2)};
}

inline Vec3 normalize3(Vec3 v) {
  for (auto& c : v)
    if (!c.is_zero()) {
      CycNum s = c.inv();
      for (auto& x : v) x = x * s;
      return v;
    }
  throw std::invalid_argument("normalize3: zero vector");
}

// Slope in K ∪ {∞}.
struct Slope {
  bool inf = false;
  CycNum v;
  friend bool operator==(const Slope& a, const Slope& b) { return a.inf == b.inf && (a.inf || a.v == b.v); }
};

// A point of a blown-up plane: a point of P^2 followed by slopes on successive exceptional curves.
// Coordinates at a center p: k = first nonzero index of p (p_k = 1), x and y along the two other
// axes in increasing order. A slope m is lim y/x; the next level uses (x, y/x - m), or (y, x/y) for m = ∞.
struct PlanePoint {
  Vec3 p;
  std::vector<Slope> slopes;
  int level() const { return int(slopes.size()); }
  PlanePoint parent() const {
    PlanePoint q = *this;
    q.slopes.pop_back();
    return q;
  }
  friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.p == b.p && a.slopes == b.slopes; }
};

inline PlanePoint plane_point(const Vec3& p, std::vector<Slope> s = {}) { return {normalize3(p), std::move(s)}; }

inline std::string to_string(const PlanePoint& q) {
  std::ostringstream os;
  os << "[" << q.p[0] << " : " << q.p[1] << " : " << q.p[2] << "]";
  for (auto& s : q.slopes) {
    os << " / ";
    if (s.inf) os << "inf";
    else os << s.v;
  }
  return os.str();
}

struct PlaneLedger {
  std::vector<PlanePoint> points;  // parents precede children
  std::vector<Poly> curves;        // exceptional curve candidates of g in P^2
  std::vector<std::string> labels;

  int index_of(const PlanePoint& q) const {
    for (size_t i = 0; i < points.size(); ++i)
      if (points[i] == q) return int(i);
    return -1;
  }
  bool contains(const PlanePoint& q) const { return index_of(q) >= 0; }
  std::vector<int> children(int i) const {
    std::vector<int> r;
    for (size_t k = 0; k < points.size(); ++k)
      if (points[k].level() == points[i].level() + 1 && points[k].parent() == points[i]) r.push_back(int(k));
    return r;
  }
  void validate() const {
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i].level() > 0 && index_of(points[i].parent()) < 0)
        throw std::invalid_argument("ledger point " + std::to_string(i) + " lies over a point that is not blown up");
      if (index_of(points[i]) != int(i)) throw std::invalid_argument("duplicate ledger point");
    }
  }
};

struct PlaneUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::array<int, 3> chart_axes(const Vec3& p) {
  int k = 0;
  while (p[k].is_zero()) ++k;
  std::array<int, 3> r{k, 0, 0};
  int t = 1;
  for (int i = 0; i < 3; ++i)
    if (i != k) r[t++] = i;
  return r;
}

// Parametrization of a neighbourhood of q by its deepest chart (b, s), with q at the origin.
inline std::vector<Poly> chart_map(const PlanePoint& q) {
  Poly b = Poly::var(2, 0), s = Poly::var(2, 1);
  for (int k = q.level() - 1; k >= 0; --k) {
    const Slope& m = q.slopes[k];
    if (m.inf) {
      Poly nb = b * s;
      s = b;
      b = nb;
    } else {
      s = b * (s + Poly(2, m.v));
    }
  }
  auto ax = chart_axes(q.p);
  std::vector<Poly> x(3);
  x[ax[0]] = Poly(2, CycNum(1));
  x[ax[1]] = Poly(2, q.p[ax[1]]) + b;
  x[ax[2]] = Poly(2, q.p[ax[2]]) + s;
  return x;
}

// n / d with d a unit at the origin
struct LocalFrac {
  Poly n, d;
};

}  // namespace detail

struct PlaneImage {
  bool indeterminate = false;
  PlanePoint point;
};

// Image of a plane point under g lifted to the blowup described by L, computed exactly in local charts.
inline PlaneImage plane_image(const BirationalMap& g, const PlanePoint& q, const PlaneLedger& L) {
  PlaneImage out;
  auto X = detail::chart_map(q);
  std::vector<Poly> G;
  for (auto& c : g.comps) G.push_back(c.substitute(X));
  Poly h = gcd(G);
  bool any = false;
  for (auto& c : G) {
    c = detail::exact_div(c, h);
    any |= !c.constant_term().is_zero();
  }
  if (!any) {
    out.indeterminate = true;
    return out;
  }
  out.point = plane_point({G[0].constant_term(), G[1].constant_term(), G[2].constant_term()});
  if (!L.contains(out.point)) return out;
  const Vec3& c = out.point.p;
  auto ax = detail::chart_axes(c);
  detail::LocalFrac x{G[ax[1]] - G[ax[0]].scaled(c[ax[1]]), G[ax[0]]};
  detail::LocalFrac y{G[ax[2]] - G[ax[0]].scaled(c[ax[2]]), G[ax[0]]};
  while (L.contains(out.point)) {
    Poly A = x.n * y.d, B = y.n * x.d;
    if (A.is_zero() && B.is_zero()) throw PlaneUnsupported("a neighbourhood maps into a single point");
    Poly hh = gcd(A, B);
    Poly u = detail::exact_div(A, hh), v = detail::exact_div(B, hh);
    CycNum cu = u.constant_term(), cv = v.constant_term();
    if (cu.is_zero() && cv.is_zero()) {
      out.indeterminate = true;
      return out;
    }
    Slope m;
    if (!cu.is_zero()) {
      m.v = cv / cu;
      y = {v - u.scaled(m.v), u};
    } else {
      m.inf = true;
      x = y;
      y = {u, v};
    }
    out.point.slopes.push_back(m);
  }
  return out;
}

enum class OrbitEnd { Periodic, HitsIndeterminacy, Open };

inline const char* orbit_end_name(OrbitEnd e) {
  static const char* n[] = {"periodic", "hits-indeterminacy", "open"};
  return n[int(e)];
}

struct PlaneOrbit {
  std::vector<PlanePoint> points;  // points[0] is the start
  OrbitEnd end = OrbitEnd::Open;
  int step = 0;       // HitsIndeterminacy: index of the indeterminate point; Periodic: first repeat
  int preperiod = 0;  // Periodic
  int period = 0;
};

inline PlaneOrbit plane_point_orbit(const BirationalMap& g, const PlanePoint& start, int n_max,
                                    const PlaneLedger& L = {}) {
  PlaneOrbit o;
  o.points.push_back(start);
  for (int n = 0; n < n_max; ++n) {
    PlaneImage im = plane_image(g, o.points.back(), L);
    if (im.indeterminate) {
      o.end = OrbitEnd::HitsIndeterminacy;
      o.step = n;
      return o;
    }
    for (size_t i = 0; i < o.points.size(); ++i)
      if (o.points[i] == im.point) {
        o.points.push_back(im.point);
        o.end = OrbitEnd::Periodic;
        o.preperiod = int(i);
        o.period = int(o.points.size()) - 1 - int(i);
        o.step = int(o.points.size()) - 1;
        return o;
      }
    o.points.push_back(im.point);
  }
  return o;
}

namespace detail {

// random point of {C = 0}, solving for a variable in which C is linear
inline Vec3 point_on_curve(const Poly& C, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-40, 40);
  for (int v = 0; v < 3; ++v) {
    if (C.degree_in(v) != 1) continue;
    for (int tries = 0; tries < 50; ++tries) {
      std::vector<CycNum> x(3);
      for (int i = 0; i < 3; ++i) x[i] = CycNum(d(rng));
      Poly c1 = C.coeff_in(v, 1), c0 = C.coeff_in(v, 0);
      x[v] = CycNum(0);
      CycNum a = c1.eval(x), b = c0.eval(x);
      if (a.is_zero()) continue;
      x[v] = -b / a;
      return {x[0], x[1], x[2]};
    }
  }
  throw PlaneUnsupported("curve is not linear in any variable");
}

}  // namespace detail

struct ExceptionalCurve {
  Poly curve;
  bool divides_jacobian = false;
  bool contracted = false;  // strict transform maps to a point of P^2
  std::optional<Vec3> image;
  std::string residue;  // why a candidate was rejected
};

// Checks that each candidate divides the Jacobian of g and is contracted to a point.
inline std::vector<ExceptionalCurve> plane_exceptional_verify(const BirationalMap& g, const std::vector<Poly>& candidates,
                                                             uint64_t seed = 11) {
  Poly J = jacobian(g);
  std::mt19937_64 rng(seed);
  std::vector<ExceptionalCurve> out;
  for (auto& C : candidates) {
    ExceptionalCurve e;
    e.curve = C;
    e.divides_jacobian = J.divide(C).has_value();
    if (!e.divides_jacobian) e.residue = "does not divide the Jacobian";
    std::optional<Vec3> img;
    bool point = true;
    for (int k = 0; k < 4 && point; ++k) {
      Vec3 x = detail::point_on_curve(C, rng);
      auto v = g.eval({x[0], x[1], x[2]});
      if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) continue;
      Vec3 n = normalize3({v[0], v[1], v[2]});
      if (!img) img = n;
      else if (!(*img == n)) point = false;
    }
    if (point && img) {
      // exact: g_a q_b - g_b q_a vanishes on C
      const Vec3& q = *img;
      for (int a = 0; a < 3 && point; ++a)
        for (int b = a + 1; b < 3 && point; ++b) {
          Poly m = g.comps[a].scaled(q[b]) - g.comps[b].scaled(q[a]);
          if (!m.is_zero() && !m.divide(C)) point = false;
        }
    }
    e.contracted = point && img.has_value();
    if (e.contracted) e.image = img;
    else if (e.residue.empty()) e.residue = "image is a curve";
    out.push_back(e);
  }
  return out;
}

// Integer class over {H, E_0, E_1, ...}; E_i are total transforms, H^2 = 1, E_i^2 = -1.
using ClassVector2D = std::vector<mpz_class>;

inline mpz_class intersect(const ClassVector2D& a, const ClassVector2D& b) {
  mpz_class r = a[0] * b[0];
  for (size_t i = 1; i < a.size(); ++i) r -= a[i] * b[i];
  return r;
}

namespace detail {

// multiplicities of the successive strict transforms of {F = 0} along the chain of q
inline int multiplicity_at(const Poly& F, const PlanePoint& q) {
  auto ax = chart_axes(q.p);
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  std::vector<Poly> sub(3);
  sub[ax[0]] = Poly(2, CycNum(1));
  sub[ax[1]] = Poly(2, q.p[ax[1]]) + x;
  sub[ax[2]] = Poly(2, q.p[ax[2]]) + y;
  Poly f = F.substitute(sub);
  int mult = f.min_degree();
  for (auto& m : q.slopes) {
    if (mult <= 0) return 0;
    Poly g = m.inf ? f.substitute({x * y, x}) : f.substitute({x, x * (y + Poly(2, m.v))});
    g = *g.divide(Poly::monomial(2, Mono::var(0, mult), CycNum(1)));
    f = g;
    mult = f.min_degree();
  }
  return std::max(mult, 0);
}

// the plane curve of least degree through the given points
inline Poly implicitize(const std::vector<Vec3>& pts, int max_degree = 8) {
  for (int e = 1; e <= max_degree; ++e) {
    auto mons = monomials_of_degree(3, e);
    if (pts.size() < mons.size() + 3) throw PlaneUnsupported("too few samples to implicitize");
    CycMatrix A;
    for (auto& p : pts) {
      std::vector<CycNum> row;
      for (auto m : mons) {
        CycNum v(1);
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < Mono::get(m, i); ++k) v = v * p[i];
        row.push_back(v);
      }
      A.push_back(row);
    }
    auto ker = kernel(A, int(mons.size()));
    if (ker.empty()) continue;
    if (ker.size() > 1) throw PlaneUnsupported("image curve not determined by samples");
    Poly F(3);
    for (size_t i = 0; i < mons.size(); ++i) F.add_term(mons[i], ker[0][i]);
    return F;
  }
  throw PlaneUnsupported("image curve degree exceeds bound");
}

}  // namespace detail

inline ClassVector2D curve_class(const Poly& F, const PlaneLedger& L) {
  ClassVector2D v(L.points.size() + 1, 0);
  v[0] = F.degree();
  for (size_t i = 0; i < L.points.size(); ++i) v[i + 1] = -detail::multiplicity_at(F, L.points[i]);
  return v;
}

struct PlanePic {
  PicAction action;  // pullback g^*, columns are images of basis classes
  // for each exceptional class: the curves in its pullback with multiplicities
  std::vector<std::vector<std::pair<std::string, int>>> preimages;
};

namespace detail {

// generic points of the strict transform of E_i
inline std::vector<PlanePoint> divisor_samples(const PlanePoint& q, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-60, 60);
  std::vector<PlanePoint> r;
  while (int(r.size()) < n) {
    PlanePoint s = q;
    s.slopes.push_back(Slope{false, CycNum::rational(d(rng), 1 + rng() % 7)});
    bool dup = false;
    for (auto& x : r) dup |= x == s;
    if (!dup) r.push_back(s);
  }
  return r;
}

struct RatFn {
  Poly n, d;
};

// the deepest chart coordinates (b, s) at q as rational functions of target coordinates Y
inline std::array<RatFn, 2> chart_coords(const PlanePoint& q, const std::vector<Poly>& Y) {
  auto ax = chart_axes(q.p);
  const Vec3& c = q.p;
  RatFn x{Y[ax[1]] - Y[ax[0]].scaled(c[ax[1]]), Y[ax[0]]};
  RatFn y{Y[ax[2]] - Y[ax[0]].scaled(c[ax[2]]), Y[ax[0]]};
  for (auto& m : q.slopes) {
    if (m.inf) {
      RatFn s{x.n * y.d, x.d * y.n};
      x = y;
      y = s;
    } else {
      RatFn s{y.n * x.d - (x.n * y.d).scaled(m.v), y.d * x.n};
      y = s;
    }
  }
  return {x, y};
}

constexpr int kInfiniteOrder = 1 << 20;

// order of vanishing of a form along the irreducible curve {C = 0}
inline int order_along(Poly f, const Poly& C) {
  if (f.is_zero()) return kInfiniteOrder;
  int k = 0;
  while (auto q = f.divide(C)) {
    f = std::move(*q);
    ++k;
  }
  return k;
}

inline int order_in_b(const Poly& f) { return f.is_zero() ? kInfiniteOrder : f.min_degree_in(0); }

}  // namespace detail

// Pullback of the total transform E_q along a source curve; the source is given by a substitution S
// into the homogeneous coordinates and a valuation on the resulting ring.
inline int pullback_multiplicity(const BirationalMap& g, const PlanePoint& q, const std::vector<Poly>& S,
                                 const std::function<int(const Poly&)>& val) {
  std::vector<Poly> Y;
  for (auto& c : g.comps) Y.push_back(c.substitute(S));
  auto bs = detail::chart_coords(q, Y);
  int o = detail::kInfiniteOrder;
  for (auto& f : bs) o = std::min(o, val(f.n) - val(f.d));
  return std::max(o, 0);
}

inline PlanePic plane_pic_matrix(const BirationalMap& g, const PlaneLedger& L, uint64_t seed = 5) {
  L.validate();
  std::mt19937_64 rng(seed);
  int n = int(L.points.size()) + 1;
  PlanePic out;
  out.action.labels.push_back("H");
  for (int i = 0; i < n - 1; ++i)
    out.action.labels.push_back(L.labels.size() > size_t(i) ? L.labels[i] : "E" + std::to_string(i + 1));
  out.action.M = IntMatrix(n, std::vector<mpz_class>(n, 0));
  // g^*H: a generic member of the linear system. A special member only gains multiplicity, so keep the
  // smallest over a few draws.
  constexpr int kDraws = 3;
  std::uniform_int_distribution<int> d(-30, 30);
  ClassVector2D h;
  for (int t = 0; t < kDraws; ++t) {
    Poly gen(3);
    for (auto& c : g.comps) gen += c.scaled(CycNum(d(rng)));
    auto ht = curve_class(gen, L);
    if (t == 0) h = ht;
    for (int i = 1; i < n; ++i) h[i] = std::max(h[i], ht[i]);
  }
  for (int i = 0; i < n; ++i) out.action.M[i][0] = h[i];
  // source curves: exceptional curves of g, then the strict transforms of the E_p
  struct Source {
    std::string name;
    std::vector<std::vector<Poly>> S;  // charts on generic points of the source
    std::function<int(const Poly&)> val;
    ClassVector2D cls;
  };
  std::vector<Source> src;
  std::vector<Poly> id{Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2)};
  for (size_t k = 0; k < L.curves.size(); ++k) {
    Poly C = L.curves[k];
    src.push_back({"C" + std::to_string(k + 1), {id}, [C](const Poly& f) { return detail::order_along(f, C); },
                   curve_class(C, L)});
  }
  for (int i = 0; i < n - 1; ++i) {
    std::vector<std::vector<Poly>> charts;
    for (auto& r : detail::divisor_samples(L.points[i], kDraws, rng)) charts.push_back(detail::chart_map(r));
    ClassVector2D cls(n, 0);
    cls[i + 1] = 1;
    for (int c : L.children(i)) cls[c + 1] = -1;
    src.push_back({out.action.labels[i + 1], charts, detail::order_in_b, cls});
  }
  out.preimages.resize(n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (auto& s : src) {
      int m = detail::kInfiniteOrder;
      for (auto& S : s.S) m = std::min(m, pullback_multiplicity(g, L.points[i], S, s.val));
      if (!m) continue;
      out.preimages[i].push_back({s.name, m});
      for (int k = 0; k < n; ++k) out.action.M[k][i + 1] += m * s.cls[k];
    }
  return out;
}

struct StabilityWitness {
  struct Entry {
    std::string source;  // curve index or ledger label
    PlanePoint image;
    PlaneOrbit orbit;
  };
  std::vector<Entry> exceptional;
  bool stable = true;
};

namespace detail {

// common image of generic points, or nullopt when the images differ (the source is not contracted)
inline std::optional<PlanePoint> contracted_image(const BirationalMap& g, const std::vector<PlanePoint>& samples,
                                                  const PlaneLedger& L) {
  std::optional<PlanePoint> to;
  for (auto& s : samples) {
    auto im = plane_image(g, s, L);
    if (im.indeterminate) continue;
    if (!to) to = im.point;
    else if (!(*to == im.point)) return std::nullopt;
  }
  return to;
}

}  // namespace detail

// Exceptional curves of g on the blowup and their forward orbits.
inline StabilityWitness stability_witness(const BirationalMap& g, const PlaneLedger& L, int n_max = 30,
                                          uint64_t seed = 13) {
  std::mt19937_64 rng(seed);
  StabilityWitness w;
  auto follow = [&](std::string src, const PlanePoint& p) {
    StabilityWitness::Entry e{std::move(src), p, plane_point_orbit(g, p, n_max, L)};
    if (e.orbit.end == OrbitEnd::HitsIndeterminacy) w.stable = false;
    w.exceptional.push_back(std::move(e));
  };
  for (size_t k = 0; k < L.curves.size(); ++k) {
    std::vector<PlanePoint> s;
    for (int i = 0; i < 3; ++i) s.push_back(plane_point(detail::point_on_curve(L.curves[k], rng)));
    if (auto to = detail::contracted_image(g, s, L)) follow("C" + std::to_string(k + 1), *to);
  }
  for (size_t i = 0; i < L.points.size(); ++i) {
    if (auto to = detail::contracted_image(g, detail::divisor_samples(L.points[i], 3, rng), L))
      follow(L.labels.size() > i ? L.labels[i] : "E" + std::to_string(i + 1), *to);
  }
  return w;
}

// Adds the orbit points of exceptional curves that reach indeterminacy until the witness is clean.
// Only orbits of the listed curves and divisors are followed; this is not a general stabilization.
inline PlaneLedger complete_ledger(const BirationalMap& g, PlaneLedger L, int rounds = 8, int n_max = 12,
                                   uint64_t seed = 13) {
  for (int r = 0; r < rounds; ++r) {
    auto w = stability_witness(g, L, n_max, seed);
    if (w.stable) return L;
    bool added = false;
    for (auto& e : w.exceptional) {
      if (e.orbit.end != OrbitEnd::HitsIndeterminacy) continue;
      for (auto& q : e.orbit.points) {
        if (L.contains(q)) continue;
        if (q.level() > 0 && !L.contains(q.parent())) continue;
        L.points.push_back(q);
        L.labels.push_back("F" + std::to_string(L.points.size()));
        added = true;
      }
      break;
    }
    if (!added) throw PlaneUnsupported("indeterminate orbit point is already blown up");
  }
  if (!stability_witness(g, L, n_max, seed).stable) throw PlaneUnsupported("ledger did not stabilize");
  return L;
}

// Perron eigenvector θ of g^* with H-coefficient λ, and θ·θ.
struct InvariantClass {
  double lambda = 1;
  std::vector<double> theta;
  double self_intersection = 0;
};

inline InvariantClass invariant_class(const PicAction& p) {
  InvariantClass r;
  r.lambda = dynamical_degree(char_poly_det(p)).value;
  int n = p.size();
  // solve (M - λ) v = 0 with v_H = λ
  std::vector<std::vector<long double>> A(n, std::vector<long double>(n + 1, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = p.M[i][j].get_d() - (i == j ? r.lambda : 0);
  // replace the last equation with the normalization
  A[n - 1].assign(n + 1, 0);
  A[n - 1][0] = 1;
  A[n - 1][n] = r.lambda;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int i = c; i < n; ++i)
      if (std::fabs(double(A[i][c])) > std::fabs(double(A[piv][c]))) piv = i;
    std::swap(A[piv], A[c]);
    if (std::fabs(double(A[c][c])) < 1e-300) continue;
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      long double f = A[i][c] / A[c][c];
      for (int k = c; k <= n; ++k) A[i][k] -= f * A[c][k];
    }
  }
  r.theta.resize(n);
  for (int i = 0; i < n; ++i) r.theta[i] = double(A[i][n] / A[i][i]);
  r.self_intersection = r.theta[0] * r.theta[0];
  for (int i = 1; i < n; ++i) r.self_intersection -= r.theta[i] * r.theta[i];
  return r;
}

struct AutomorphismVerdict {
  bool possible = true;
  std::vector<std::string> reasons;  // grounds for NotConjugate
  std::string note;
};

inline AutomorphismVerdict automorphism_verdict(const GrowthClass& g, const SalemVerdict& s,
                                                std::optional<double> theta_squared, double tol = 1e-9) {
  AutomorphismVerdict v;
  switch (g.tag) {
    case GrowthTag::Exponential:
      if (theta_squared && std::fabs(*theta_squared) > tol)
        v.reasons.push_back("invariant class has nonzero self-intersection");
      if (!s.salem) v.reasons.push_back("dynamical degree is not a Salem number (" + s.reason + ")");
      break;
    case GrowthTag::Linear:
      v.reasons.push_back("linear degree growth");
      break;
    case GrowthTag::Quadratic:
      v.note = "quadratic growth: an automorphism preserving an elliptic fibration is not excluded";
      return v;
    default:
      return v;
  }
  v.possible = v.reasons.empty();
  return v;
}

}  // namespace lfm
