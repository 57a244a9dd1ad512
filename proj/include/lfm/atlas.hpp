#pragma once

#include "birmap.hpp"
#include "linalg.hpp"

#include <random>

namespace lfm {

struct DirectionDependent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HitForbidden : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Chart { P3, E1, E2, E3, S01, S02, S03 };

inline const char* chart_name(Chart c) {
  static const char* n[] = {"P3", "E1", "E2", "E3", "S01", "S02", "S03"};
  return n[int(c)];
}
inline bool is_point_divisor(Chart c) { return c == Chart::E1 || c == Chart::E2 || c == Chart::E3; }
inline bool is_line_divisor(Chart c) { return c == Chart::S01 || c == Chart::S02 || c == Chart::S03; }
// j for E_j and S0j
inline int chart_index(Chart c) {
  switch (c) {
    case Chart::E1: case Chart::S01: return 1;
    case Chart::E2: case Chart::S02: return 2;
    case Chart::E3: case Chart::S03: return 3;
    default: return 0;
  }
}
inline Chart point_chart(int j) { return Chart(int(Chart::E1) + j - 1); }
inline Chart line_chart(int j) { return Chart(int(Chart::S01) + j - 1); }

// Blowup centers: coordinate points e_j first, then coordinate lines Σ0j.
struct Atlas {
  std::vector<int> points, lines;
  std::vector<int> forbidden_points, forbidden_lines;

  bool has_point(int j) const { return std::find(points.begin(), points.end(), j) != points.end(); }
  bool has_line(int j) const { return std::find(lines.begin(), lines.end(), j) != lines.end(); }

  // e1, e3, then Σ01, Σ03; the fiber over e2 and Σ02 are off limits for the Σγ orbit
  static Atlas Y() { return {{1, 3}, {1, 3}, {2}, {2}}; }
  static Atlas X() { return {{1}, {3}, {}, {}}; }
  static Atlas Z() { return {{2}, {2}, {}, {}}; }
};

// Parameters t = var 0, s = var 1; the transverse symbol ε is var 2 after lifting.
constexpr int kParamVars = 2;
constexpr int kEps = 2;

// A point, curve or surface in one chart. P3: homogeneous coordinates.
// E_j: tangent direction at e_j (coordinate j is zero). S0j: base point on
// Σ0j in `a` and normal direction (n0 : nj) in `n`.
struct OrbitElement {
  Chart chart = Chart::P3;
  std::array<Poly, 4> a;
  std::array<Poly, 2> n;
  int params = 0;

  std::vector<Poly> tuple() const { return {a.begin(), a.end()}; }
};

namespace detail {

inline Poly pconst(const CycNum& c) { return Poly(kParamVars, c); }

// divide a tuple by the gcd of its entries and fix the leading scalar
template <class It>
void content_reduce(It begin, It end) {
  std::vector<Poly> v(begin, end);
  Poly g = gcd(v);
  if (g.is_zero()) throw std::invalid_argument("zero tuple");
  CycNum lead;
  for (It it = begin; it != end; ++it) {
    if (!g.is_constant()) *it = exact_div(*it, g);
    if (lead.is_zero() && !it->is_zero()) lead = it->lead().second;
  }
  for (It it = begin; it != end; ++it) *it = it->scaled(lead.inv());
}

inline bool proj_equal(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].is_zero() != b[i].is_zero()) return false;
  return true;
}

inline bool is_coord_point(const std::array<Poly, 4>& v, int j) {
  for (int i = 0; i < 4; ++i)
    if ((i == j) == v[i].is_zero()) return false;
  return true;
}

// wedge of two vectors (all 2x2 minors), evaluated
inline std::vector<CycNum> wedge(const std::vector<CycNum>& u, const std::vector<CycNum>& v) {
  std::vector<CycNum> r;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j) r.push_back(u[i] * v[j] - u[j] * v[i]);
  return r;
}

}  // namespace detail

inline OrbitElement p3_element(std::array<Poly, 4> x, int params) {
  OrbitElement e;
  e.a = std::move(x);
  e.params = params;
  detail::content_reduce(e.a.begin(), e.a.end());
  return e;
}
inline OrbitElement p3_point(const Vec4& x) {
  return p3_element({detail::pconst(x[0]), detail::pconst(x[1]), detail::pconst(x[2]), detail::pconst(x[3])}, 0);
}
inline OrbitElement point_divisor_element(int j, std::array<Poly, 4> d, int params) {
  OrbitElement e;
  e.chart = point_chart(j);
  e.a = std::move(d);
  if (!e.a[j].is_zero()) throw std::invalid_argument("direction must have zero j-th coordinate");
  e.params = params;
  detail::content_reduce(e.a.begin(), e.a.end());
  return e;
}
inline OrbitElement line_divisor_element(int j, std::array<Poly, 4> base, std::array<Poly, 2> normal, int params) {
  OrbitElement e;
  e.chart = line_chart(j);
  e.a = std::move(base);
  e.n = std::move(normal);
  if (!e.a[0].is_zero() || !e.a[j].is_zero()) throw std::invalid_argument("base must lie on the blown-up line");
  e.params = params;
  detail::content_reduce(e.a.begin(), e.a.end());
  detail::content_reduce(e.n.begin(), e.n.end());
  return e;
}

inline bool operator==(const OrbitElement& x, const OrbitElement& y) {
  if (x.chart != y.chart) return false;
  if (!detail::proj_equal(x.tuple(), y.tuple())) return false;
  if (is_line_divisor(x.chart)) return detail::proj_equal({x.n[0], x.n[1]}, {y.n[0], y.n[1]});
  return true;
}

// Dimension of the family: rank of the tangent map at a random parameter value.
inline int dimension(const OrbitElement& e, std::mt19937_64& rng) {
  if (e.params == 0) return 0;
  std::uniform_int_distribution<int> d(-50, 50);
  int best = 0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<CycNum> pt{CycNum(d(rng)), CycNum(d(rng))};
    auto ev = [&](const Poly& p) { return p.eval(pt); };
    std::vector<std::vector<CycNum>> tangents;
    for (int v = 0; v < e.params; ++v) {
      std::vector<CycNum> tv;
      std::vector<CycNum> x, dx;
      for (auto& p : e.a) {
        x.push_back(ev(p));
        dx.push_back(ev(p.derivative(v)));
      }
      for (auto& c : detail::wedge(x, dx)) tv.push_back(c);
      if (is_line_divisor(e.chart)) {
        std::vector<CycNum> m{ev(e.n[0]), ev(e.n[1])}, dm{ev(e.n[0].derivative(v)), ev(e.n[1].derivative(v))};
        for (auto& c : detail::wedge(m, dm)) tv.push_back(c);
      }
      tangents.push_back(tv);
    }
    best = std::max(best, rank(tangents));
  }
  return best;
}

// Lift to P3 with the transverse symbol ε; w and wn are generic perturbations
// (zero for the plain chart parameterization).
inline std::vector<Poly> lift_element(const OrbitElement& e, const Vec4& w, const Vec4& wn) {
  const int nv = kParamVars + 1;
  auto up = [&](const Poly& p) { return p.remap(nv, {0, 1}); };
  Poly eps = Poly::var(nv, kEps), eps2 = eps * eps;
  auto c = [&](const CycNum& x) { return Poly(nv, x); };
  std::vector<Poly> X(4, Poly(nv));
  if (e.chart == Chart::P3) {
    for (int i = 0; i < 4; ++i) X[i] = up(e.a[i]) + eps * c(w[i]);
  } else if (is_point_divisor(e.chart)) {
    int j = chart_index(e.chart);
    for (int i = 0; i < 4; ++i) X[i] = (i == j ? c(CycNum(1)) : eps * up(e.a[i])) + eps2 * c(w[i]);
  } else {
    int j = chart_index(e.chart);
    for (int i = 0; i < 4; ++i) {
      if (i == 0) X[i] = eps * up(e.n[0]);
      else if (i == j) X[i] = eps * up(e.n[1]);
      else X[i] = up(e.a[i]) + eps * c(wn[i]);
      X[i] += eps2 * c(w[i]);
    }
  }
  return X;
}

inline std::vector<Poly> chart_to_p3(const OrbitElement& e) {
  Vec4 z{CycNum(0), CycNum(0), CycNum(0), CycNum(0)};
  return lift_element(e, z, z);
}

namespace detail {

inline Poly eps_coeff(const Poly& p, int k) { return p.coeff_in(kEps, k).remap(kParamVars, {0, 1, 0}); }

inline bool on_line(const std::array<Poly, 4>& b, int j) { return b[0].is_zero() && b[j].is_zero(); }

// the other coordinate index l with Σ0k = span(e_j, e_l)
inline int other_index(int j, int k) {
  for (int l = 1; l < 4; ++l)
    if (l != j && l != k) return l;
  return -1;
}

inline OrbitElement apply_once(const BirationalMap& f, const OrbitElement& e, const Atlas& atlas, const Vec4& w,
                               const Vec4& wn) {
  std::vector<Poly> X = lift_element(e, w, wn);
  std::vector<Poly> Y;
  int k0 = 1 << 30;
  for (auto& c : f.comps) {
    Y.push_back(c.substitute(X));
    if (!Y.back().is_zero()) k0 = std::min(k0, Y.back().min_degree_in(kEps));
  }
  if (k0 == (1 << 30)) throw DirectionDependent("image vanishes identically");
  auto coef = [&](int i, int k) { return eps_coeff(Y[i], k0 + k); };
  std::array<Poly, 4> B;
  for (int i = 0; i < 4; ++i) B[i] = coef(i, 0);
  content_reduce(B.begin(), B.end());

  auto leading = [&](const std::vector<int>& idx) {
    int maxk = 0;
    for (auto& y : Y) maxk = std::max(maxk, y.degree_in(kEps) - k0);
    for (int k = 1; k <= maxk; ++k) {
      std::vector<Poly> r;
      bool nz = false;
      for (int i : idx) {
        r.push_back(coef(i, k));
        nz |= !r.back().is_zero();
      }
      if (nz) return r;
    }
    throw DirectionDependent("no transverse term in the lift");
  };

  for (int j : atlas.points) {
    if (!is_coord_point(B, j)) continue;
    std::array<Poly, 4> d;
    d[j] = Poly(kParamVars);
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
      if (i != j) idx.push_back(i);
    auto rd = leading(idx);
    for (size_t q = 0; q < idx.size(); ++q) d[idx[q]] = rd[q];
    OrbitElement out = point_divisor_element(j, d, e.params);
    for (int k : atlas.lines) {
      if (k == j) continue;
      int l = other_index(j, k);
      if (is_coord_point(out.a, l))
        throw UnsupportedConfiguration(std::string("direction along a blown-up line at ") + chart_name(out.chart));
    }
    return out;
  }
  for (int j : atlas.lines) {
    if (!on_line(B, j)) continue;
    for (int p : atlas.forbidden_points)
      if (is_coord_point(B, p)) throw HitForbidden("fiber over e" + std::to_string(p));
    for (int p : atlas.points)
      if (is_coord_point(B, p)) throw UnsupportedConfiguration("line-divisor base at a blown-up point");
    auto r = leading({0, j});
    return line_divisor_element(j, B, {r[0], r[1]}, e.params);
  }
  for (int j : atlas.forbidden_lines)
    if (on_line(B, j)) throw HitForbidden("inside the line " + std::string("Σ0") + std::to_string(j));
  for (int p : atlas.forbidden_points)
    if (is_coord_point(B, p)) throw HitForbidden("the point e" + std::to_string(p));
  return p3_element(B, e.params);
}

}  // namespace detail

// Strict transform of an element under f, computed from the leading terms of
// f applied to a lift. Two random lifts must agree.
inline OrbitElement apply_fY(const BirationalMap& f, const OrbitElement& e, const Atlas& atlas, uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-30, 30);
  auto rv = [&] {
    Vec4 v;
    for (auto& x : v) x = CycNum(d(rng));
    return v;
  };
  Vec4 w1 = rv(), n1 = rv(), w2 = rv(), n2 = rv();
  OrbitElement r1 = detail::apply_once(f, e, atlas, w1, n1);
  OrbitElement r2 = detail::apply_once(f, e, atlas, w2, n2);
  if (!(r1 == r2)) throw DirectionDependent(std::string("image depends on the lift direction at ") + chart_name(e.chart));
  return r1;
}

// Convenience: one-parameter and two-parameter P3 families
inline Poly param_t() { return Poly::var(kParamVars, 0); }
inline Poly param_s() { return Poly::var(kParamVars, 1); }
inline Poly pc(const CycNum& c) { return detail::pconst(c); }

}  // namespace lfm
