#pragma once

#include "birmap.hpp"
#include "linalg.hpp"

#include <functional>

namespace lfm {

// j_f is the exact Jacobian determinant of the representative; multipliers are
// therefore unchanged by rescaling f and by linear conjugacy.
inline Poly jacobian_form(const BirationalMap& f) { return jacobian(f); }

// Linear pencil A - tB acting on coefficient vectors of degree-d forms.
struct InvariantPencil {
  std::vector<uint64_t> unknowns, targets;
  CycMatrix A, B;
};

inline InvariantPencil invariant_pencil(const BirationalMap& f, int degree) {
  const int nv = f.nvars();
  InvariantPencil p;
  p.unknowns = monomials_of_degree(nv, degree);
  Poly j = jacobian_form(f);
  std::vector<Poly> img, jm;
  for (auto m : p.unknowns) {
    Poly x = Poly::monomial(nv, m, CycNum(1));
    img.push_back(x.substitute(f.comps));
    jm.push_back(j * x);
  }
  std::map<uint64_t, int> row;
  for (auto* v : {&img, &jm})
    for (auto& q : *v)
      for (auto& [m, c] : q.terms()) row.emplace(m, 0);
  int r = 0;
  for (auto& [m, k] : row) {
    k = r++;
    p.targets.push_back(m);
  }
  size_t n = p.unknowns.size();
  p.A.assign(r, std::vector<CycNum>(n));
  p.B.assign(r, std::vector<CycNum>(n));
  for (size_t c = 0; c < n; ++c) {
    for (auto& [m, v] : img[c].terms()) p.A[row[m]][c] = v;
    for (auto& [m, v] : jm[c].terms()) p.B[row[m]][c] = v;
  }
  return p;
}

inline std::vector<Poly> pencil_kernel(const InvariantPencil& p, int nv, const CycNum& t) {
  CycMatrix M = p.A;
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t k = 0; k < M[i].size(); ++k)
      if (!p.B[i][k].is_zero()) M[i][k] -= t * p.B[i][k];
  std::vector<Poly> basis;
  for (auto& v : kernel(M, int(p.unknowns.size()))) {
    Poly q(nv);
    for (size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) q.add_term(p.unknowns[k], v[k]);
    basis.push_back(q);
  }
  return basis;
}

// P∘f = t j_f P exactly
inline bool satisfies_invariance(const BirationalMap& f, const Poly& P, const CycNum& t) {
  return P.substitute(f.comps) == (jacobian_form(f) * P).scaled(t);
}

// Basis of degree-d forms P with P∘f = t j_f P; every element is re-checked by substitution.
inline std::vector<Poly> invariant_space(const BirationalMap& f, int degree, const CycNum& t) {
  auto basis = pencil_kernel(invariant_pencil(f, degree), f.nvars(), t);
  for (auto& P : basis)
    if (!satisfies_invariance(f, P, t)) throw std::logic_error("kernel element fails re-substitution");
  return basis;
}

struct MultiplierHit {
  CycNum t;
  int dimension;
};

// q ζ_n^k for q in {±1, ±1/2, ±2}
inline std::vector<CycNum> default_multiplier_candidates(int n) {
  std::vector<CycNum> out;
  for (auto q : {CycNum::rational(1), CycNum::rational(-1), CycNum::rational(1, 2), CycNum::rational(-1, 2),
                 CycNum::rational(2), CycNum::rational(-2)})
    for (int k = 0; k < n; ++k) {
      CycNum c = q * CycNum::zeta(n, k);
      bool dup = false;
      for (auto& x : out) dup |= x == c;
      if (!dup) out.push_back(c);
    }
  return out;
}

inline std::vector<MultiplierHit> scan_multipliers(const BirationalMap& f, int degree,
                                                   std::vector<CycNum> candidates = {}) {
  if (candidates.empty()) {
    int n = 1;
    for (auto& c : f.comps) n = std::lcm(n, c.field_order());
    candidates = default_multiplier_candidates(n);
  }
  InvariantPencil p = invariant_pencil(f, degree);
  std::vector<MultiplierHit> hits;
  for (auto& t : candidates) {
    int d = int(pencil_kernel(p, f.nvars(), t).size());
    if (d > 0) hits.push_back({t, d});
  }
  std::stable_sort(hits.begin(), hits.end(), [](auto& a, auto& b) { return a.dimension > b.dimension; });
  return hits;
}

struct NotASolution : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// the multiplier t with P∘f = t j_f P
inline CycNum multiplier_of(const BirationalMap& f, const Poly& P) {
  Poly lhs = P.substitute(f.comps), rhs = jacobian_form(f) * P;
  if (rhs.is_zero()) throw NotASolution("zero polynomial");
  auto it = rhs.terms().rbegin();
  CycNum t = lhs.coeff(it->first) / it->second;
  if (lhs != rhs.scaled(t)) throw NotASolution("P∘f is not a multiple of j_f P");
  return t;
}

// κ = t_P / t_Q
inline CycNum pencil_action(const BirationalMap& f, const Poly& P, const Poly& Q) {
  return multiplier_of(f, P) / multiplier_of(f, Q);
}

// P = c Q for some nonzero c
inline bool proportional(const Poly& P, const Poly& Q) {
  if (P.is_zero() || Q.is_zero()) return P.is_zero() && Q.is_zero();
  auto it = Q.terms().begin();
  CycNum c = P.coeff(it->first);
  if (c.is_zero()) return false;
  return P == Q.scaled(c / it->second);
}

enum class SingularType { Smooth, A1, CorankOne, Degenerate, OffSurface };

inline const char* singular_name(SingularType s) {
  static const char* n[] = {"smooth", "A1", "corank-one", "degenerate", "off-surface"};
  return n[int(s)];
}

namespace detail {

inline int rank3(const std::function<bool(int, int, int, int)>& minor2_nonzero, bool det_nonzero, bool any_nonzero) {
  if (det_nonzero) return 3;
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2)
          if (minor2_nonzero(r1, r2, c1, c2)) return 2;
  return any_nonzero ? 1 : 0;
}

template <class T, class Z>
SingularType classify_hessian(const std::array<std::array<T, 3>, 3>& H, Z is_zero) {
  T det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
          H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
  bool any = false;
  for (auto& r : H)
    for (auto& x : r) any |= !is_zero(x);
  int rk = rank3([&](int r1, int r2, int c1, int c2) { return !is_zero(H[r1][c1] * H[r2][c2] - H[r1][c2] * H[r2][c1]); },
                 !is_zero(det), any);
  if (rk == 3) return SingularType::A1;
  if (rk == 2) return SingularType::CorankOne;
  return SingularType::Degenerate;
}

}  // namespace detail

// Type of the point p on {P = 0}, from the gradient and the affine Hessian in the chart x_k = 1.
inline SingularType singular_check(const Poly& P, const Vec4& p) {
  std::vector<CycNum> x(p.begin(), p.end());
  if (!P.eval(x).is_zero()) return SingularType::OffSurface;
  for (int i = 0; i < 4; ++i)
    if (!P.derivative(i).eval(x).is_zero()) return SingularType::Smooth;
  int k = 0;
  while (p[k].is_zero()) ++k;
  // dehomogenize so that p_k = 1
  std::vector<CycNum> y = x;
  for (auto& c : y) c = c / p[k];
  std::vector<int> vars;
  for (int i = 0; i < 4; ++i)
    if (i != k) vars.push_back(i);
  Poly Pa = P.specialize(k, CycNum(1));
  std::array<std::array<CycNum, 3>, 3> H;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) H[a][b] = Pa.derivative(vars[a]).derivative(vars[b]).eval(y);
  return detail::classify_hessian(H, [](const CycNum& c) { return c.is_zero(); });
}

// Element c0 + c1 s of K[s]/(s^2 - p s - q).
struct QuadExt {
  CycNum c0, c1, p, q;
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    CycNum bd = a.c1 * b.c1;
    return {a.c0 * b.c0 + bd * a.q, a.c0 * b.c1 + a.c1 * b.c0 + bd * a.p, a.p, a.q};
  }
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.p, a.q}; }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.p, a.q}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
};

// Type at [1 : s : s : s] with s^2 = p s + q, working modulo that relation.
inline SingularType singular_check_diagonal(const Poly& P, const CycNum& p, const CycNum& q) {
  // univariate in s after substituting the point
  auto at = [&](const Poly& F) {
    Poly s = Poly::var(1, 0), one(1, CycNum(1));
    Poly u = F.substitute({one, s, s, s});
    std::vector<CycNum> c(u.degree() + 1, CycNum(0));
    for (auto& [m, v] : u.terms()) c[Mono::get(m, 0)] = v;
    // reduce s^k from the top
    for (int k = int(c.size()) - 1; k >= 2; --k) {
      c[k - 1] += c[k] * p;
      c[k - 2] += c[k] * q;
      c[k] = CycNum(0);
    }
    c.resize(2, CycNum(0));
    return QuadExt{c[0], c[1], p, q};
  };
  if (!at(P).is_zero()) return SingularType::OffSurface;
  for (int i = 0; i < 4; ++i)
    if (!at(P.derivative(i)).is_zero()) return SingularType::Smooth;
  Poly Pa = P.specialize(0, CycNum(1));
  std::array<std::array<QuadExt, 3>, 3> H;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) H[a][b] = at(Pa.derivative(a + 1).derivative(b + 1));
  return detail::classify_hessian(H, [](const QuadExt& c) { return c.is_zero(); });
}

// Quartic invariants quoted for the (7.1), (8.1a) and (8.1b) maps.
namespace quartics {

inline Poly x(int i) { return Poly::var(4, i); }
inline Poly k(const CycNum& c) { return Poly(4, c); }

inline Poly P0() { return x(0) * x(1) * x(2) * x(3); }
inline Poly Q0() { return P0(); }
inline Poly R0() { return P0(); }

inline Poly P1(const CycNum& a) {
  CycNum w = CycNum::zeta(3), one(1), two(2);
  auto X = [](int i0, int i1, int i2, int i3) {
    return Poly::monomial(4, Mono::from({i0, i1, i2, i3}), CycNum(1));
  };
  Poly r(4);
  r += (k(a * a) * X(4, 0, 0, 0) + k(one + a) * X(1, 1, 2, 0) + X(0, 2, 0, 2) + k(a) * X(0, 1, 1, 2)).scaled(one - w);
  r -= (X(1, 0, 3, 0) + k(one + a) * X(1, 2, 0, 1) + k(a) * X(0, 1, 2, 1) + k(a) * X(2, 0, 0, 2)).scaled(two + w);
  r += (k(a) * X(2, 2, 0, 0) + k(a) * X(1, 2, 1, 0) + k(a) * X(0, 2, 1, 1) + k(a) * X(1, 0, 1, 2)).scaled(one + two * w);
  r += X(3, 1, 0, 0).scaled(a * (one + a + two * w - a * w));
  r += (k(one + a) * X(2, 1, 0, 1) + X(1, 0, 2, 1)).scaled(one - two * a + two * w - a * w);
  r += X(2, 0, 2, 0).scaled(one - a + two * w + a * w);
  r -= (k(one + a) * X(2, 1, 1, 0) + X(1, 1, 0, 2)).scaled(two - a + w + a * w);
  r += X(3, 0, 0, 1).scaled(a * (one - two * a - w - a * w));
  r += X(2, 0, 1, 1).scaled((one + a) * (one + a - w + two * a * w));
  r += X(3, 0, 1, 0).scaled(a * (two + a + w + two * a * w));
  return r;
}

inline Poly Q1(const CycNum& a) {
  return (x(0).scaled(a) + x(1) + x(2) + x(3)) * (x(0) + x(1)) * (x(0) + x(2)) * (x(0) + x(3));
}
inline Poly Q2(const CycNum& a) {
  return (x(0) * (x(0).scaled(a) + x(1) + x(2) + x(3)) + x(1) * x(3)) * (x(0) + x(1) + x(2)) *
         (x(0) + x(2) + x(3));
}

inline Poly R1() {
  CycNum w = CycNum::zeta(3);
  return (x(0) + x(1).scaled(w)) * (x(0) + x(2).scaled(w)) * (x(0) + x(3).scaled(w)) *
         (x(1) + x(2).scaled(w * w) + x(3).scaled(w));
}
inline Poly R2() {
  CycNum w = CycNum::zeta(3);
  Poly a = (x(1) * x(3)).scaled(w) * (x(0) + x(1).scaled(w)) * (x(0) + x(3).scaled(w));
  Poly b = (x(0) * x(2)).scaled(w * w) *
           (x(0) * (x(1) + x(3).scaled(w)) + x(2) * (x(1).scaled(w) + x(3)) + (x(0) * x(2)).scaled(w * w));
  return a + b;
}
// R2 as printed is not a solution; the solution at the same multiplier has x2 (w x1 + x2 + w^2 x3)
// in place of x2 (w x1 + x3).
inline Poly R2_solution() {
  CycNum w = CycNum::zeta(3);
  Poly a = (x(1) * x(3)).scaled(w) * (x(0) + x(1).scaled(w)) * (x(0) + x(3).scaled(w));
  Poly b = (x(0) * x(2)).scaled(w * w) *
           (x(0) * (x(1) + x(3).scaled(w)) + x(2) * (x(1).scaled(w) + x(2) + x(3).scaled(w * w)) +
            (x(0) * x(2)).scaled(w * w));
  return a + b;
}

}  // namespace quartics

}  // namespace lfm
