#pragma once

#include "intpoly.hpp"

#include <cmath>

namespace lfm {

struct AlgebraicReal {
  IntPoly poly;  // squarefree defining polynomial
  mpq_class lo, hi;  // isolating interval, lo < root <= hi (or lo == hi exact)
  double approx = 0;
  double width() const { return mpq_class(hi - lo).get_d(); }
};

class SturmChain {
 public:
  explicit SturmChain(const IntPoly& p) {
    IntPoly s = squarefree_part(p);
    chain_.push_back(s);
    if (s.degree() <= 0) return;
    chain_.push_back(s.derivative());
    while (chain_.back().degree() > 0) {
      IntPoly r = rem_positive_scaled(chain_[chain_.size() - 2], chain_.back());
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }
  const IntPoly& base() const { return chain_[0]; }
  int variations(const mpq_class& x) const {
    int v = 0, last = 0;
    for (auto& q : chain_) {
      int s = q.sign_at(x);
      if (s == 0) continue;
      if (last && s != last) ++v;
      last = s;
    }
    return v;
  }
  // number of roots in (a, b]
  int count(const mpq_class& a, const mpq_class& b) const { return variations(a) - variations(b); }

 private:
  std::vector<IntPoly> chain_;
};

// bound on the absolute value of all complex roots
inline mpq_class cauchy_bound(const IntPoly& p) {
  mpq_class m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    mpq_class r(abs(p[i]), abs(p.lead()));
    if (r > m) m = r;
  }
  return m + 1;
}

inline void refine_root(AlgebraicReal& r, const mpq_class& tol) {
  const IntPoly& p = r.poly;
  int slo = p.sign_at(r.lo);
  while (r.hi - r.lo > tol) {
    mpq_class mid = (r.lo + r.hi) / 2;
    int sm = p.sign_at(mid);
    if (sm == 0) {
      r.lo = r.hi = mid;
      break;
    }
    if (sm == slo) r.lo = mid;
    else r.hi = mid;
  }
  r.approx = mpq_class((r.lo + r.hi) / 2).get_d();
}

// all real roots, ascending, each interval of width <= tol
inline std::vector<AlgebraicReal> sturm_isolate(const IntPoly& p, double tol = 1e-12) {
  if (p.is_zero()) throw std::invalid_argument("sturm_isolate: zero polynomial");
  SturmChain sc(p);
  std::vector<AlgebraicReal> out;
  if (sc.base().degree() <= 0) return out;
  mpq_class B = cauchy_bound(sc.base());
  mpq_class qtol(tol);
  // interval stack of (a, b] with known count
  std::vector<std::tuple<mpq_class, mpq_class, int>> work;
  work.emplace_back(-B, B, sc.count(-B, B));
  while (!work.empty()) {
    auto [a, b, n] = work.back();
    work.pop_back();
    if (n == 0) continue;
    if (n == 1) {
      AlgebraicReal r{sc.base(), a, b, 0};
      if (sc.base().sign_at(b) == 0) r.lo = r.hi = b;
      // keep p(lo) != 0 so sign bisection is valid
      while (r.lo != r.hi && sc.base().sign_at(r.lo) == 0) {
        mpq_class m = (r.lo + r.hi) / 2;
        if (sc.count(m, r.hi) == 1) r.lo = m;
        else r.hi = m;
      }
      refine_root(r, qtol);
      out.push_back(r);
      continue;
    }
    mpq_class m = (a + b) / 2;
    int left = sc.count(a, m);
    work.emplace_back(a, m, left);
    work.emplace_back(m, b, n - left);
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.lo < y.lo; });
  return out;
}

inline std::optional<AlgebraicReal> largest_root_above(const IntPoly& p, const mpq_class& bound, double tol = 1e-12) {
  auto roots = sturm_isolate(p, tol);
  for (auto it = roots.rbegin(); it != roots.rend(); ++it)
    if (it->lo >= bound || (it->hi > bound && it->poly.sign_at(bound) != 0)) return *it;
  return std::nullopt;
}

// Aberth iteration on a squarefree polynomial; long double precision, then Newton polish
inline std::vector<std::complex<long double>> complex_roots(const IntPoly& p) {
  using C = std::complex<long double>;
  int n = p.degree();
  std::vector<C> z(n);
  if (n <= 0) return z;
  IntPoly dp = p.derivative();
  long double R = (long double)cauchy_bound(p).get_d();
  for (int k = 0; k < n; ++k) z[k] = std::polar(R * 0.7L, (6.283185307179586L * k) / n + 0.4L);
  for (int it = 0; it < 2000; ++it) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      C pv = p.eval(z[k]), dv = dp.eval(z[k]);
      if (std::abs(pv) == 0) continue;
      C ratio = pv / dv;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      C w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

}  // namespace lfm
