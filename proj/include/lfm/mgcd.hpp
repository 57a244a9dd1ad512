#pragma once

#include "upoly.hpp"

#include <random>

namespace lfm {

namespace detail {

inline int first_var(const Poly& p) {
  for (int i = 0; i < p.nvars(); ++i)
    if (p.degree_in(i) > 0) return i;
  return p.nvars();
}

inline Poly exact_div(const Poly& a, const Poly& b) {
  auto q = a.divide(b);
  if (!q) throw std::logic_error("expected exact division");
  return *q;
}

// r = lc(b)^k a - (...) b, degree in v below deg_v(b)
inline Poly pseudo_rem(Poly r, const Poly& b, int v) {
  int db = b.degree_in(v);
  Poly lb = b.coeff_in(v, db);
  while (!r.is_zero() && r.degree_in(v) >= db) {
    int dr = r.degree_in(v);
    Poly lr = r.coeff_in(v, dr);
    r = r * lb - (lr * b).shifted(Mono::var(v, dr - db));
  }
  return r;
}

}  // namespace detail

Poly gcd(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed as a polynomial in x_v
inline Poly content_in(const Poly& p, int v) {
  Poly g(p.nvars());
  for (int e = p.degree_in(v); e >= 0; --e) {
    Poly c = p.coeff_in(v, e);
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) return Poly(p.nvars(), CycNum(1));
  }
  return g;
}

// Recursive primitive PRS, main variable = first variable present.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(a.nvars(), CycNum(1));
  int v = std::min(detail::first_var(a), detail::first_var(b));
  if (a.degree_in(v) <= 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) <= 0) return gcd(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly pa = detail::exact_div(a, ca), pb = detail::exact_div(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Poly r = detail::pseudo_rem(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pa = Poly(a.nvars(), CycNum(1));
      break;
    }
    pb = detail::exact_div(r, content_in(r, v)).monic();
  }
  Poly g = pa.degree_in(v) > 0 ? detail::exact_div(pa, content_in(pa, v)) : Poly(a.nvars(), CycNum(1));
  return (c * g).monic();
}

inline Poly gcd(const std::vector<Poly>& ps) {
  Poly g(ps.empty() ? 0 : ps[0].nvars());
  for (auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : gcd(g, p);
    if (g.is_constant()) break;
  }
  return g;
}

// Restrict to a random line x = u + s w. If every restriction keeps its full
// degree and the univariate gcd is constant, the tuple has no common factor.
inline bool coprime_certificate(const std::vector<Poly>& ps, std::mt19937_64& rng, int tries = 3) {
  int nv = -1;
  for (auto& p : ps)
    if (!p.is_zero()) nv = p.nvars();
  if (nv < 0) return false;
  std::uniform_int_distribution<int> dist(-40, 40);
  for (int attempt = 0; attempt < tries; ++attempt) {
    std::vector<Poly> line(nv);
    for (int i = 0; i < nv; ++i)
      line[i] = Poly(1, CycNum(dist(rng))) + Poly::var(1, 0).scaled(CycNum(dist(rng)));
    UPoly g;
    bool ok = true;
    for (auto& p : ps) {
      if (p.is_zero()) continue;
      UPoly q = UPoly::from_poly(p.substitute(line), 0);
      if (q.degree() != p.degree()) {
        ok = false;
        break;
      }
      g = g.is_zero() ? q.monic() : gcd(g, q);
    }
    if (ok) return g.degree() <= 0;
  }
  return false;
}

struct ReduceResult {
  std::vector<Poly> comps;
  int removed_degree = 0;
  bool used_fallback = false;
};

// Divide a tuple by its full common factor: candidate trial division first,
// then a certificate, then the general gcd if the certificate fails.
inline ReduceResult gcd_reduce(std::vector<Poly> comps, const std::vector<Poly>& candidates = {}) {
  bool any = false;
  for (auto& c : comps) any |= !c.is_zero();
  if (!any) throw std::invalid_argument("gcd_reduce: zero tuple");
  ReduceResult res;
  for (const Poly& c : candidates) {
    if (c.is_constant()) continue;
    for (;;) {
      std::vector<Poly> q;
      bool ok = true;
      for (auto& p : comps) {
        if (p.is_zero()) {
          q.push_back(p);
          continue;
        }
        auto d = p.divide(c);
        if (!d) {
          ok = false;
          break;
        }
        q.push_back(std::move(*d));
      }
      if (!ok) break;
      comps = std::move(q);
      res.removed_degree += c.degree();
    }
  }
  std::mt19937_64 rng(0x5eed);
  if (!coprime_certificate(comps, rng)) {
    res.used_fallback = true;
    Poly g = gcd(comps);
    if (!g.is_constant()) {
      for (auto& p : comps)
        if (!p.is_zero()) p = detail::exact_div(p, g);
      res.removed_degree += g.degree();
    }
  }
  res.comps = std::move(comps);
  return res;
}

}  // namespace lfm
