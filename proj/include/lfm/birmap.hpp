#pragma once

#include "mgcd.hpp"

#include <numeric>
#include <random>
#include <array>

namespace lfm {

struct DegenerateParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Vec4 = std::array<CycNum, 4>;

inline Vec4 operator*(const CycNum& s, const Vec4& v) {
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline bool is_zero(const Vec4& v) {
  for (auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}
inline Poly linear_form(const Vec4& v) { return Poly::linear({v[0], v[1], v[2], v[3]}); }

struct MapParameters {
  Vec4 alpha, beta;

  MapParameters() = default;
  MapParameters(Vec4 a, Vec4 b) : alpha(std::move(a)), beta(std::move(b)) {
    int n = field_order();
    for (auto& x : alpha) x = x.lift(std::lcm(n, x.order()));
    for (auto& x : beta) x = x.lift(std::lcm(n, x.order()));
  }

  int field_order() const {
    int n = 1;
    for (auto& x : alpha) n = std::lcm(n, x.order());
    for (auto& x : beta) n = std::lcm(n, x.order());
    return n;
  }
  Vec4 gamma() const { return beta[1] * alpha - alpha[1] * beta; }
  Vec4 B() const { return {-alpha[1], CycNum(0), CycNum(0), beta[1]}; }
  Vec4 a_check() const { return {alpha[0], alpha[2], alpha[3], CycNum(0)}; }
  Vec4 b_check() const { return {beta[0], beta[2], beta[3], CycNum(0)}; }
  Vec4 C() const { return beta[1] * a_check() - alpha[1] * b_check(); }

  // empty string when (2.3) holds, else the violated condition
  std::string degeneracy() const {
    // alpha = lambda beta, including alpha = 0
    bool prop = true;
    for (int i = 0; i < 4 && prop; ++i)
      for (int j = i + 1; j < 4 && prop; ++j)
        if (alpha[i] * beta[j] != alpha[j] * beta[i]) prop = false;
    if (prop) return "alpha is proportional to beta";
    if (beta[1].is_zero() && beta[2].is_zero() && beta[3].is_zero()) return "beta = (beta0,0,0,0)";
    if (alpha[1].is_zero() && beta[1].is_zero()) return "(alpha1, beta1) = (0,0)";
    return "";
  }
  void validate() const {
    std::string why = degeneracy();
    if (!why.empty()) throw DegenerateParameters("degenerate parameters: " + why);
  }
  friend bool operator==(const MapParameters& a, const MapParameters& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

// comps[i] = x_{perm[i]} * b for i != special, comps[special] = A
struct ProductShape {
  int special;
  std::vector<int> perm;
  Poly A, b;
};

struct BirationalMap {
  std::vector<Poly> comps;
  std::optional<ProductShape> shape;
  // irreducible Jacobian factors; candidate common factors when this map is the inner one
  std::vector<Poly> exceptional;
  std::optional<MapParameters> params;
  int iterate = 1;

  int nvars() const { return comps.empty() ? 0 : comps[0].nvars(); }
  int degree() const {
    for (auto& c : comps)
      if (!c.is_zero()) return c.degree();
    return -1;
  }
  std::vector<CycNum> eval(const std::vector<CycNum>& x) const {
    std::vector<CycNum> r;
    for (auto& c : comps) r.push_back(c.eval(x));
    return r;
  }
};

inline BirationalMap identity_map(int nv = 4) {
  BirationalMap m;
  for (int i = 0; i < nv; ++i) m.comps.push_back(Poly::var(nv, i));
  m.iterate = 0;
  return m;
}

inline BirationalMap build_family_map(const MapParameters& p) {
  p.validate();
  Poly x0 = Poly::var(4, 0), b = linear_form(p.beta), a = linear_form(p.alpha);
  BirationalMap f;
  f.comps = {x0 * b, Poly::var(4, 2) * b, Poly::var(4, 3) * b, x0 * a};
  f.shape = ProductShape{3, {0, 2, 3, -1}, x0 * a, b};
  f.exceptional = {x0, b, linear_form(p.gamma())};
  f.params = p;
  return f;
}

inline BirationalMap build_family_inverse(const MapParameters& p) {
  p.validate();
  Poly x0 = Poly::var(4, 0), x3 = Poly::var(4, 3), B = linear_form(p.B());
  Poly A = x0 * linear_form(p.a_check()) - x3 * linear_form(p.b_check());
  BirationalMap g;
  g.comps = {x0 * B, A, Poly::var(4, 1) * B, Poly::var(4, 2) * B};
  g.shape = ProductShape{1, {0, -1, 1, 2}, A, B};
  g.exceptional = {x0, B, linear_form(p.C())};
  g.params = p;
  g.iterate = -1;
  return g;
}

namespace detail {

// F o g when g has product shape: sum_k A^k b^{D-k} H_k, with the obvious
// common factor A^{kmin} b^{D-kmax} left out. Returns the removed degree.
inline std::vector<Poly> compose_shaped(const std::vector<Poly>& F, const ProductShape& s, int& removed) {
  int nv = s.A.nvars();
  std::vector<std::map<int, Poly>> H(F.size());
  int kmin = 1 << 30, kmax = -1, D = -1;
  for (size_t c = 0; c < F.size(); ++c) {
    for (auto& [m, coef] : F[c].terms()) {
      int k = Mono::get(m, s.special);
      uint64_t mm = 0;
      for (int i = 0; i < int(s.perm.size()); ++i) {
        if (i == s.special) continue;
        int e = Mono::get(m, i);
        if (e) mm = Mono::set(mm, s.perm[i], Mono::get(mm, s.perm[i]) + e);
      }
      H[c].try_emplace(k, Poly(nv)).first->second.add_term(mm, coef);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
      D = std::max(D, Mono::degree(m));
    }
  }
  std::vector<Poly> bp{Poly(nv, CycNum(1))};
  std::vector<Poly> out;
  for (size_t c = 0; c < F.size(); ++c) {
    Poly R(nv);
    for (int k = kmax; k >= kmin; --k) {
      if (k != kmax) R = R * s.A;
      auto it = H[c].find(k);
      if (it == H[c].end()) continue;
      while (int(bp.size()) <= kmax - k) bp.push_back(bp.back() * s.b);
      R += it->second * bp[kmax - k];
    }
    out.push_back(std::move(R));
  }
  removed = kmin * s.A.degree() + (D - kmax) * s.b.degree();
  return out;
}

}  // namespace detail

// f o g, reduced. Candidate factors are the exceptional forms of the inner map g.
inline BirationalMap compose_reduce(const BirationalMap& f, const BirationalMap& g) {
  if (f.nvars() != int(g.comps.size())) throw std::invalid_argument("compose_reduce: arity mismatch");
  std::vector<Poly> raw;
  if (g.shape) {
    int removed = 0;
    raw = detail::compose_shaped(f.comps, *g.shape, removed);
  } else {
    for (auto& c : f.comps) raw.push_back(c.substitute(g.comps));
  }
  BirationalMap h;
  h.comps = gcd_reduce(std::move(raw), g.exceptional).comps;
  h.params = f.params ? f.params : g.params;
  h.iterate = f.iterate + g.iterate;
  return h;
}

// projective identity: all x_j F_i - x_i F_j vanish
inline bool is_identity(const BirationalMap& F) {
  int n = int(F.comps.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Poly c = Poly::var(n, j) * F.comps[i] - Poly::var(n, i) * F.comps[j];
      if (!c.is_zero()) return false;
    }
  return true;
}

struct DegreeSequence {
  std::vector<int> degrees;  // deg f^n for n = 1..
  bool truncated = false;  // stopped at the degree bound
};

inline DegreeSequence iterate_degrees(const BirationalMap& f, int n_max, int bound = 200) {
  DegreeSequence s;
  BirationalMap F = f;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      if (F.degree() * f.degree() > 2 * bound) {
        s.truncated = true;
        break;
      }
      F = compose_reduce(F, f);
    }
    if (F.degree() > bound) {
      s.truncated = true;
      break;
    }
    s.degrees.push_back(F.degree());
  }
  return s;
}

namespace detail {

// arithmetic in F_p for a word-size prime p = 1 mod N, with r a primitive N-th root of unity
struct PrimeField {
  uint64_t p = 0, r = 0;
  int N = 1;

  uint64_t mul(uint64_t a, uint64_t b) const { return uint64_t((unsigned __int128)a * b % p); }
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t x = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) x = mul(x, a);
    return x;
  }
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
  std::optional<uint64_t> reduce(const mpq_class& q) const {
    uint64_t d = mpz_class(q.get_den() % p).get_ui();
    if (!d) return std::nullopt;
    mpz_class n = q.get_num() % p;
    if (n < 0) n += p;
    return mul(n.get_ui(), inv(d));
  }
  std::optional<uint64_t> reduce(const CycNum& c) const {
    uint64_t z = pow(r, N / c.order()), x = 0, zk = 1;
    for (auto& q : c.coords()) {
      auto v = reduce(q);
      if (!v) return std::nullopt;
      x = add(x, mul(*v, zk));
      zk = mul(zk, z);
    }
    return x;
  }
};

inline bool is_prime64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// the k-th prime p = 1 mod N below 2^31, with a primitive N-th root of unity
inline PrimeField prime_field(int N, int k) {
  PrimeField F;
  F.N = N;
  uint64_t p = (uint64_t(1) << 31) / N * N + 1;
  for (;; p -= N) {
    if (!is_prime64(p)) continue;
    if (k-- > 0) continue;
    F.p = p;
    for (uint64_t g = 2;; ++g) {
      uint64_t r = F.pow(g, (p - 1) / N);
      bool prim = true;
      for (int q = 2; q <= N; ++q)
        if (N % q == 0 && is_prime64(q) && F.pow(r, N / q) == 1) prim = false;
      if (prim) {
        F.r = r;
        return F;
      }
    }
  }
}

using ModPoly = std::vector<uint64_t>;

inline void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += (unsigned __int128)a[i] * b[j];
      if (acc[i + j] >> 120) acc[i + j] %= F.p;
    }
  ModPoly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = uint64_t(acc[i] % F.p);
  mp_trim(r);
  return r;
}

// a mod b, and the quotient in q when given
inline ModPoly mp_divmod(ModPoly a, const ModPoly& b, const PrimeField& F, ModPoly* q = nullptr) {
  uint64_t li = F.inv(b.back());
  if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (int i = int(a.size()) - int(b.size()); i >= 0; --i) {
    uint64_t c = F.mul(a[i + b.size() - 1], li);
    if (q) (*q)[i] = c;
    if (!c) continue;
    for (size_t j = 0; j < b.size(); ++j) a[i + j] = F.sub(a[i + j], F.mul(c, b[j]));
  }
  mp_trim(a);
  return a;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, const PrimeField& F) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    ModPoly r = mp_divmod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// deg f^n on a random line over F, or nullopt when a coefficient does not reduce
inline std::optional<std::vector<int>> line_degrees_mod(const BirationalMap& f, int n_max, const PrimeField& F,
                                                        std::mt19937_64& rng, int bound) {
  struct Term {
    uint64_t c;
    std::vector<int> e;
  };
  int nv = f.nvars();
  std::vector<std::vector<Term>> comps;
  for (auto& c : f.comps) {
    std::vector<Term> ts;
    for (auto& [m, v] : c.terms()) {
      auto x = F.reduce(v);
      if (!x) return std::nullopt;
      std::vector<int> e(nv);
      for (int i = 0; i < nv; ++i) e[i] = Mono::get(m, i);
      ts.push_back({*x, e});
    }
    comps.push_back(std::move(ts));
  }
  std::uniform_int_distribution<uint64_t> d(1, F.p - 1);
  std::vector<ModPoly> X(nv);
  for (auto& x : X) x = {d(rng), d(rng)};
  std::vector<int> out;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::vector<ModPoly>> pw(nv);
    for (int i = 0; i < nv; ++i) {
      pw[i].push_back({1});
      for (int k = 1; k <= f.degree(); ++k) pw[i].push_back(mp_mul(pw[i].back(), X[i], F));
    }
    std::vector<ModPoly> Y;
    for (auto& ts : comps) {
      ModPoly y;
      for (auto& t : ts) {
        ModPoly m{t.c};
        for (int i = 0; i < nv; ++i) m = mp_mul(m, pw[i][t.e[i]], F);
        if (y.size() < m.size()) y.resize(m.size(), 0);
        for (size_t k = 0; k < m.size(); ++k) y[k] = F.add(y[k], m[k]);
      }
      mp_trim(y);
      Y.push_back(std::move(y));
    }
    ModPoly g;
    for (auto& y : Y) g = mp_gcd(g, y, F);
    int deg = 0;
    for (auto& y : Y) {
      if (y.empty()) continue;
      ModPoly q;
      mp_divmod(y, g, F, &q);
      y = std::move(q);
      deg = std::max(deg, int(y.size()) - 1);
    }
    X = std::move(Y);
    if (deg > bound) break;
    out.push_back(deg);
  }
  return out;
}

}  // namespace detail

// deg f^n from the restriction to random lines over two word-size primes. A special line or prime can
// only lower a degree, so the larger value is kept.
inline DegreeSequence line_degrees(const BirationalMap& f, int n_max, uint64_t seed = 17, int bound = 20000) {
  int N = 1;
  for (auto& c : f.comps)
    for (auto& [m, v] : c.terms()) N = std::lcm(N, v.order());
  std::mt19937_64 rng(seed);
  std::vector<int> best;
  for (int k = 0, used = 0; used < 2 && k < 8; ++k) {
    auto d = detail::line_degrees_mod(f, n_max, detail::prime_field(N, k), rng, bound);
    if (!d) continue;
    ++used;
    if (best.size() < d->size()) best.resize(d->size(), 0);
    for (size_t i = 0; i < d->size(); ++i) best[i] = std::max(best[i], (*d)[i]);
  }
  DegreeSequence s;
  s.degrees = best;
  s.truncated = int(best.size()) < n_max;
  return s;
}

inline std::optional<int> period_of(const BirationalMap& f, int p_max = 16) {
  BirationalMap F = f;
  for (int p = 1; p <= p_max; ++p) {
    if (p > 1) F = compose_reduce(F, f);
    if (F.degree() == 1 && is_identity(F)) return p;
  }
  return std::nullopt;
}

inline Poly determinant(const std::vector<std::vector<Poly>>& M) {
  int n = int(M.size());
  if (n == 1) return M[0][0];
  Poly d(M[0][0].nvars());
  for (int j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (int i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      minor.push_back(std::move(row));
    }
    Poly t = M[0][j] * determinant(minor);
    if (j % 2) d -= t;
    else d += t;
  }
  return d;
}

inline Poly jacobian(const BirationalMap& f) {
  int n = int(f.comps.size());
  std::vector<std::vector<Poly>> J(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J[i].push_back(f.comps[i].derivative(j));
  return determinant(J);
}

struct JacobianFactorization {
  bool divisible = false;
  CycNum cofactor;  // det = cofactor * x0 (gamma.x) (beta.x)^2
};

inline JacobianFactorization jacobian_factored(const MapParameters& p) {
  Poly J = jacobian(build_family_map(p));
  Poly x0 = Poly::var(4, 0), g = linear_form(p.gamma()), b = linear_form(p.beta);
  JacobianFactorization r;
  auto q = J.divide(x0 * g * b * b);
  if (q && q->is_constant()) {
    r.divisible = true;
    r.cofactor = q->constant_term();
  }
  return r;
}

// Conjugacy actions on parameters
inline MapParameters act_scale(const MapParameters& p, const CycNum& lambda) {
  return MapParameters(lambda * p.alpha, lambda * p.beta);
}
inline MapParameters act_dilate(const MapParameters& p, const CycNum& c) {
  const auto &a = p.alpha, &b = p.beta;
  CycNum c2 = c * c;
  return MapParameters({a[0], c * a[1], c * a[2], c * a[3]}, {c * b[0], c2 * b[1], c2 * b[2], c2 * b[3]});
}
// translation z -> z + mu in the affine recurrence. The alpha0 update carries
// -mu(beta0 + mu(beta1+beta2+beta3)); see the conjugacy check in the tests.
inline MapParameters act_translate(const MapParameters& p, const CycNum& mu) {
  const auto &a = p.alpha, &b = p.beta;
  CycNum sa = a[1] + a[2] + a[3], sb = b[1] + b[2] + b[3];
  Vec4 a2{a[0] + mu * sa - mu * (b[0] + mu * sb), a[1] - mu * b[1], a[2] - mu * b[2], a[3] - mu * b[3]};
  Vec4 b2{b[0] + mu * sb, b[1], b[2], b[3]};
  return MapParameters(a2, b2);
}

struct Normalization {
  CycNum lambda = 1, c = 1, mu = 0;
};

struct ParamClass {
  bool critical = false;
  std::string lemma;  // non-critical case label, e.g. "3.3(i)"
  MapParameters normalized;
  Normalization transform;
};

inline bool is_critical(const MapParameters& p) {
  return p.beta[2].is_zero() && p.beta[3].is_zero() &&
         !(p.beta[1] * p.alpha[2] * p.alpha[3]).is_zero();
}

inline ParamClass classify_parameters(const MapParameters& p) {
  p.validate();
  ParamClass r;
  const auto &a = p.alpha, &b = p.beta;
  if (b[1].is_zero()) {
    r.normalized = p;
    if (!b[3].is_zero()) {
      if (!b[2].is_zero()) r.lemma = "3.3(i)";
      else r.lemma = a[2].is_zero() ? "3.3(ii)" : "3.3(iii)";
    } else {
      r.lemma = "3.3(iv)";
    }
    return r;
  }
  if (is_critical(p)) {
    r.critical = true;
    Normalization t;
    t.c = a[3] / b[1];
    t.lambda = b[1] / (a[3] * a[3]);
    MapParameters q = act_scale(act_dilate(p, t.c), t.lambda);
    t.mu = q.alpha[1];
    r.normalized = act_translate(q, t.mu);
    r.transform = t;
    return r;
  }
  // beta1 != 0: scale to beta1 = 1, translate to alpha1 = 0
  Normalization t;
  t.lambda = b[1].inv();
  MapParameters q = act_scale(p, t.lambda);
  t.mu = q.alpha[1];
  q = act_translate(q, t.mu);
  r.normalized = q;
  r.transform = t;
  if (!q.beta[2].is_zero() || !q.beta[3].is_zero()) r.lemma = "3.4";
  else if (q.alpha[3].is_zero() && !q.alpha[2].is_zero()) r.lemma = "3.5(i)";
  else if (q.alpha[2].is_zero() && !q.alpha[3].is_zero()) r.lemma = "3.5(ii)";
  else r.lemma = "3.5(linear)";
  return r;
}

// f^{-1} of a normalized critical map is conjugate by x1 <-> x3 to the critical
// map with beta' = (0,1,0,0), alpha' = (alpha0, -beta0, 1, alpha2)
inline MapParameters conjugate_inverse_params(const MapParameters& p) {
  return MapParameters({p.alpha[0], -p.beta[0], CycNum(1), p.alpha[2]},
                       {CycNum(0), CycNum(1), CycNum(0), CycNum(0)});
}

}  // namespace lfm
