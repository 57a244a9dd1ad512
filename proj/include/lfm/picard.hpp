#pragma once

#include "linalg.hpp"
#include "orbit.hpp"
#include "sturm.hpp"

#include <random>
#include <numeric>

namespace lfm {

struct PicAction {
  std::vector<std::string> labels;
  IntMatrix M;  // column k is the pullback of basis element k
  int size() const { return int(M.size()); }
};

inline PicAction picY_matrix() {
  // H, E1, E3, S01, S03
  PicAction p;
  p.labels = {"H", "E1", "E3", "S01", "S03"};
  p.M = IntMatrix(5, std::vector<mpz_class>(5, 0));
  auto col = [&](int k, std::vector<long> v) {
    for (int i = 0; i < 5; ++i) p.M[i][k] = v[i];
  };
  col(0, {2, -1, -1, -1, 0});   // 2H - E1 - E3 - S01
  col(1, {0, 0, 0, 0, 1});      // E1 -> S03
  col(2, {1, 0, -1, -1, 0});    // E3 -> Σβ
  col(3, {0, 0, 1, 0, 0});      // S01 -> E3
  col(4, {1, -1, -1, -1, -1});  // S03 -> Σ0
  return p;
}

struct InconsistentSignature : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void validate_signature(const OrbitSignature& s) {
  if (s.N < 2) throw InconsistentSignature("N must be at least 2");
  auto check_list = [&](const std::vector<int>& l, const char* name) {
    for (size_t i = 0; i < l.size(); ++i) {
      if (l[i] < 1 || l[i] >= s.N) throw InconsistentSignature(std::string(name) + " entry outside [1, N-1]");
      if (i && l[i] <= l[i - 1]) throw InconsistentSignature(std::string(name) + " not strictly increasing");
    }
  };
  check_list(s.d_list, "d_list");
  check_list(s.u_list, "u_list");
  for (int d : s.d_list)
    if (std::count(s.u_list.begin(), s.u_list.end(), d)) throw InconsistentSignature("d and u share a step");
  if (s.m_s) {
    int ms = *s.m_s;
    if (ms < 1 || ms > s.N - 5) throw InconsistentSignature("m_s must lie in [1, N-5]");
    for (auto* l : {&s.d_list, &s.u_list})
      for (int x : *l)
        if (x >= ms && x <= ms + 4) throw InconsistentSignature("d/u step inside the special-fiber window");
  }
}

// A random valid signature with N <= n_max: 1 < d1 < u1 < ... < um < N, sometimes with a special-fiber step.
inline OrbitSignature random_signature(std::mt19937_64& rng, int n_max = 25) {
  for (;;) {
    OrbitSignature s;
    s.N = std::uniform_int_distribution<int>(2, n_max)(rng);
    int m = std::uniform_int_distribution<int>(0, 3)(rng);
    std::vector<int> steps;
    for (int k = 2; k < s.N; ++k) steps.push_back(k);
    std::shuffle(steps.begin(), steps.end(), rng);
    if (int(steps.size()) < 2 * m) continue;
    steps.resize(2 * m);
    std::sort(steps.begin(), steps.end());
    for (int i = 0; i < m; ++i) {
      s.d_list.push_back(steps[2 * i]);
      s.u_list.push_back(steps[2 * i + 1]);
    }
    if (s.N >= 6 && rng() % 2) s.m_s = std::uniform_int_distribution<int>(1, s.N - 5)(rng);
    try {
      validate_signature(s);
      return s;
    } catch (const InconsistentSignature&) {
    }
  }
}

// Pullback on Pic(Z) in the basis {H, E1, S03, S01, E3, F_N, ..., F_1}.
inline PicAction picZ_matrix(const OrbitSignature& s) {
  validate_signature(s);
  int N = s.N, n = N + 5;
  PicAction p;
  p.labels = {"H", "E1", "S03", "S01", "E3"};
  for (int k = N; k >= 1; --k) p.labels.push_back("F" + std::to_string(k));
  // rows are 1-indexed below to follow the printed rules
  std::vector<std::vector<long>> R(n + 1, std::vector<long>(n + 1, 0));
  auto e = [&](int r, std::initializer_list<std::pair<int, long>> ent) {
    std::fill(R[r].begin(), R[r].end(), 0);
    for (auto [c, v] : ent) R[r][c] += v;
  };
  e(1, {{1, 2}, {3, 1}, {5, 1}, {n, 1}});
  e(2, {{1, -1}, {3, -1}, {n, -1}});
  e(3, {{2, 1}, {3, -1}});
  e(4, {{1, -1}, {3, -1}, {5, -1}});
  e(5, {{1, -1}, {3, -1}, {4, 1}, {5, -1}});
  e(6, {{1, -1}, {5, -1}, {n, -1}});
  for (int j = 1; j <= N - 1; ++j) e(j + 6, {{j + 5, 1}});
  for (int d : s.d_list) {
    int j = N - d;
    e(j + 6, {{j + 5, 1}, {n, -1}});
  }
  for (int u : s.u_list) {
    int j = N - u;
    e(j + 6, {{1, -1}, {5, -1}, {j + 5, 1}, {n, -1}});
  }
  if (s.m_s) {
    int j = N - *s.m_s;
    e(j + 2, {{1, -1}, {3, -1}, {j + 1, 1}, {n, -1}});
    e(j + 3, {{3, -1}, {j + 2, 1}});
    e(j + 4, {{1, -1}, {3, -1}, {5, -1}, {j + 3, 1}, {n, -1}});
    e(j + 5, {{1, -1}, {3, -1}, {5, -1}, {j + 4, 1}});
    e(j + 6, {{5, -1}, {j + 5, 1}});
  }
  p.M = IntMatrix(n, std::vector<mpz_class>(n, 0));
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) p.M[r - 1][c - 1] = R[r][c];
  return p;
}

// t^{N-1} [(Q1-Q4) t^3 + (2Q1-Q2-Q3-Q4) t^2 + (Q1-Q3) t + Q4]
inline IntPoly char_poly_bracket(const OrbitSignature& s) {
  using L = LaurentPoly;
  auto m = [](int e, long c = 1) { return L::monomial(e, c); };
  L sum_d, sum_u;
  for (int d : s.d_list) sum_d = sum_d + m(-d);
  for (int u : s.u_list) sum_u = sum_u + m(-u);
  L Q1 = m(0, -1) - sum_d, Q2, Q3 = m(0, -1) - sum_d, Q4 = m(1, -1) - m(1) * sum_d - m(1) * sum_u - m(1 - s.N);
  if (s.m_s) {
    int ms = *s.m_s;
    Q1 = Q1 + m(-ms - 1);
    Q2 = m(-ms - 1) + m(-ms - 2) + m(-ms - 3) + m(-ms - 4);
    Q3 = Q3 + m(-ms) + m(-ms - 1) - m(-ms - 4);
    Q4 = Q4 - m(-ms - 1) - m(-ms - 3);
  }
  L two = m(0, 2);
  L inner = (Q1 - Q4) * m(3) + (two * Q1 - Q2 - Q3 - Q4) * m(2) + (Q1 - Q3) * m(1) + Q4;
  return (m(s.N - 1) * inner).to_poly();
}

// det(t I - M)
inline IntPoly char_poly_det(const PicAction& p) { return charpoly(p.M); }

// det(tI - M) = ±(t^2+1) * bracket; returns the sign, or 0 if the identity fails
inline int identity_check(const OrbitSignature& s) {
  IntPoly lhs = char_poly_det(picZ_matrix(s));
  IntPoly rhs = IntPoly{1, 0, 1} * char_poly_bracket(s);
  if (lhs == rhs) return 1;
  if (lhs == -rhs) return -1;
  return 0;
}

struct DynamicalDegree {
  double value = 1;
  std::optional<AlgebraicReal> root;  // absent when every root has modulus <= 1
  IntPoly factor;                     // non-cyclotomic part carrying the root
  CyclotomicSplit split;
};

inline DynamicalDegree dynamical_degree(const IntPoly& p, double tol = 1e-12) {
  if (p.is_zero()) throw std::invalid_argument("dynamical_degree: zero polynomial");
  DynamicalDegree d;
  d.split = split_cyclotomic(p);
  d.factor = d.split.rest;
  if (d.factor.degree() <= 0) return d;
  auto r = largest_root_above(d.factor, mpq_class(1), tol);
  if (r && r->approx > 1) {
    d.root = r;
    d.value = r->approx;
  }
  return d;
}

enum class GrowthTag { Periodic, Bounded, Linear, Quadratic, Exponential };

inline const char* growth_name(GrowthTag t) {
  static const char* n[] = {"periodic", "bounded", "linear", "quadratic", "exponential"};
  return n[int(t)];
}

struct GrowthClass {
  GrowthTag tag = GrowthTag::Bounded;
  int order = 0;     // Periodic
  double delta = 1;  // Exponential
  std::vector<int> ranks_at_one;  // rank (M - I)^k, k = 1, 2, ...
  int jordan_at_one = 0;          // largest Jordan block at eigenvalue 1
  int jordan_max = 0;             // largest block over all roots of unity
};

namespace detail {

inline std::vector<int> power_ranks(const IntMatrix& A) {
  std::vector<int> r;
  IntMatrix P = A;
  int last = -1;
  for (int k = 1; k <= int(A.size()) + 1; ++k) {
    int rk = rank(P);
    r.push_back(rk);
    if (rk == last) break;
    last = rk;
    P = P * A;
  }
  return r;
}

// largest Jordan block at eigenvalue 0 of A, from the stabilizing ranks
inline int nilpotent_block(const std::vector<int>& ranks, int n) {
  int prev = n;
  for (size_t k = 0; k < ranks.size(); ++k) {
    if (ranks[k] == prev) return int(k);
    prev = ranks[k];
  }
  return int(ranks.size());
}

}  // namespace detail

inline GrowthClass growth_class(const PicAction& p, int order_cap = 1000) {
  GrowthClass g;
  int n = p.size();
  IntMatrix I = identity_matrix(n);
  g.ranks_at_one = detail::power_ranks(p.M - I);
  g.jordan_at_one = detail::nilpotent_block(g.ranks_at_one, n);
  IntPoly chi = charpoly(p.M);
  CyclotomicSplit sp = split_cyclotomic(chi);
  if (sp.rest.degree() > 0) {
    g.tag = GrowthTag::Exponential;
    g.delta = dynamical_degree(chi).value;
    return g;
  }
  long L = 1;
  for (auto [k, mult] : sp.factors) L = std::lcm(L, long(k));
  if (L > order_cap) {
    g.tag = GrowthTag::Bounded;
    return g;
  }
  IntMatrix ML = matrix_power(p.M, L);
  g.jordan_max = detail::nilpotent_block(detail::power_ranks(ML - I), n);
  if (g.jordan_max <= 1) {
    g.tag = GrowthTag::Periodic;
    for (long k = 1; k <= L; ++k)
      if (L % k == 0 && matrix_power(p.M, k) == I) {
        g.order = int(k);
        break;
      }
    return g;
  }
  if (g.jordan_max == 2) g.tag = GrowthTag::Linear;
  else if (g.jordan_max == 3) g.tag = GrowthTag::Quadratic;
  else throw std::logic_error("Jordan block larger than 3 at a root of unity");
  return g;
}

// deg f^n predicted as the H coefficient of M^n e_H
inline std::vector<mpz_class> predicted_degrees(const PicAction& p, int n_max) {
  if (p.labels.empty() || p.labels[0] != "H") throw std::invalid_argument("basis must start with H");
  std::vector<mpz_class> r;
  std::vector<mpz_class> v(p.size(), 0);
  v[0] = 1;
  for (int k = 1; k <= n_max; ++k) {
    std::vector<mpz_class> w(p.size(), 0);
    for (int i = 0; i < p.size(); ++i)
      for (int j = 0; j < p.size(); ++j) w[i] += p.M[i][j] * v[j];
    v = w;
    r.push_back(v[0]);
  }
  return r;
}

struct SalemVerdict {
  bool salem = false;
  double lambda = 0;
  std::string reason;
};

inline SalemVerdict salem_verdict(const IntPoly& p, double tol = 1e-9) {
  SalemVerdict v;
  DynamicalDegree d = dynamical_degree(p);
  if (!d.root) {
    v.reason = "no root of modulus > 1";
    return v;
  }
  v.lambda = d.value;
  const IntPoly& q = d.factor;
  if (q.degree() < 4) {
    v.reason = "degree " + std::to_string(q.degree()) + " < 4";
    return v;
  }
  if (!q.is_reciprocal()) {
    v.reason = "not self-reciprocal";
    return v;
  }
  int outside = 0, on_circle = 0;
  for (auto z : complex_roots(squarefree_part(q))) {
    long double m = std::abs(z);
    if (m > 1 + tol) ++outside;
    else if (std::fabs(double(m - 1)) <= tol) ++on_circle;
  }
  if (outside != 1) {
    v.reason = std::to_string(outside) + " roots outside the unit circle";
    return v;
  }
  if (on_circle == 0) {
    v.reason = "no conjugate on the unit circle";
    return v;
  }
  v.salem = true;
  return v;
}

}  // namespace lfm
