#pragma once

#include <gmpxx.h>

#include <complex>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfm {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

namespace detail {

// integer polynomial, coefficient i is the t^i coefficient
using ZPoly = std::vector<mpz_class>;

inline void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division by a monic polynomial
inline ZPoly zp_divexact(ZPoly a, const ZPoly& m) {
  zp_trim(a);
  int dm = int(m.size()) - 1;
  if (int(a.size()) - 1 < dm) return {};
  ZPoly q(a.size() - dm, 0);
  for (int i = int(a.size()) - 1; i >= dm; --i) {
    mpz_class c = a[i];
    q[i - dm] = c;
    if (c != 0)
      for (int k = 0; k <= dm; ++k) a[i - dm + k] -= c * m[k];
  }
  return q;
}

inline const ZPoly& cyclotomic(int n) {
  static std::map<int, ZPoly> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  ZPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = zp_divexact(p, cyclotomic(d));
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

inline int totient(int n) { return int(cyclotomic(n).size()) - 1; }

}  // namespace detail

// Element of Q(zeta_n) in the power basis 1, z, ..., z^{phi(n)-1}.
class CycNum {
 public:
  CycNum() : n_(1), c_(1) {}
  CycNum(long v) : n_(1), c_(1, mpq_class(v)) {}
  CycNum(int v) : CycNum(long(v)) {}
  CycNum(const mpq_class& q) : n_(1), c_(1, q) { c_[0].canonicalize(); }
  CycNum(const mpz_class& z) : n_(1), c_(1, mpq_class(z)) {}
  CycNum(int order, std::vector<mpq_class> coords) : n_(order), c_(std::move(coords)) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    reduce();
  }

  static CycNum rational(long p, long q = 1) {
    if (q == 0) throw DivisionByZero();
    mpq_class r(p, q);
    r.canonicalize();
    return CycNum(r);
  }
  // zeta_n^k
  static CycNum zeta(int n, long k = 1) {
    k %= n;
    if (k < 0) k += n;
    std::vector<mpq_class> v(k + 1, 0);
    v[k] = 1;
    return CycNum(n, std::move(v));
  }

  int order() const { return n_; }
  const std::vector<mpq_class>& coords() const { return c_; }
  int phi() const { return int(c_.size()); }

  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }
  const mpq_class& rational_part() const { return c_[0]; }

  // same element written in Q(zeta_m), n | m
  CycNum lift(int m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("lift: order does not divide target");
    int s = m / n_;
    std::vector<mpq_class> v(size_t((c_.size() - 1) * s + 1), 0);
    for (size_t k = 0; k < c_.size(); ++k) v[k * s] = c_[k];
    return CycNum(m, std::move(v));
  }

  // rational values drop back to order 1
  CycNum simplified() const { return is_rational() ? CycNum(c_[0]) : *this; }

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  CycNum& operator+=(const CycNum& o) {
    if (o.n_ == n_) {
      for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
      return *this;
    }
    int m = std::lcm(n_, o.n_);
    *this = lift(m);
    return *this += o.lift(m);
  }
  CycNum& operator-=(const CycNum& o) { return *this += -o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum& operator/=(const CycNum& o) { return *this = *this * o.inv(); }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.n_ != b.n_) {
      int m = std::lcm(a.n_, b.n_);
      return a.lift(m) * b.lift(m);
    }
    if (a.n_ <= 2) {
      CycNum r = a;
      r.c_[0] *= b.c_[0];
      return r;
    }
    size_t p = a.c_.size();
    std::vector<mpq_class> v(2 * p - 1, 0);
    for (size_t i = 0; i < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < p; ++j)
        if (b.c_[j] != 0) v[i + j] += a.c_[i] * b.c_[j];
    }
    return CycNum(a.n_, std::move(v));
  }

  CycNum inv() const {
    if (is_zero()) throw DivisionByZero();
    if (c_.size() == 1) {
      CycNum r = *this;
      r.c_[0] = 1 / c_[0];
      return r;
    }
    // solve (mult-by-this) * y = e0 over Q
    int p = phi();
    std::vector<std::vector<mpq_class>> M(p, std::vector<mpq_class>(p + 1, 0));
    for (int j = 0; j < p; ++j) {
      CycNum col = *this * zeta(n_, j);
      for (int i = 0; i < p; ++i) M[i][j] = col.c_[i];
    }
    M[0][p] = 1;
    for (int col = 0; col < p; ++col) {
      int piv = col;
      while (piv < p && M[piv][col] == 0) ++piv;
      std::swap(M[piv], M[col]);
      for (int r = 0; r < p; ++r) {
        if (r == col || M[r][col] == 0) continue;
        mpq_class f = M[r][col] / M[col][col];
        for (int k = col; k <= p; ++k) M[r][k] -= f * M[col][k];
      }
    }
    std::vector<mpq_class> y(p);
    for (int i = 0; i < p; ++i) y[i] = M[i][p] / M[i][i];
    return CycNum(n_, std::move(y));
  }

  CycNum pow(long e) const {
    if (e < 0) return inv().pow(-e);
    CycNum r = CycNum(1).lift(n_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // complex conjugate: z -> z^{-1}
  CycNum conj() const {
    CycNum r(0);
    for (size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) r += CycNum(c_[k]) * zeta(n_, -long(k));
    return r.lift(std::lcm(r.n_, n_));
  }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    int m = std::lcm(a.n_, b.n_);
    return a.lift(m).c_ == b.lift(m).c_;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  // embedding with zeta_n -> exp(2 pi i / n)
  std::complex<long double> embed() const {
    const long double tau = 6.283185307179586476925286766559L;
    std::complex<long double> s = 0;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      long double v = (long double)c_[k].get_d();
      if (abs(c_[k].get_num()) > mpz_class(1) << 50 || c_[k].get_den() > mpz_class(1) << 50)
        v = (long double)c_[k].get_num().get_d() / (long double)c_[k].get_den().get_d();
      s += v * std::polar(1.0L, tau * k / n_);
    }
    return s;
  }

  // common denominator encoding: coords = num / den
  void to_num_den(std::vector<mpz_class>& num, mpz_class& den) const {
    den = 1;
    for (auto& x : c_) den = lcm(den, mpz_class(x.get_den()));
    num.clear();
    for (auto& x : c_) num.push_back(x.get_num() * (den / x.get_den()));
  }

  std::string str() const {
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      std::string t = c_[k].get_str();
      if (!s.empty()) s += (t[0] == '-') ? " - " : " + ";
      else if (t[0] == '-') s += "-";
      if (t[0] == '-') t = t.substr(1);
      if (k == 0) s += t;
      else {
        if (t != "1") s += t + "*";
        s += "z" + std::to_string(n_);
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  int n_;
  std::vector<mpq_class> c_;

  void reduce() {
    const auto& P = detail::cyclotomic(n_);
    int p = int(P.size()) - 1;
    for (auto& x : c_) x.canonicalize();
    // fold powers >= n with z^n = 1 first
    if (int(c_.size()) > n_) {
      for (size_t k = n_; k < c_.size(); ++k) c_[k % n_] += c_[k];
      c_.resize(n_);
    }
    for (int i = int(c_.size()) - 1; i >= p; --i) {
      if (c_[i] == 0) continue;
      mpq_class f = c_[i];
      for (int k = 0; k <= p; ++k) c_[i - p + k] -= f * mpq_class(P[k]);
    }
    c_.resize(p, 0);
  }
};

inline std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.str(); }

}  // namespace lfm
