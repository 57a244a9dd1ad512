#pragma once

#include "cycnum.hpp"

#include <algorithm>
#include <complex>
#include <optional>

namespace lfm {

// Dense integer polynomial; coefficient i multiplies t^i.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::vector<mpz_class> c) : c_(std::move(c)) { trim(); }
  IntPoly(std::initializer_list<long> c) {
    for (long x : c) c_.emplace_back(x);
    trim();
  }
  static IntPoly monomial(int e, const mpz_class& c = 1) {
    std::vector<mpz_class> v(e + 1, 0);
    v[e] = c;
    return IntPoly(std::move(v));
  }
  static IntPoly cyclotomic(int n) { return IntPoly(detail::cyclotomic(n)); }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class operator[](int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : mpz_class(0); }
  mpz_class lead() const { return c_.empty() ? mpz_class(0) : c_.back(); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[int(i)] + b[int(i)];
    return IntPoly(std::move(r));
  }
  IntPoly operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != 0)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(r));
  }
  IntPoly scaled(const mpz_class& s) const {
    IntPoly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }
  IntPoly shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<mpz_class> r(k, 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return IntPoly(std::move(r));
  }
  IntPoly pow(int e) const {
    IntPoly r{1}, b = *this;
    for (; e; e >>= 1, b = b * b)
      if (e & 1) r = r * b;
    return r;
  }

  // exact quotient when the division is exact over Z
  std::optional<IntPoly> divide(const IntPoly& b) const {
    if (b.is_zero()) throw DivisionByZero();
    std::vector<mpz_class> r = c_;
    int db = b.degree();
    if (degree() < db) return is_zero() ? std::optional<IntPoly>(IntPoly()) : std::nullopt;
    std::vector<mpz_class> q(degree() - db + 1, 0);
    for (int i = degree(); i >= db; --i) {
      if (r[i] == 0) continue;
      if (!mpz_divisible_p(r[i].get_mpz_t(), b.lead().get_mpz_t())) return std::nullopt;
      mpz_class f = r[i] / b.lead();
      q[i - db] = f;
      for (int k = 0; k <= db; ++k) r[i - db + k] -= f * b.c_[k];
    }
    for (auto& x : r)
      if (x != 0) return std::nullopt;
    return IntPoly(std::move(q));
  }

  mpz_class content() const {
    mpz_class g = 0;
    for (auto& x : c_) g = gcd(g, x);
    return g;
  }
  // primitive with positive leading coefficient
  IntPoly primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (lead() < 0) g = -g;
    IntPoly r = *this;
    for (auto& x : r.c_) x /= g;
    return r;
  }
  IntPoly derivative() const {
    std::vector<mpz_class> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * long(i));
    return IntPoly(std::move(r));
  }
  IntPoly reversed() const {
    std::vector<mpz_class> r(c_.rbegin(), c_.rend());
    return IntPoly(std::move(r));
  }
  // strip factors of t
  IntPoly without_zero_roots(int* k = nullptr) const {
    size_t z = 0;
    while (z < c_.size() && c_[z] == 0) ++z;
    if (k) *k = int(z);
    return IntPoly(std::vector<mpz_class>(c_.begin() + z, c_.end()));
  }
  bool is_reciprocal() const {
    IntPoly p = without_zero_roots();
    IntPoly r = p.reversed();
    return p.c_ == r.c_ || p.c_ == (-r).c_;
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class s = 0;
    for (int i = degree(); i >= 0; --i) s = s * x + c_[i];
    return s;
  }
  int sign_at(const mpq_class& x) const { return sgn(eval(x)); }
  mpz_class eval(const mpz_class& x) const {
    mpz_class s = 0;
    for (int i = degree(); i >= 0; --i) s = s * x + c_[i];
    return s;
  }
  std::complex<long double> eval(std::complex<long double> x) const {
    std::complex<long double> s = 0;
    for (int i = degree(); i >= 0; --i) s = s * x + (long double)c_[i].get_d();
    return s;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  std::string str(const std::string& v = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      mpz_class a = abs(c_[i]);
      bool neg = c_[i] < 0;
      std::string term;
      if (i == 0) term = a.get_str();
      else {
        term = a == 1 ? "" : a.get_str() + "*";
        term += v + (i > 1 ? "^" + std::to_string(i) : "");
      }
      if (s.empty()) s = neg ? "-" + term : term;
      else s += (neg ? " - " : " + ") + term;
    }
    return s;
  }

 private:
  std::vector<mpz_class> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.str(); }

// remainder over Q, returned as a primitive-up-to-positive-scale integer polynomial
// (sign preserved, which Sturm chains need)
inline IntPoly rem_positive_scaled(const IntPoly& a, const IntPoly& b) {
  std::vector<mpq_class> r(a.coeffs().begin(), a.coeffs().end());
  int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    mpq_class f = r[i] / mpq_class(b.lead());
    for (int k = 0; k <= db; ++k) r[i - db + k] -= f * mpq_class(b[k]);
  }
  r.resize(std::max(0, db));
  mpz_class den = 1;
  for (auto& x : r) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> z;
  for (auto& x : r) z.push_back(x.get_num() * (den / x.get_den()));
  IntPoly p(std::move(z));
  mpz_class g = p.content();
  if (g == 0) return p;
  std::vector<mpz_class> c = p.coeffs();
  for (auto& x : c) x /= g;
  return IntPoly(std::move(c));
}

inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = a.primitive(), y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = rem_positive_scaled(x, y);
    x = y;
    y = r.primitive();
  }
  return x.primitive();
}

// quotient over Q, scaled to a primitive integer polynomial
inline IntPoly quo_primitive(const IntPoly& a, const IntPoly& b) {
  std::vector<mpq_class> r(a.coeffs().begin(), a.coeffs().end());
  int db = b.degree();
  std::vector<mpq_class> q(std::max(0, a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    mpq_class f = r[i] / mpq_class(b.lead());
    q[i - db] = f;
    for (int k = 0; k <= db; ++k) r[i - db + k] -= f * mpq_class(b[k]);
  }
  mpz_class den = 1;
  for (auto& x : q) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> z;
  for (auto& x : q) z.push_back(x.get_num() * (den / x.get_den()));
  return IntPoly(std::move(z)).primitive();
}

inline IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p.primitive();
  IntPoly g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p.primitive();
  return quo_primitive(p, g);
}

// Laurent polynomial: t^low * body
struct LaurentPoly {
  int low = 0;
  IntPoly body;

  static LaurentPoly monomial(int e, long c = 1) { return {e, IntPoly{c}}; }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.body.is_zero()) return b;
    if (b.body.is_zero()) return a;
    int lo = std::min(a.low, b.low);
    return normalized({lo, a.body.shifted(a.low - lo) + b.body.shifted(b.low - lo)});
  }
  LaurentPoly operator-() const { return {low, -body}; }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    return normalized({a.low + b.low, a.body * b.body});
  }
  static LaurentPoly normalized(LaurentPoly p) {
    int k = 0;
    p.body = p.body.without_zero_roots(&k);
    p.low += k;
    if (p.body.is_zero()) p.low = 0;
    return p;
  }
  // as an ordinary polynomial; requires low >= 0
  IntPoly to_poly() const {
    if (body.is_zero()) return {};
    if (low < 0) throw std::logic_error("negative powers remain");
    return body.shifted(low);
  }
};

struct CyclotomicSplit {
  std::vector<std::pair<int, int>> factors;  // (k, multiplicity) for Phi_k
  int zero_roots = 0;
  IntPoly rest;  // primitive, no cyclotomic factors, no root at 0
};

inline int euler_phi(int k) { return detail::totient(k); }

inline CyclotomicSplit split_cyclotomic(const IntPoly& p) {
  CyclotomicSplit s;
  IntPoly q = p.without_zero_roots(&s.zero_roots).primitive();
  int d = q.degree();
  for (int k = 1; d > 0 && k <= 2 * d * d + 2; ++k) {
    if (euler_phi(k) > q.degree()) continue;
    IntPoly ck = IntPoly::cyclotomic(k);
    int mult = 0;
    while (q.degree() >= ck.degree()) {
      auto r = q.divide(ck);
      if (!r) break;
      q = *r;
      ++mult;
    }
    if (mult) s.factors.push_back({k, mult});
  }
  s.rest = q.primitive();
  return s;
}

}  // namespace lfm
