#pragma once

#include "poly.hpp"

namespace lfm {

// Dense univariate polynomial over Q(zeta_n); coefficient i multiplies t^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<CycNum> c) : c_(std::move(c)) { trim(); }
  UPoly(const CycNum& c) : c_{c} { trim(); }
  static UPoly x() { return UPoly({CycNum(0), CycNum(1)}); }

  // from a Poly in which only variable v occurs
  static UPoly from_poly(const Poly& p, int v) {
    std::vector<CycNum> c(std::max(0, p.degree_in(v) + 1));
    for (auto& [m, k] : p.terms()) c[Mono::get(m, v)] += k;
    return UPoly(std::move(c));
  }
  Poly to_poly(int nvars, int v) const {
    Poly p(nvars);
    for (size_t i = 0; i < c_.size(); ++i) p.add_term(Mono::var(v, int(i)), c_[i]);
    return p;
  }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<CycNum>& coeffs() const { return c_; }
  CycNum operator[](int i) const { return i < int(c_.size()) && i >= 0 ? c_[i] : CycNum(0); }
  CycNum lead() const { return c_.empty() ? CycNum(0) : c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<CycNum> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[int(i)] + b[int(i)];
    return UPoly(std::move(r));
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<CycNum> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly scaled(const CycNum& s) const {
    UPoly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }
  UPoly monic() const { return is_zero() ? *this : scaled(lead().inv()); }

  void divmod(const UPoly& b, UPoly& q, UPoly& r) const {
    if (b.is_zero()) throw DivisionByZero();
    std::vector<CycNum> rr = c_;
    int db = b.degree();
    CycNum li = b.lead().inv();
    std::vector<CycNum> qq(std::max(0, degree() - db + 1));
    for (int i = degree(); i >= db; --i) {
      if (rr[i].is_zero()) continue;
      CycNum f = rr[i] * li;
      qq[i - db] = f;
      for (int k = 0; k <= db; ++k) rr[i - db + k] -= f * b.c_[k];
    }
    q = UPoly(std::move(qq));
    r = UPoly(std::move(rr));
  }
  friend UPoly operator%(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    a.divmod(b, q, r);
    return r;
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    a.divmod(b, q, r);
    return q;
  }

  UPoly derivative() const {
    std::vector<CycNum> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * CycNum(long(i)));
    return UPoly(std::move(r));
  }
  CycNum eval(const CycNum& x) const {
    CycNum s(0);
    for (int i = degree(); i >= 0; --i) s = s * x + c_[i];
    return s;
  }
  UPoly compose(const UPoly& g) const {
    UPoly s;
    for (int i = degree(); i >= 0; --i) s = s * g + UPoly(c_[i]);
    return s;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  std::string str(const std::string& v = "t") const {
    Poly p = to_poly(1, 0);
    return p.str({v});
  }

 private:
  std::vector<CycNum> c_;
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

inline UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

}  // namespace lfm
