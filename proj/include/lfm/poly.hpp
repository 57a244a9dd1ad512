#pragma once

#include "cycnum.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

namespace lfm {

// Exponent vectors packed 10 bits per variable, variable 0 in the top field,
// so numeric order on the key is lex order with x0 > x1 > ...
struct Mono {
  static constexpr int kMaxVars = 6;
  static constexpr int kBits = 10;
  static constexpr uint64_t kMask = (1u << kBits) - 1;

  static int get(uint64_t m, int i) { return int((m >> shift(i)) & kMask); }
  static uint64_t set(uint64_t m, int i, int e) {
    if (e < 0 || uint64_t(e) > kMask) throw std::overflow_error("exponent out of range");
    return (m & ~(kMask << shift(i))) | (uint64_t(e) << shift(i));
  }
  static uint64_t var(int i, int e = 1) { return set(0, i, e); }
  static uint64_t from(const std::vector<int>& e) {
    uint64_t m = 0;
    for (size_t i = 0; i < e.size(); ++i) m = set(m, int(i), e[i]);
    return m;
  }
  static int degree(uint64_t m) {
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += get(m, i);
    return d;
  }
  // no carry check here; callers keep degrees below 1024
  static uint64_t mul(uint64_t a, uint64_t b) { return a + b; }
  static bool divides(uint64_t a, uint64_t b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (get(a, i) > get(b, i)) return false;
    return true;
  }
  static int shift(int i) { return (kMaxVars - 1 - i) * kBits; }
};

class Poly {
 public:
  using Terms = std::map<uint64_t, CycNum>;

  Poly() : nv_(0) {}
  explicit Poly(int nvars) : nv_(nvars) {}
  Poly(int nvars, const CycNum& c) : nv_(nvars) {
    if (!c.is_zero()) t_[0] = c;
  }
  static Poly var(int nvars, int i) {
    Poly p(nvars);
    p.t_[Mono::var(i)] = CycNum(1);
    return p;
  }
  static Poly monomial(int nvars, uint64_t m, const CycNum& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.t_[m] = c;
    return p;
  }
  // linear form sum c_i x_i
  static Poly linear(const std::vector<CycNum>& c) {
    Poly p(int(c.size()));
    for (size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) p.t_[Mono::var(int(i))] = c[i];
    return p;
  }

  int nvars() const { return nv_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0); }
  CycNum constant_term() const {
    auto it = t_.find(0);
    return it == t_.end() ? CycNum(0) : it->second;
  }

  int degree() const {
    int d = -1;
    for (auto& [m, c] : t_) d = std::max(d, Mono::degree(m));
    return d;
  }
  int min_degree() const {
    int d = 1 << 30;
    for (auto& [m, c] : t_) d = std::min(d, Mono::degree(m));
    return t_.empty() ? -1 : d;
  }
  int degree_in(int i) const {
    int d = -1;
    for (auto& [m, c] : t_) d = std::max(d, Mono::get(m, i));
    return d;
  }
  int min_degree_in(int i) const {
    int d = 1 << 30;
    for (auto& [m, c] : t_) d = std::min(d, Mono::get(m, i));
    return t_.empty() ? -1 : d;
  }
  bool is_homogeneous() const {
    if (t_.empty()) return true;
    int d = Mono::degree(t_.begin()->first);
    for (auto& [m, c] : t_)
      if (Mono::degree(m) != d) return false;
    return true;
  }
  // leading term in lex order
  std::pair<uint64_t, CycNum> lead() const { return *t_.rbegin(); }
  CycNum coeff(uint64_t m) const {
    auto it = t_.find(m);
    return it == t_.end() ? CycNum(0) : it->second;
  }

  void add_term(uint64_t m, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.emplace(m, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    check(o);
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  Poly scaled(const CycNum& s) const {
    if (s.is_zero()) return Poly(nv_);
    Poly r = *this;
    for (auto& [m, c] : r.t_) c *= s;
    return r;
  }
  Poly shifted(uint64_t mono) const {
    Poly r(nv_);
    for (auto& [m, c] : t_) r.t_.emplace_hint(r.t_.end(), m + mono, c);
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    if (a.t_.empty() || b.t_.empty()) return Poly(a.nv_);
    if (b.t_.size() == 1) return a.shifted(b.t_.begin()->first).scaled(b.t_.begin()->second);
    if (a.t_.size() == 1) return b.shifted(a.t_.begin()->first).scaled(a.t_.begin()->second);
    std::unordered_map<uint64_t, CycNum> acc;
    acc.reserve(a.t_.size() * b.t_.size() / 2 + 8);
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) {
        auto [it, ins] = acc.try_emplace(ma + mb);
        if (ins) it->second = ca * cb;
        else it->second += ca * cb;
      }
    Poly r(a.nv_);
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.t_.emplace(m, std::move(c));
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(int e) const {
    Poly r(nv_, CycNum(1)), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  Poly derivative(int i) const {
    Poly r(nv_);
    for (auto& [m, c] : t_) {
      int e = Mono::get(m, i);
      if (e == 0) continue;
      r.t_.emplace(Mono::set(m, i, e - 1), c * CycNum(long(e)));
    }
    return r;
  }

  CycNum eval(const std::vector<CycNum>& x) const {
    CycNum s(0);
    for (auto& [m, c] : t_) {
      CycNum v = c;
      for (int i = 0; i < nv_; ++i) {
        int e = Mono::get(m, i);
        if (e) v *= x[i].pow(e);
      }
      s += v;
    }
    return s;
  }

  // substitute x_i := g[i]; g may live in a different number of variables
  Poly substitute(const std::vector<Poly>& g) const;

  // x_i := value, keeping the variable count
  Poly specialize(int i, const CycNum& v) const {
    Poly r(nv_);
    std::vector<CycNum> pw;
    for (auto& [m, c] : t_) {
      int e = Mono::get(m, i);
      while (int(pw.size()) <= e) pw.push_back(pw.empty() ? CycNum(1) : pw.back() * v);
      r.add_term(Mono::set(m, i, 0), c * pw[e]);
    }
    return r;
  }

  // coefficient of x_i^e as a polynomial in the remaining variables (same nvars)
  Poly coeff_in(int i, int e) const {
    Poly r(nv_);
    for (auto& [m, c] : t_)
      if (Mono::get(m, i) == e) r.t_.emplace(Mono::set(m, i, 0), c);
    return r;
  }

  // rename/reorder variables: new index of variable i is map[i]
  Poly remap(int new_nv, const std::vector<int>& map) const {
    Poly r(new_nv);
    for (auto& [m, c] : t_) {
      uint64_t k = 0;
      for (int i = 0; i < nv_; ++i) {
        int e = Mono::get(m, i);
        if (e) k = Mono::set(k, map[i], Mono::get(k, map[i]) + e);
      }
      r.add_term(k, c);
    }
    return r;
  }

  // exact division; nullopt if b does not divide *this
  std::optional<Poly> divide(const Poly& b) const {
    check(b);
    if (b.is_zero()) throw DivisionByZero();
    Poly r = *this, q(nv_);
    auto [lm, lc] = b.lead();
    CycNum lci = lc.inv();
    while (!r.is_zero()) {
      auto [rm, rc] = r.lead();
      if (!Mono::divides(lm, rm)) return std::nullopt;
      uint64_t qm = rm - lm;
      CycNum qc = rc * lci;
      q.t_.emplace(qm, qc);
      for (auto& [m, c] : b.t_) r.add_term(m + qm, -(c * qc));
    }
    return q;
  }

  // multiply so that the lex-leading coefficient is 1
  Poly monic() const {
    if (t_.empty()) return *this;
    return scaled(lead().second.inv());
  }

  int field_order() const {
    int n = 1;
    for (auto& [m, c] : t_) n = std::lcm(n, c.order());
    return n;
  }
  Poly lifted(int n) const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = c.lift(std::lcm(n, c.order()));
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto i = a.t_.begin();
    auto j = b.t_.begin();
    for (; i != a.t_.end(); ++i, ++j)
      if (i->first != j->first || i->second != j->second) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      auto& [m, c] = *it;
      std::string cs = c.str();
      bool compound = cs.find_first_of("+z", 1) != std::string::npos || cs.find(" - ") != std::string::npos;
      std::string mono;
      for (int i = 0; i < nv_; ++i) {
        int e = Mono::get(m, i);
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += i < int(names.size()) ? names[i] : "x" + std::to_string(i);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string term;
      if (mono.empty()) term = compound ? "(" + cs + ")" : cs;
      else if (cs == "1") term = mono;
      else if (cs == "-1") term = "-" + mono;
      else term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
      if (s.empty()) s = term;
      else if (term[0] == '-') s += " - " + term.substr(1);
      else s += " + " + term;
    }
    return s;
  }

 private:
  int nv_;
  Terms t_;

  void check(const Poly& o) const {
    if (o.nv_ != nv_) throw std::invalid_argument("polynomial variable counts differ");
  }
};

inline std::vector<uint64_t> monomials_of_degree(int nv, int d) {
  std::vector<uint64_t> out;
  std::function<void(int, int, uint64_t)> gen = [&](int i, int left, uint64_t m) {
    if (i == nv - 1) {
      out.push_back(Mono::set(m, i, left));
      return;
    }
    for (int e = left; e >= 0; --e) gen(i + 1, left - e, Mono::set(m, i, e));
  };
  gen(0, d, 0);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

inline Poly Poly::substitute(const std::vector<Poly>& g) const {
  if (int(g.size()) != nv_) throw std::invalid_argument("substitute: arity mismatch");
  int out = g.empty() ? 0 : g[0].nvars();
  // Horner in x0, recursing on the remaining variables; powers of g[i] cached
  std::vector<std::vector<Poly>> pw(nv_);
  auto power = [&](int i, int e) -> const Poly& {
    auto& v = pw[i];
    if (v.empty()) v.push_back(Poly(out, CycNum(1)));
    while (int(v.size()) <= e) v.push_back(v.back() * g[i]);
    return v[e];
  };
  std::function<Poly(const Poly&, int)> rec = [&](const Poly& p, int i) -> Poly {
    if (p.is_zero()) return Poly(out);
    if (i == nv_) return Poly(out, p.constant_term());
    // split by exponent of x_i
    std::map<int, Poly> parts;
    for (auto& [m, c] : p.t_) {
      auto& q = parts.try_emplace(Mono::get(m, i), Poly(p.nv_)).first->second;
      q.t_.emplace(Mono::set(m, i, 0), c);
    }
    Poly r(out);
    int prev = -1;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      if (prev >= 0) r = r * power(i, prev - it->first);
      r += rec(it->second, i + 1);
      prev = it->first;
    }
    if (prev > 0) r = r * power(i, prev);
    return r;
  };
  return rec(*this, 0);
}

}  // namespace lfm
