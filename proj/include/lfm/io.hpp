#pragma once

#include "planar.hpp"

#include <fstream>
#include <json.hpp>

namespace lfm {

using json = nlohmann::json;

struct FormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// CycNum as {"order": n, "coords": ["p/q", ...]} in the power basis of zeta_n; rationals as "p/q".
// Integers are accepted on input.
inline json to_json(const CycNum& c) {
  if (c.is_rational()) return c.rational_part().get_str();
  json coords = json::array();
  for (auto& q : c.coords()) coords.push_back(q.get_str());
  return {{"order", c.order()}, {"coords", coords}};
}

inline mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw FormatError("expected an integer or a \"p/q\" string");
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0) throw FormatError("bad rational " + j.get<std::string>());
  q.canonicalize();
  return q;
}

inline CycNum cycnum_from_json(const json& j) {
  if (!j.is_object()) return CycNum(rational_from_json(j));
  if (!j.contains("order") || !j.contains("coords")) throw FormatError("cyclotomic number needs order and coords");
  int n = j["order"].get<int>();
  if (n < 1) throw FormatError("order must be positive");
  std::vector<mpq_class> c;
  for (auto& x : j["coords"]) c.push_back(rational_from_json(x));
  if (int(c.size()) > detail::totient(n)) throw FormatError("too many coords for the order");
  c.resize(detail::totient(n), 0);
  return CycNum(n, std::move(c));
}

inline json to_json(const Vec4& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Vec4 vec4_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw FormatError("expected 4 coefficients");
  return {cycnum_from_json(j[0]), cycnum_from_json(j[1]), cycnum_from_json(j[2]), cycnum_from_json(j[3])};
}

// {"alpha": [4], "beta": [4]}
inline json to_json(const MapParameters& p) { return {{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}}; }

inline MapParameters params_from_json(const json& j) {
  if (!j.contains("alpha") || !j.contains("beta")) throw FormatError("parameters need alpha and beta");
  MapParameters p(vec4_from_json(j["alpha"]), vec4_from_json(j["beta"]));
  if (auto d = p.degeneracy(); !d.empty()) throw FormatError("degenerate parameters: " + d);
  return p;
}

// Poly as a list of [[exponents], coefficient]
inline json to_json(const Poly& p) {
  json a = json::array();
  for (auto& [m, c] : p.terms()) {
    json e = json::array();
    for (int i = 0; i < p.nvars(); ++i) e.push_back(Mono::get(m, i));
    a.push_back({e, to_json(c)});
  }
  return a;
}

inline Poly poly_from_json(const json& j, int nv) {
  Poly p(nv);
  for (auto& t : j) {
    if (!t.is_array() || t.size() != 2 || t[0].size() != size_t(nv)) throw FormatError("bad polynomial term");
    try {
      p.add_term(Mono::from(t[0].get<std::vector<int>>()), cycnum_from_json(t[1]));
    } catch (const std::overflow_error& e) {
      throw FormatError(e.what());
    }
  }
  return p;
}

// {"p": [3 coords], "slopes": [c or "inf", ...], "label": ...}
inline json to_json(const PlanePoint& q, const std::string& label = "") {
  json s = json::array();
  for (auto& m : q.slopes) s.push_back(m.inf ? json("inf") : to_json(m.v));
  json p = json::array();
  for (auto& x : q.p) p.push_back(to_json(x));
  json r = {{"p", p}, {"slopes", s}};
  if (!label.empty()) r["label"] = label;
  return r;
}

inline PlanePoint plane_point_from_json(const json& j) {
  if (!j.contains("p") || j["p"].size() != 3) throw FormatError("plane point needs 3 coordinates");
  Vec3 v{cycnum_from_json(j["p"][0]), cycnum_from_json(j["p"][1]), cycnum_from_json(j["p"][2])};
  if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) throw FormatError("zero plane point");
  std::vector<Slope> s;
  if (j.contains("slopes"))
    for (auto& m : j["slopes"]) {
      if (m.is_string() && m.get<std::string>() == "inf") s.push_back(Slope{true, CycNum(0)});
      else s.push_back(Slope{false, cycnum_from_json(m)});
    }
  return plane_point(v, std::move(s));
}

// A ledger with its pullback rules: for each blown-up class, the curves in its pullback.
struct LedgerFile {
  PlaneLedger ledger;
  std::vector<std::vector<std::pair<std::string, int>>> rules;
};

inline json ledger_to_json(const PlaneLedger& L, const std::vector<std::vector<std::pair<std::string, int>>>& rules) {
  json pts = json::array(), cs = json::array(), rs = json::array();
  for (size_t i = 0; i < L.points.size(); ++i) pts.push_back(to_json(L.points[i], L.labels[i]));
  for (auto& c : L.curves) cs.push_back(to_json(c));
  for (size_t i = 0; i < rules.size(); ++i) {
    json terms = json::array();
    for (auto& [n, m] : rules[i]) terms.push_back({n, m});
    rs.push_back({{"class", L.labels[i]}, {"pullback", terms}});
  }
  return {{"points", pts}, {"curves", cs}, {"rules", rs}};
}

inline LedgerFile ledger_from_json(const json& j) {
  LedgerFile f;
  for (auto& c : j.at("curves")) f.ledger.curves.push_back(poly_from_json(c, 3));
  for (auto& p : j.at("points")) {
    f.ledger.points.push_back(plane_point_from_json(p));
    f.ledger.labels.push_back(p.value("label", "E" + std::to_string(f.ledger.points.size())));
  }
  if (j.contains("rules"))
    for (auto& r : j["rules"]) {
      std::vector<std::pair<std::string, int>> terms;
      for (auto& t : r.at("pullback")) terms.push_back({t[0].get<std::string>(), t[1].get<int>()});
      f.rules.push_back(terms);
    }
  try {
    f.ledger.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return f;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace lfm
