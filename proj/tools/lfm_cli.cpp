#include <lfm/criteria.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace lfm;

namespace {

struct Options {
  std::string params, ledger, a;
  bool json_out = false, text_out = false, timing = false, complete = false;
  int nmax = 12, pmax = 16, precision = 12, degree = 4;
  uint64_t seed = 17;
  std::string method = "symbolic";
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json poly_json(const IntPoly& p) {
  json c = json::array();
  for (auto& x : p.coeffs()) c.push_back(x.get_str());
  return {{"coeffs_ascending", c}, {"text", p.str()}};
}

json degree_json(const DynamicalDegree& d, double tol) {
  json j = {{"value", d.value}, {"tolerance", tol}, {"factor", poly_json(d.factor)}};
  if (d.root) j["interval"] = {d.root->lo.get_str(), d.root->hi.get_str()};
  else j["interval"] = {"1", "1"};
  return j;
}

json growth_json(const GrowthClass& g) {
  json j = {{"class", growth_name(g.tag)}, {"jordan_at_one", g.jordan_at_one}, {"jordan_max", g.jordan_max}};
  if (g.tag == GrowthTag::Periodic) j["order"] = g.order;
  if (g.tag == GrowthTag::Exponential) j["delta"] = {{"value", g.delta}, {"tolerance", 1e-9}};
  return j;
}

json signature_json(const OrbitSignature& s) {
  return {{"N", s.N},
          {"d", s.d_list},
          {"u", s.u_list},
          {"m", s.m()},
          {"m_s", s.m_s ? json(*s.m_s) : json(nullptr)},
          {"whole_fiber", s.whole_fiber}};
}

json matrix_json(const IntMatrix& M) {
  json rows = json::array();
  for (auto& r : M) {
    json row = json::array();
    for (auto& x : r) row.push_back(x.get_si());
    rows.push_back(row);
  }
  return rows;
}

MapParameters load_params(const Options& o) {
  if (o.params.empty()) throw UsageError("--params is required");
  return params_from_json(read_json_file(o.params));
}

double tolerance(const Options& o) { return std::pow(10.0, -o.precision); }

json cmd_signature(const Options& o) {
  auto p = load_params(o);
  return {{"signature", signature_json(gamma_orbit_signature(p, 64))}};
}

json cmd_charpoly(const Options& o) {
  auto s = gamma_orbit_signature(load_params(o), 64);
  IntPoly bracket = char_poly_bracket(s), full = char_poly_det(picZ_matrix(s));
  return {{"bracket", poly_json(bracket)},
          {"charpoly", poly_json(full)},
          {"identity_sign", identity_check(s)},
          {"dynamical_degree", degree_json(dynamical_degree(full, tolerance(o)), tolerance(o))}};
}

json cmd_degrees(const Options& o) {
  auto p = load_params(o);
  auto f = build_family_map(p);
  auto seq = o.method == "line" ? line_degrees(f, o.nmax, o.seed) : iterate_degrees(f, o.nmax);
  json j = {{"method", o.method}, {"degrees", seq.degrees}, {"truncated", seq.truncated}};
  if (is_critical(classify_parameters(p).normalized)) {
    try {
      auto pred = predicted_degrees(picZ_matrix(gamma_orbit_signature(p, 64)), o.nmax);
      json pj = json::array();
      for (auto& x : pred) pj.push_back(x.get_str());
      j["predicted"] = pj;
    } catch (const NonClosing&) {
      j["predicted"] = nullptr;
    }
  }
  return j;
}

json cmd_period(const Options& o) {
  auto per = period_of(build_family_map(load_params(o)), o.pmax);
  return {{"period", per ? json(*per) : json(nullptr)}, {"pmax", o.pmax}};
}

json cmd_invariants(const Options& o) {
  auto f = build_family_map(load_params(o));
  json hits = json::array();
  for (auto& h : scan_multipliers(f, o.degree)) {
    json basis = json::array();
    for (auto& P : invariant_space(f, o.degree, h.t)) basis.push_back(to_json(P));
    hits.push_back({{"t", to_json(h.t)}, {"t_text", h.t.str()}, {"dimension", h.dimension}, {"basis", basis}});
  }
  return {{"degree", o.degree}, {"multipliers", hits}};
}

json rotor_json(const BirationalMap& g, const PlaneLedger& L, const Options& o) {
  auto pic = plane_pic_matrix(g, L, o.seed);
  auto w = stability_witness(g, L, 12, o.seed);
  IntPoly cp = char_poly_det(pic.action);
  auto gc = growth_class(pic.action);
  auto sv = salem_verdict(cp);
  std::optional<double> th;
  if (gc.tag == GrowthTag::Exponential) th = invariant_class(pic.action).self_intersection;
  auto v = automorphism_verdict(gc, sv, th);
  json orbits = json::array();
  for (auto& e : w.exceptional)
    orbits.push_back({{"source", e.source}, {"image", to_string(e.image)}, {"end", orbit_end_name(e.orbit.end)}});
  json j = {{"labels", pic.action.labels},
            {"matrix", matrix_json(pic.action.M)},
            {"charpoly", poly_json(cp)},
            {"stable", w.stable},
            {"exceptional_orbits", orbits},
            {"growth", growth_json(gc)},
            {"dynamical_degree", degree_json(dynamical_degree(cp, tolerance(o)), tolerance(o))},
            {"salem", sv.salem},
            {"verdict", v.possible ? "possible" : "not-conjugate"},
            {"reasons", v.reasons}};
  if (th) j["theta_squared"] = {{"value", *th}, {"tolerance", 1e-9}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json cmd_rotor(const Options& o) {
  if (o.ledger.empty() == o.a.empty()) throw UsageError("rotor needs exactly one of --ledger or --a");
  json out;
  if (!o.ledger.empty()) {
    json j = read_json_file(o.ledger);
    CycNum a = cycnum_from_json(j.at("a"));
    auto g = rotor_plane_map(a);
    out["a"] = a.str();
    for (auto key : {"recipe", "stable"})
      if (j.contains(key)) out[key] = rotor_json(g, ledger_from_json(j[key]).ledger, o);
    return out;
  }
  json aj;
  try {
    aj = json::parse(o.a);
  } catch (const json::parse_error&) {
    aj = o.a;
  }
  CycNum a = cycnum_from_json(aj);
  auto g = rotor_plane_map(a);
  PlaneLedger L;
  L.curves = rotor_exceptional_curves(a);
  L.points = {plane_point({CycNum(0), CycNum(1), CycNum(0)})};
  L.labels = {"E1"};
  out["a"] = a.str();
  out["degree"] = g.degree();
  out["e1_only"] = rotor_json(g, L, o);
  if (o.complete) {
    auto S = complete_ledger(g, L, 8, 12, o.seed);
    out["completed"] = rotor_json(g, S, o);
    out["completed"]["ledger"] = ledger_to_json(S, {});
  }
  return out;
}

json cmd_analyze(const Options& o) {
  auto p = load_params(o);
  json r = {{"parameters", to_json(p)}};
  auto cls = classify_parameters(p);
  r["classification"] = {{"critical", cls.critical}, {"lemma", cls.lemma}};
  if (!cls.critical) {
    r["classification"]["normalized"] = to_json(cls.normalized);
    return r;
  }
  r["classification"]["normalized"] = to_json(cls.normalized);
  auto s = gamma_orbit_signature(p, 64);
  r["signature"] = signature_json(s);
  auto pic = picZ_matrix(s);
  IntPoly bracket = char_poly_bracket(s), full = char_poly_det(pic);
  r["bracket"] = poly_json(bracket);
  r["charpoly"] = poly_json(full);
  r["dynamical_degree"] = degree_json(dynamical_degree(full, tolerance(o)), tolerance(o));
  auto gc = growth_class(pic);
  r["growth"] = growth_json(gc);
  auto f = build_family_map(p);
  std::optional<int> per;
  if (gc.tag == GrowthTag::Periodic) per = period_of(f, o.pmax);
  r["period"] = per ? json(*per) : json(nullptr);
  json inv = json::array();
  for (auto& h : scan_multipliers(f, o.degree))
    inv.push_back({{"t", to_json(h.t)}, {"t_text", h.t.str()}, {"dimension", h.dimension}});
  r["invariants"] = {{"degree", o.degree}, {"multipliers", inv}};
  // the rotor verdict applies to alpha = (a, 0, w, 1), beta = (0, 1, 0, 0)
  const auto& al = p.alpha;
  const auto& be = p.beta;
  CycNum w = CycNum::zeta(3);
  bool rotor_family = al[1].is_zero() && al[2] == w && al[3] == CycNum(1) && be[0].is_zero() &&
                      be[1] == CycNum(1) && be[2].is_zero() && be[3].is_zero() && !al[0].is_zero();
  if (rotor_family) {
    try {
      auto g = rotor_plane_map(al[0]);
      PlaneLedger L;
      L.curves = rotor_exceptional_curves(al[0]);
      L.points = {plane_point({CycNum(0), CycNum(1), CycNum(0)})};
      L.labels = {"E1"};
      r["rotor"] = rotor_json(g, complete_ledger(g, L, 8, 12, o.seed), o);
    } catch (const PlaneUnsupported& e) {
      r["rotor"] = {{"error", e.what()}};
    }
  } else {
    r["rotor"] = nullptr;
  }
  return r;
}

std::string fmt_double(double x, int precision) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

void print_text(const std::string& cmd, const json& r, const Options& o) {
  auto& out = std::cout;
  if (cmd == "period") {
    out << (r["period"].is_null() ? "none" : std::to_string(r["period"].get<int>())) << "\n";
    return;
  }
  if (cmd == "degrees") {
    out << "degrees:";
    for (auto& d : r["degrees"]) out << " " << d.get<int>();
    out << "\n";
    if (r.contains("predicted") && !r["predicted"].is_null()) {
      out << "predicted:";
      for (auto& d : r["predicted"]) out << " " << d.get<std::string>();
      out << "\n";
    }
    return;
  }
  auto sig = [&](const json& s) {
    out << "signature: N=" << s["N"] << " m=" << s["m"] << " m_s=" << (s["m_s"].is_null() ? "inf" : s["m_s"].dump())
        << " d=" << s["d"].dump() << " u=" << s["u"].dump() << "\n";
  };
  auto deg = [&](const json& d) {
    out << "dynamical degree: " << fmt_double(d["value"].get<double>(), o.precision) << " in ["
        << d["interval"][0].get<std::string>() << ", " << d["interval"][1].get<std::string>() << "]\n";
  };
  if (cmd == "signature") return sig(r["signature"]);
  if (cmd == "charpoly") {
    out << "bracket: " << r["bracket"]["text"].get<std::string>() << "\n";
    out << "charpoly: " << r["charpoly"]["text"].get<std::string>() << "\n";
    return deg(r["dynamical_degree"]);
  }
  if (cmd == "invariants") {
    for (auto& h : r["multipliers"])
      out << "t = " << h["t_text"].get<std::string>() << ": dimension " << h["dimension"] << "\n";
    if (r["multipliers"].empty()) out << "no invariant forms of degree " << r["degree"] << "\n";
    return;
  }
  auto rotor = [&](const std::string& name, const json& x) {
    out << name << ": charpoly " << x["charpoly"]["text"].get<std::string>() << ", growth "
        << x["growth"]["class"].get<std::string>() << ", " << (x["stable"].get<bool>() ? "stable" : "not stable")
        << ", verdict " << x["verdict"].get<std::string>() << "\n";
    for (auto& why : x["reasons"]) out << "  " << why.get<std::string>() << "\n";
  };
  if (cmd == "rotor") {
    out << "a = " << r["a"].get<std::string>() << "\n";
    for (auto key : {"recipe", "stable", "e1_only", "completed"})
      if (r.contains(key)) rotor(key, r[key]);
    return;
  }
  if (cmd == "analyze") {
    out << "critical: " << (r["classification"]["critical"].get<bool>() ? "yes" : "no");
    if (!r["classification"]["lemma"].get<std::string>().empty())
      out << " (" << r["classification"]["lemma"].get<std::string>() << ")";
    out << "\n";
    if (!r.contains("signature")) return;
    sig(r["signature"]);
    out << "bracket: " << r["bracket"]["text"].get<std::string>() << "\n";
    out << "charpoly: " << r["charpoly"]["text"].get<std::string>() << "\n";
    deg(r["dynamical_degree"]);
    out << "growth: " << r["growth"]["class"].get<std::string>() << "\n";
    if (!r["period"].is_null()) out << "period: " << r["period"] << "\n";
    for (auto& h : r["invariants"]["multipliers"])
      out << "invariant quartics at t = " << h["t_text"].get<std::string>() << ": dimension " << h["dimension"] << "\n";
    if (!r["rotor"].is_null() && r["rotor"].contains("verdict")) rotor("rotor", r["rotor"]);
    return;
  }
}

int cmd_selftest(const Options& o, const std::string& data) {
  int failed = 0;
  json results = json::array();
  auto checks = acceptance_criteria(data);
  for (auto& c : reference_examples(data)) checks.push_back(c);
  for (auto& run : checks) {
    CheckResult c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    failed += !c.pass;
    if (o.json_out)
      results.push_back({{"id", c.id},
                         {"title", c.title},
                         {"pass", c.pass},
                         {"known_deviation", c.known_deviation},
                         {"detail", c.detail}});
    else
      std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": " << c.detail
                << (!c.pass && c.known_deviation ? " [known deviation]" : "") << "\n";
  }
  if (o.json_out) std::cout << json{{"schema", 1}, {"command", "selftest"}, {"results", results}}.dump(2) << "\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of a family of linear fractional maps of 3-space"};
  app.require_subcommand(1);
  Options o;
  std::string data = LFM_DATA_DIR;
  app.add_option("--data", data, "Fixture directory");

  auto common = [&](CLI::App* c, bool params) {
    if (params) c->add_option("--params", o.params, "Parameter file (JSON)")->required();
    auto* j = c->add_flag("--json", o.json_out, "Emit the JSON report");
    c->add_flag("--text", o.text_out, "Emit a human summary (default)")->excludes(j);
    c->add_flag("--timing", o.timing, "Add wall-clock timing to the report");
    c->add_option("--precision", o.precision, "Decimal digits for root isolation and display")
        ->check(CLI::Range(1, 30));
    c->add_option("--seed", o.seed, "Seed for random lines and sample points");
  };

  auto* analyze = app.add_subcommand("analyze", "Full pipeline on a parameter file");
  common(analyze, true);
  analyze->add_option("--pmax", o.pmax, "Largest period tried")->check(CLI::Range(1, 64));
  analyze->add_option("--degree", o.degree, "Degree of invariant forms")->check(CLI::Range(1, 6));
  auto* degrees = app.add_subcommand("degrees", "deg f^n for n = 1..nmax");
  common(degrees, true);
  degrees->add_option("--nmax", o.nmax, "Number of iterates")->check(CLI::Range(1, 40));
  degrees->add_option("--method", o.method, "symbolic or line")->check(CLI::IsMember({"symbolic", "line"}));
  auto* signature = app.add_subcommand("signature", "Orbit signature of the exceptional surface");
  common(signature, true);
  auto* charpoly = app.add_subcommand("charpoly", "Bracket and full characteristic polynomials");
  common(charpoly, true);
  auto* period = app.add_subcommand("period", "Least period of f, if at most pmax");
  common(period, true);
  period->add_option("--pmax", o.pmax, "Largest period tried")->check(CLI::Range(1, 64));
  auto* invariants = app.add_subcommand("invariants", "Forms P with P∘f = t·j_f·P");
  common(invariants, true);
  invariants->add_option("--degree", o.degree, "Degree of invariant forms")->check(CLI::Range(1, 6));
  auto* rotor = app.add_subcommand("rotor", "Rotor map on the invariant plane");
  common(rotor, false);
  rotor->add_option("--ledger", o.ledger, "Rotor fixture with declared ledgers");
  rotor->add_option("--a", o.a, "Parameter a (integer, \"p/q\" or {order, coords} JSON)");
  rotor->add_flag("--complete", o.complete, "Follow exceptional orbits and blow up until stable");
  auto* selftest = app.add_subcommand("selftest", "Run the fixture suite");
  selftest->add_flag("--json", o.json_out, "Emit JSON results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string cmd = app.get_subcommands()[0]->get_name();
  try {
    if (cmd == "selftest") return cmd_selftest(o, data);
    auto t0 = std::chrono::steady_clock::now();
    json r;
    if (cmd == "analyze") r = cmd_analyze(o);
    else if (cmd == "degrees") r = cmd_degrees(o);
    else if (cmd == "signature") r = cmd_signature(o);
    else if (cmd == "charpoly") r = cmd_charpoly(o);
    else if (cmd == "period") r = cmd_period(o);
    else if (cmd == "invariants") r = cmd_invariants(o);
    else if (cmd == "rotor") r = cmd_rotor(o);
    if (o.timing) r["timing_seconds"] = detail::seconds_since(t0);
    if (o.json_out) {
      r["schema"] = 1;
      r["command"] = cmd;
      std::cout << r.dump(2) << "\n";
    } else {
      print_text(cmd, r, o);
      if (o.timing) std::cout << "time: " << r["timing_seconds"].get<double>() << " s\n";
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "analysis failed: " << e.what() << "\n";
    return 1;
  }
}
