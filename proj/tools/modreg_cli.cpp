// Command-line front end: units/divisors, triangulations, cocycle export,
// regulator integrals, L-values, and the verification harness.

#include "CLI11.hpp"
#include "json.hpp"

#include "modreg/json_io.hpp"
#include "modreg/regulator.hpp"

#include <fstream>
#include <iostream>

using namespace modreg;
using mpfield::Real;
using nlohmann::json;

namespace {

std::vector<long> parse_quad(const std::string& s) {
  std::vector<long> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::stol(cur));
  return out;
}

wedge::Group make_group(long N, const std::string& name) {
  if (name == "torus" || name == "full") return wedge::group_full(N);
  return wedge::group_gamma1(N);
}

long digits_to_prec(long digits) { return std::max<long>(192, (long)(digits * 3.33) + 64); }

std::string real_str(const Real& x, long digits) { return x.str((size_t)digits + 5); }

int cmd_units(long N, const std::string& quad) {
  auto q = parse_quad(quad);
  if (q.size() != 4) throw std::invalid_argument("--quad expects a,b,c,d");
  auto u = units::make_cross_ratio(
      N, {std::pair<long, long>{0, q[0]}, {0, q[1]}, {0, q[2]}, {0, q[3]}});
  units::UnitExpr v = units::cross_ratio_as_units(u);
  std::string name = "u1(" + quad + ")";
  std::cout << json_io::divisor_to_json(N, name, v) << "\n";
  return 0;
}

int cmd_triangulate(long N, const std::string& group, long a2, long b2) {
  wedge::Group G = make_group(N, group);
  wedge::TriangulationVerifier ver(G);
  bool all_ok = true;
  json out;
  out["N"] = N;
  out["group"] = group;
  json checks = json::array();
  auto run = [&](std::pair<long, long> a, std::pair<long, long> b) {
    bool ok = ver.verify(a, b);
    all_ok = all_ok && ok;
    checks.push_back({{"a", {a.first, a.second}}, {"b", {b.first, b.second}}, {"exact", ok}});
  };
  if (a2 >= 0 && b2 >= 0) {
    run({0, a2}, {0, b2});
  } else {
    for (const auto& a : G.elems)
      for (const auto& b : G.elems) run(a, b);
  }
  out["checks"] = checks;
  out["pass"] = all_ok;
  std::cout << out.dump(1) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_xi(long N, long a, long b, const std::string& group, const std::string& outpath) {
  wedge::Group G = make_group(N, group);
  wedge::MotivicCocycle xi =
      group == "torus" ? wedge::build_xi(G, {a / N, a % N}, {b / N, b % N})
                       : wedge::build_xi(G, {0, a}, {0, b});
  if (!wedge::delta3(xi).is_zero()) {
    std::cerr << "cocycle condition failed\n";
    return 2;
  }
  std::string text = json_io::cocycle_to_json(xi, group);
  if (outpath.empty() || outpath == "-") {
    std::cout << text << "\n";
  } else {
    std::ofstream f(outpath);
    f << text << "\n";
  }
  return 0;
}

int cmd_regulator(const std::string& xipath, const std::string& cycpath, long digits) {
  std::ifstream f(xipath);
  if (!f) throw std::invalid_argument("cannot open " + xipath);
  std::ostringstream ss;
  ss << f.rdbuf();
  wedge::MotivicCocycle xi = json_io::cocycle_from_json(ss.str());
  modsym::Cycle cyc = modsym::import_cycle_file(cycpath);
  mpfield::ScopedPrec guard(digits_to_prec(digits));
  regulator::Context ctx(xi.N, digits);
  json per = json::array();
  auto res = ctx.integrate_cycle(xi, cyc);
  for (const auto& [n, m] : cyc) {
    auto part = ctx.integrate_symbol(xi, m);
    per.push_back({{"n", n},
                   {"matrix", {m.a, m.b, m.c, m.d}},
                   {"value", real_str(part.value, digits)},
                   {"imag_residual", part.imag_residual.to_double()}});
  }
  json out;
  out["value"] = real_str(res.value, digits);
  out["imag_residual"] = res.imag_residual.to_double();
  out["tail_bound"] = res.tail_bound.to_double();
  out["per_term"] = per;
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_lvalue_elliptic(const std::string& label, long digits) {
  mpfield::ScopedPrec guard(digits_to_prec(digits));
  auto E = lfunc::curve_by_label(label);
  int eps = lfunc::determine_epsilon(E);
  Real lp = lfunc::lprime_minus1_elliptic(E);
  json out;
  out["curve"] = label;
  out["class"] = E.label;
  out["conductor"] = E.conductor;
  out["epsilon"] = eps;
  out["lprime_minus1"] = real_str(lp, digits);
  out["error_bound"] = mpfield::pow2(-(mpfield::default_prec() - 16)).to_double();
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_lvalue_eis(long N, long a, long b, long digits) {
  mpfield::ScopedPrec guard(digits_to_prec(digits));
  auto r = lfunc::lprime_minus1_eisenstein(N, a, b, digits);
  json out;
  out["N"] = N;
  out["a"] = a;
  out["b"] = b;
  out["lprime_minus1"] = real_str(r.lprime, digits);
  out["fricke_constant"] = {r.fricke_const.re.to_double(), r.fricke_const.im.to_double()};
  out["functional_equation_residual"] = r.fe_residual.to_double();
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_verify(long N, const std::string& curve, const std::string& cyclespec, long digits,
               const std::string& pairs) {
  if (N > 50) throw std::invalid_argument("level ceiling is 50");
  mpfield::ScopedPrec guard(digits_to_prec(digits));
  auto E = lfunc::curve_by_label(curve);
  if (E.conductor != N) throw std::invalid_argument("curve conductor does not match --N");
  modsym::Cycle cyc;
  if (cyclespec == "paper") {
    if (N != 11) throw std::invalid_argument("--cycle paper is the published level-11 cycle");
    cyc = modsym::import_cycle_text("-1*{-1/2, 0} + {-1/4, 0} + -1*{7/15, 1/2}");
  } else if (cyclespec == "auto") {
    modsym::SymbolSpace S(N);
    cyc = S.eigencycle(E);
  } else {
    cyc = modsym::import_cycle_file(cyclespec);
  }
  Real lp = lfunc::lprime_minus1_elliptic(E);
  Real pi2N = mpfield::pi() * mpfield::pi() / Real(N);
  regulator::Context ctx(N, digits);
  wedge::Group G = wedge::group_gamma1(N);
  Real tol = pow(Real(10L), Real((double)-(digits - 10)));

  std::vector<std::pair<long, long>> todo;
  if (pairs == "all") {
    for (long a = 0; a < N; ++a)
      for (long b = a; b < N; ++b) todo.push_back({a, b});
  } else {
    auto q = parse_quad(pairs);
    todo.push_back({q.at(0), q.at(1)});
  }
  json rows = json::array();
  bool any_recognized = false;
  for (auto [a, b] : todo) {
    wedge::MotivicCocycle xi = wedge::build_xi(G, {0, a}, {0, b});
    if (xi.terms.empty()) continue;
    auto r = ctx.integrate_cycle(xi, cyc);
    Real ratio = r.value / (pi2N * lp);
    auto rec = json_io::recognize_rational(ratio, tol, 100);
    json row;
    row["a"] = a;
    row["b"] = b;
    row["integral"] = real_str(r.value, digits);
    row["lprime"] = real_str(lp, digits);
    row["ratio"] = real_str(ratio, digits);
    if (rec && *rec != 0) {
      row["recognized"] = rec->get_str();
      any_recognized = true;
    } else {
      row["recognized"] = nullptr;
    }
    rows.push_back(row);
  }
  json out;
  out["N"] = N;
  out["curve"] = curve;
  out["digits"] = digits;
  out["rows"] = rows;
  out["pass"] = any_recognized;
  std::cout << out.dump(1) << "\n";
  return any_recognized ? 0 : 1;
}

int cmd_verify_eis(long N, long digits, const std::string& pairs) {
  mpfield::ScopedPrec guard(digits_to_prec(digits));
  regulator::Context ctx(N, digits);
  wedge::Group G = wedge::group_gamma1(N);
  Real c = Real(-6L) * mpfield::pi() * mpfield::pi() / Real(N);
  Real tol = pow(Real(10L), Real((double)-(digits - 6)));
  std::vector<std::pair<long, long>> todo;
  if (pairs == "all") {
    for (long a = 1; a < N; ++a)
      for (long b = a; b < N; ++b) todo.push_back({a, b});
  } else {
    auto q = parse_quad(pairs);
    todo.push_back({q.at(0), q.at(1)});
  }
  json rows = json::array();
  bool all_ok = true;
  for (auto [a, b] : todo) {
    wedge::MotivicCocycle xi = wedge::build_xi(G, {0, a}, {0, b});
    auto lhs = ctx.integrate_symbol(xi, units::Mat2{});
    auto ei = lfunc::lprime_minus1_eisenstein(N, a, b, digits);
    Real rhs = c * ei.lprime;
    Real diff = abs(lhs.value - rhs);
    bool ok = diff < tol;
    all_ok = all_ok && ok;
    rows.push_back({{"a", a},
                    {"b", b},
                    {"integral", real_str(lhs.value, digits)},
                    {"minus_6pi2_over_N_lprime", real_str(rhs, digits)},
                    {"difference", diff.to_double()},
                    {"pass", ok}});
  }
  json out;
  out["N"] = N;
  out["digits"] = digits;
  out["rows"] = rows;
  out["pass"] = all_ok;
  std::cout << out.dump(1) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_eigencycle(const std::string& label, const std::string& outpath) {
  auto E = lfunc::curve_by_label(label);
  modsym::SymbolSpace S(E.conductor);
  modsym::Cycle cyc = S.eigencycle(E);
  json out;
  out["curve"] = label;
  out["N"] = E.conductor;
  out["cycle"] = json::parse(json_io::cycle_to_json(cyc));
  std::string text;
  for (auto& [n, m] : cyc)
    text += std::to_string(n) + " " + std::to_string(m.a) + " " + std::to_string(m.b) + " " +
            std::to_string(m.c) + " " + std::to_string(m.d) + "\n";
  out["cycle_text"] = text;
  if (outpath.empty() || outpath == "-") std::cout << out.dump(1) << "\n";
  else { std::ofstream f(outpath); f << out.dump(1) << "\n"; }
  return 0;
}

int cmd_mahler(long digits) {
  Real m = lfunc::mahler_measure_boyd(digits);
  auto E = lfunc::curve_by_label("15a8");
  Real lp = lfunc::lprime_minus1_elliptic(E);
  json out;
  out["mahler_measure"] = real_str(m, digits);
  out["minus_2_lprime_15a"] = real_str(-Real(2L) * lp, 20);
  out["difference"] = abs(m + Real(2L) * lp).to_double();
  std::cout << out.dump(1) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modular units, K4 cocycles, regulator integrals and L-values"};
  app.require_subcommand(1);
  long prec = 192;
  app.add_option("--prec", prec, "working precision in bits (>= 128)");

  long N = 11, a = 1, b = 3, a2 = -1, b2 = -1, digits = 30;
  std::string quad = "1,2,3,5", group = "gamma1", out = "-", xipath, cycpath = "paper";
  std::string curve = "11a3", pairs = "all", label = "11a3";

  auto* cunits = app.add_subcommand("units", "divisor and degree of a cross-ratio unit on X1(N)");
  cunits->add_option("--N", N)->required();
  cunits->add_option("--quad", quad, "a,b,c,d for u1(a,b,c,d)");

  auto* ctri = app.add_subcommand("triangulate", "exact triangulation identity check");
  ctri->add_option("--N", N)->required();
  ctri->add_option("--G", group, "gamma1 or torus");
  ctri->add_option("--a", a2);
  ctri->add_option("--b", b2);

  auto* cxi = app.add_subcommand("xi", "build and export a cocycle");
  cxi->add_option("--N", N)->required();
  cxi->add_option("--a", a)->required();
  cxi->add_option("--b", b)->required();
  cxi->add_option("--G", group);
  cxi->add_option("--out", out);

  auto* creg = app.add_subcommand("regulator", "integrate a cocycle over a cycle");
  creg->add_option("--xi", xipath)->required();
  creg->add_option("--cycle", cycpath)->required();
  creg->add_option("--digits", digits);

  auto* clv = app.add_subcommand("lvalue", "L'(E,-1) or L'(s~_a s~_b, -1)");
  auto* clve = clv->add_subcommand("elliptic");
  clve->add_option("label", label)->required();
  clve->add_option("--digits", digits);
  auto* clvf = clv->add_subcommand("eis");
  clvf->add_option("N", N)->required();
  clvf->add_option("a", a)->required();
  clvf->add_option("b", b)->required();
  clvf->add_option("--digits", digits);

  auto* cver = app.add_subcommand("verify", "regulator integral vs r pi^2/N L'(E,-1)");
  cver->add_option("--N", N)->required();
  cver->add_option("--curve", curve)->required();
  cver->add_option("--cycle", cycpath, "paper | auto | path to a cycle file");
  cver->add_option("--digits", digits);
  cver->add_option("--pairs", pairs, "all or a,b");

  auto* cvee = app.add_subcommand("verify-eis", "open-symbol comparison with the Eisenstein L-value");
  cvee->add_option("--N", N)->required();
  cvee->add_option("--digits", digits);
  cvee->add_option("--pairs", pairs);

  auto* cmah = app.add_subcommand("mahler", "Mahler measure of (1+x)(1+y)+z");
  cmah->add_option("--digits", digits);

  auto* ceig = app.add_subcommand("eigencycle", "compute and export an eigencycle");
  ceig->add_option("--curve", curve)->required();
  ceig->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);
  mpfield::set_default_prec(std::max<long>(prec, 128));

  try {
    if (cunits->parsed()) return cmd_units(N, quad);
    if (ctri->parsed()) return cmd_triangulate(N, group, a2, b2);
    if (cxi->parsed()) return cmd_xi(N, a, b, group, out);
    if (creg->parsed()) return cmd_regulator(xipath, cycpath, digits);
    if (clve->parsed()) return cmd_lvalue_elliptic(label, digits);
    if (clvf->parsed()) return cmd_lvalue_eis(N, a, b, digits);
    if (cver->parsed()) return cmd_verify(N, curve, cycpath, digits, pairs);
    if (ceig->parsed()) return cmd_eigencycle(curve, out);
    if (cvee->parsed()) return cmd_verify_eis(N, digits, pairs);
    if (cmah->parsed()) return cmd_mahler(digits);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
