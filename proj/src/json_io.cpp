#include "modreg/json_io.hpp"

#include "json.hpp"

#include <cmath>

namespace modreg::json_io {

using nlohmann::json;

std::string cocycle_to_json(const wedge::MotivicCocycle& xi, const std::string& group_name) {
  json out;
  out["N"] = xi.N;
  out["group"] = group_name;
  out["a"] = {xi.a.first, xi.a.second};
  out["b"] = {xi.b.first, xi.b.second};
  json terms = json::array();
  for (const auto& t : xi.terms) {
    json jt;
    jt["m"] = t.m.get_str();
    json quad = json::array();
    for (const auto& q : t.u.q) quad.push_back({q.first, q.second});
    jt["quad"] = quad;
    json v = json::array();
    for (const auto& [k, e] : t.v.e) v.push_back({{"idx", {k.first, k.second}}, {"e", e.get_str()}});
    jt["v"] = v;
    terms.push_back(jt);
  }
  out["terms"] = terms;
  return out.dump(1);
}

wedge::MotivicCocycle cocycle_from_json(const std::string& text) {
  json in = json::parse(text);
  wedge::MotivicCocycle xi;
  xi.N = in.at("N").get<long>();
  xi.a = {in.at("a")[0].get<long>(), in.at("a")[1].get<long>()};
  xi.b = {in.at("b")[0].get<long>(), in.at("b")[1].get<long>()};
  for (const auto& jt : in.at("terms")) {
    wedge::CocycleTerm t;
    t.m = mpq_class(jt.at("m").get<std::string>());
    t.u.N = xi.N;
    for (int i = 0; i < 4; ++i)
      t.u.q[i] = {jt.at("quad")[i][0].get<long>(), jt.at("quad")[i][1].get<long>()};
    t.v.N = xi.N;
    for (const auto& jv : jt.at("v")) {
      std::pair<long, long> k{jv.at("idx")[0].get<long>(), jv.at("idx")[1].get<long>()};
      t.v.e[k] = mpq_class(jv.at("e").get<std::string>());
    }
    xi.terms.push_back(std::move(t));
  }
  return xi;
}

std::string divisor_to_json(long N, const std::string& unit_name, const units::UnitExpr& v) {
  json out;
  out["unit"] = unit_name;
  out["N"] = N;
  json cusps = json::array();
  mpq_class degree = 0;
  for (const auto& co : units::order_at_cusps(N, v)) {
    json jc;
    jc["repr"] = std::to_string(co.cusp.p) + "/" + std::to_string(co.cusp.q);
    jc["width"] = co.width;
    jc["order"] = co.order.get_str();
    cusps.push_back(jc);
    if (co.order > 0) degree += co.order;
  }
  out["cusps"] = cusps;
  out["degree"] = degree.get_str();
  return out.dump(1);
}

std::string cycle_to_json(const modsym::Cycle& c) {
  json out = json::array();
  for (const auto& [n, m] : c) out.push_back({{"n", n}, {"matrix", {m.a, m.b, m.c, m.d}}});
  return out.dump(1);
}

std::optional<mpq_class> recognize_rational(const mpfield::Real& x, const mpfield::Real& tol,
                                            long height_bound) {
  using mpfield::Real;
  // continued-fraction convergents
  mpz_class p0 = 1, q0 = 0;  // p_{-1}/q_{-1}
  mpz_class p1, q1;          // current convergent
  Real t = x;
  mpz_class a;
  {
    Real fl = floor(t);
    mpfr_get_z(a.get_mpz_t(), fl.v, MPFR_RNDN);
  }
  p1 = a;
  q1 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    mpq_class cand(p1, q1);
    cand.canonicalize();
    Real diff = abs(x - Real(cand));
    if (diff < tol) {
      if (abs(cand.get_num()) <= height_bound && cand.get_den() <= height_bound) return cand;
      return std::nullopt;  // recognized only above the height bound: report nothing
    }
    Real fl = floor(t);
    Real frac = t - fl;
    if (frac < mpfield::pow2(-mpfield::default_prec() + 16)) break;
    t = Real(1L) / frac;
    Real fl2 = floor(t);
    mpz_class an;
    mpfr_get_z(an.get_mpz_t(), fl2.v, MPFR_RNDN);
    mpz_class p2 = an * p1 + p0, q2 = an * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (q1 > height_bound * 1000000L) break;
  }
  return std::nullopt;
}

}  // namespace modreg::json_io
