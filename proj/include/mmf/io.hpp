#pragma once

#include <json.hpp>
#include <string>

#include "mmf/meta.hpp"

namespace mmf::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

inline json with_schema(json body) {
  json out;
  out["schema"] = kSchema;
  for (auto& [k, v] : body.items()) out[k] = v;
  return out;
}

inline json to_json(const FieldElem& x) {
  return {{"p", x.field()->p()}, {"m", x.field()->m()}, {"coeffs", x.coeffs()}};
}

inline json coeff_json(const FieldElem& x) {
  if (x.field()->m() == 1) return x.code();
  return x.coeffs();
}

inline json to_json(const LaurentSeries& s) {
  json out;
  out["p"] = s.field()->p();
  out["m"] = s.field()->m();
  out["precision"] = s.is_exact() ? json(nullptr) : json(s.precision());
  if (s.is_zero()) {
    out["valuation"] = nullptr;
    out["coeffs"] = json::array();
    return out;
  }
  out["valuation"] = s.valuation();
  json c = json::array();
  const long end = s.is_exact() ? s.support_end() : std::min(s.support_end(), s.precision());
  for (long e = s.valuation(); e < end; ++e) c.push_back(coeff_json(s.coeff(e)));
  out["coeffs"] = c;
  return out;
}

inline json to_json(const SeriesMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const SeriesVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline json to_json(const PMatrix& g) {
  json out = json::array();
  for (const auto& e : g.entries()) out.push_back(to_string(e));
  return out;
}

inline json to_json(const MetaElem& x) { return {{"g", to_json(x.g)}, {"zeta", x.zeta}}; }

inline json to_json(const QuadCharParams& q) { return {{"unram", q.unram}, {"tame", q.tame}}; }

inline json to_json(const TameChar& c) { return {{"unram", c.unram.str()}, {"tame", c.tame}, {"text", c.str()}}; }

inline json to_json(const SChar& s) { return {{"val_p2", s.val_p2.str()}, {"tame", s.tame}}; }

inline json to_json(const HChar& h) { return json::array({h.e1, h.e2}); }

inline json to_json(const InducedParams& P) {
  return {{"n", P.n}, {"H", P.H}, {"Lam", P.Lam.str()}, {"canonical_H", canonicalize(P).H}, {"irreducible", is_irreducible(P)}};
}

inline json to_json(const PhiGammaModule& d, unsigned long long sample_unit = 0) {
  json out;
  out["p"] = d.field->p();
  out["m"] = d.field->m();
  out["rank"] = d.rank;
  out["precision"] = d.precision;
  out["phi"] = to_json(d.phi);
  if (sample_unit != 0) {
    out["gamma_unit"] = sample_unit;
    out["gamma"] = to_json(d.gamma_matrix(sample_unit, d.precision));
  }
  const auto cert = etale_check(d);
  out["etale"] = cert.etale;
  return out;
}

inline json to_json(const CyclicForm& c) {
  json d = json::array(), noise = json::array();
  for (const auto& x : c.d) d.push_back(x.str());
  for (const auto& g : c.noise) noise.push_back(to_json(g));
  return {{"n", c.n}, {"d", d}, {"t", c.t}, {"b", c.b}, {"noise", noise}};
}

inline json to_json(const NormalForm& nf, bool with_audit = false) {
  json out = {{"n", nf.n}, {"t", nf.t}, {"d", nf.d.str()}, {"b1", nf.b1}};
  if (with_audit) {
    json h = json::array();
    for (const auto& x : nf.h) h.push_back(to_json(x));
    out["h"] = h;
  }
  return out;
}

inline json to_json(const SSData& d) {
  json chi = json::array(), c = json::array(), w = json::array();
  for (const auto& x : d.chi) chi.push_back(to_json(x));
  for (const auto& x : d.c) c.push_back(x.str());
  for (const auto& [ri, bi] : d.weights) w.push_back(json::array({ri, bi}));
  return {{"p", d.p}, {"r", d.r}, {"r_prime", d.rp}, {"chi", chi}, {"s", d.s}, {"c", c}, {"weights", w}};
}

inline json to_json(const DualSimulation& s) {
  return {{"level", s.level}, {"e", s.e}, {"e_m", s.e_m}, {"exponent", s.exponent}, {"unit", to_json(s.unit)}};
}

inline json to_json(const SSRep& x) { return {{"kind", "supersingular"}, {"r", x.r}, {"eta", to_json(x.eta)}}; }

inline json to_json(const PSRep& x) {
  return {{"kind", "principal_series"}, {"psi1", to_json(x.psi1)}, {"psi2", to_json(x.psi2)}};
}

inline json to_json(const HeckeCokernel& h) {
  json out;
  out["principal"] = h.principal ? to_json(*h.principal) : json(nullptr);
  json cons = json::array();
  for (const auto& c : h.constituents) cons.push_back(to_json(c));
  out["constituents"] = cons;
  out["split"] = h.split;
  return out;
}

inline json to_json(const CharSum& s) {
  json out = json::array();
  for (const auto& c : s.chars) out.push_back(to_json(c));
  return out;
}

inline json to_json(const MetaBase& b) {
  struct V {
    json operator()(const TameChar& c) const { return {{"character", to_json(c)}}; }
    json operator()(const InducedParams& P) const { return {{"induced", to_json(P)}}; }
    json operator()(const CharSum& s) const { return {{"sum", to_json(s)}}; }
    json operator()(const PhiGammaModule& d) const { return {{"module", to_json(d)}}; }
  };
  return std::visit(V{}, b);
}

inline json to_json(const MetaPhiGamma& m) {
  json summands = json::array();
  const auto reps = square_class_reps(base_field(m.base)->p());
  for (std::size_t i = 0; i < m.summands.size(); ++i) {
    json s = to_json(m.summands[i]);
    s["coset"] = to_string(reps[i]);
    summands.push_back(s);
  }
  return {{"s_char", to_json(m.s_char)}, {"base", to_json(m.base)}, {"summands", summands}, {"irreducible", meta_irred_test(m)}};
}

inline json to_json(const BijectionReport& r) {
  json pairs = json::array();
  for (const auto& [rr, h] : r.pairs) pairs.push_back(json::array({rr, h}));
  return {{"p", r.p},
          {"m", r.m},
          {"counts",
           {{"representations", r.rep_classes},
            {"galois", r.galois_classes},
            {"representations_up_to_twist", r.rep_up_to_twist},
            {"galois_up_to_twist", r.galois_up_to_twist}}},
          {"pairs", pairs},
          {"well_defined", r.well_defined},
          {"lands_in_target", r.lands_in_target},
          {"injective", r.injective},
          {"surjective", r.surjective}};
}

// "a,b,c,d" with rational entries.
inline PMatrix parse_matrix(const std::string& text) {
  std::vector<Rational> e;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (cur.empty()) throw math_error("malformed matrix");
      e.push_back(parse_rational(cur));
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (e.size() != 4) throw math_error("malformed matrix");
  return {e[0], e[1], e[2], e[3]};
}

}  // namespace mmf::io
