#pragma once

#include <string>
#include <vector>

#include "mmf/coeff.hpp"
#include "mmf/metagroup.hpp"

namespace mmf {

// Tame character mu_unram * omega^tame of Q_p^x.
struct TameChar {
  FieldElem unram;
  int tame = 0;

  static TameChar trivial(const FieldPtr& f) { return {FieldElem(f, 1), 0}; }
  static TameChar make(const FieldElem& unram, long long tame) {
    if (unram.is_zero()) throw math_error("nonzero required");
    const int p = unram.field()->p();
    return {unram, static_cast<int>(mod_floor(tame, p - 1))};
  }

  int p() const { return unram.field()->p(); }
  const FieldPtr& field() const { return unram.field(); }

  TameChar operator*(const TameChar& o) const { return make(unram * o.unram, tame + o.tame); }
  TameChar inv() const { return make(unram.inv(), -tame); }
  TameChar pow(long long e) const { return make(unram.pow(e), tame * e); }
  bool operator==(const TameChar& o) const { return unram == o.unram && tame == o.tame; }

  // omega(c)^tame for an integer unit c.
  FieldElem on_unit(long long c) const {
    FieldElem w(field(), c);
    if (w.is_zero()) throw math_error("not a unit");
    return w.pow(tame);
  }
  FieldElem on_rational(const Rational& x) const {
    const int v = vp(x, p());
    return unram.pow(v) * FieldElem(field(), unit_residue(unit_part(x, p()), p())).pow(tame);
  }

  std::string str() const {
    std::string s = "mu(" + unram.str() + ")";
    if (tame != 0) s += "*omega^" + std::to_string(tame);
    return s;
  }
};

inline TameChar from_quad(const QuadCharParams& q, const FieldPtr& f) {
  return TameChar::make(FieldElem(f, q.unram), q.tame);
}

// Character of the squares S, read through (value at p^2, omega-exponent mod (p-1)/2).
struct SChar {
  FieldElem val_p2;
  int tame = 0;

  static SChar make(const FieldElem& v, long long tame) {
    if (v.is_zero()) throw math_error("nonzero required");
    const int half = (v.field()->p() - 1) / 2;
    return {v, static_cast<int>(mod_floor(tame, half))};
  }
  static SChar trivial(const FieldPtr& f) { return make(FieldElem(f, 1), 0); }

  SChar operator*(const SChar& o) const { return make(val_p2 * o.val_p2, tame + o.tame); }
  SChar inv() const { return make(val_p2.inv(), -tame); }
  bool operator==(const SChar& o) const { return val_p2 == o.val_p2 && tame == o.tame; }
};

inline SChar restrict_S(const TameChar& chi) { return SChar::make(chi.unram * chi.unram, chi.tame); }

// {1, mu_{-1}, omega^{(p-1)/2}, mu_{-1} omega^{(p-1)/2}}.
inline std::vector<TameChar> quadratic_chars(const FieldPtr& f) {
  const int half = (f->p() - 1) / 2;
  return {TameChar::make(FieldElem(f, 1), 0), TameChar::make(FieldElem(f, -1), 0),
          TameChar::make(FieldElem(f, 1), half), TameChar::make(FieldElem(f, -1), half)};
}

// omega^e1 (x) omega^e2 on the diagonal torus of GL2(F_p).
struct HChar {
  int p = 3;
  int e1 = 0, e2 = 0;

  static HChar make(int p, long long e1, long long e2) {
    return {p, static_cast<int>(mod_floor(e1, p - 1)), static_cast<int>(mod_floor(e2, p - 1))};
  }
  HChar bracket(int i, int j) const {
    const int half = (p - 1) / 2;
    return make(p, e1 + i * half, e2 + j * half);
  }
  HChar swap() const { return {p, e2, e1}; }
  bool operator==(const HChar&) const = default;
};

// Parses "1", "mu(x)", "omega", "omega^a" and products of these joined by '*'.
inline TameChar parse_tame_char(const std::string& text, const FieldPtr& f) {
  TameChar acc = TameChar::trivial(f);
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == '*' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  for (const auto& t : parts) {
    if (t.empty()) throw math_error("malformed character: " + text);
    if (t == "1") continue;
    if (t.rfind("mu(", 0) == 0 && t.back() == ')') {
      acc = acc * TameChar::make(parse_field_elem(t.substr(3, t.size() - 4), f), 0);
    } else if (t == "omega") {
      acc = acc * TameChar::make(FieldElem(f, 1), 1);
    } else if (t.rfind("omega^", 0) == 0) {
      try {
        acc = acc * TameChar::make(FieldElem(f, 1), std::stoll(t.substr(6)));
      } catch (const std::logic_error&) {
        throw math_error("malformed character: " + text);
      }
    } else {
      throw math_error("malformed character: " + text);
    }
  }
  return acc;
}

}  // namespace mmf
