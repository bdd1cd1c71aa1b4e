#pragma once

#include <array>
#include <string>

#include "mmf/rational.hpp"

namespace mmf {

// Legendre symbol of a nonzero residue, as +1 / -1.
inline int legendre(long long a, int p) {
  long long r = pow_mod(mod_floor(a, p), (p - 1) / 2, p);
  if (r == 0) throw math_error("nonzero required");
  return r == 1 ? 1 : -1;
}

// 2x2 matrix over Q, read inside GL2(Q_p).
struct PMatrix {
  Rational a, b, c, d;

  static PMatrix identity() { return {1, 0, 0, 1}; }
  static PMatrix scalar(const Rational& z) { return {z, 0, 0, z}; }

  Rational det() const { return a * d - b * c; }

  PMatrix operator*(const PMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const PMatrix& o) const = default;

  PMatrix inverse() const {
    Rational dt = det();
    if (dt == 0) throw math_error("singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  std::array<Rational, 4> entries() const { return {a, b, c, d}; }
};

// c if c != 0, else d.
inline const Rational& lower_pivot(const PMatrix& g) { return g.c != 0 ? g.c : g.d; }

inline int hilbert(const Rational& a, const Rational& b, int p) {
  if (a == 0 || b == 0) throw math_error("nonzero required");
  const int va = vp(a, p), vb = vp(b, p);
  const long long a0 = unit_residue(unit_part(a, p), p);
  const long long b0 = unit_residue(unit_part(b, p), p);
  long long x = ((static_cast<long long>(va) * vb) % 2 == 0) ? 1 : p - 1;
  x = x * pow_mod(b0, mod_floor(va, p - 1), p) % p;
  x = x * pow_mod(inv_mod(a0, p), mod_floor(vb, p - 1), p) % p;
  return legendre(x, p);
}

inline int cocycle(const PMatrix& g1, const PMatrix& g2, int p) {
  if (g1.det() == 0 || g2.det() == 0) throw math_error("singular matrix");
  const Rational c12 = lower_pivot(g1 * g2);
  return hilbert(c12 / lower_pivot(g1), c12 / lower_pivot(g2) * g1.det(), p);
}

struct MetaElem {
  PMatrix g;
  int zeta = 1;
  bool operator==(const MetaElem&) const = default;
};

inline MetaElem meta_mul(const MetaElem& x, const MetaElem& y, int p) {
  return {x.g * y.g, x.zeta * y.zeta * cocycle(x.g, y.g, p)};
}

inline MetaElem meta_inverse(const MetaElem& x, int p) {
  PMatrix gi = x.g.inverse();
  return {gi, x.zeta * cocycle(x.g, gi, p)};
}

inline bool in_K(const PMatrix& g, int p) {
  for (const auto& e : g.entries())
    if (e != 0 && vp(e, p) < 0) return false;
  Rational dt = g.det();
  return dt != 0 && vp(dt, p) == 0;
}

// The fixed splitting K x mu_2 -> K~.
inline MetaElem kappa_split(const PMatrix& g, int zeta, int p) {
  if (!in_K(g, p)) throw math_error("not in K");
  if (g.c != 0 && vp(g.c, p) > 0) return {g, zeta * hilbert(g.c, g.d / g.det(), p)};
  return {g, zeta};
}

// Order <= 2 character of Q_p^x: unram is the value at p, tame is 0 or (p-1)/2.
struct QuadCharParams {
  int unram = 1;
  int tame = 0;
  bool operator==(const QuadCharParams&) const = default;

  int evaluate(const Rational& x, int p) const {
    const int v = vp(x, p);
    int s = (unram == -1 && v % 2 != 0) ? -1 : 1;
    if (tame != 0) s *= legendre(unit_residue(unit_part(x, p), p), p);
    return s;
  }
};

inline QuadCharParams chi_z(const Rational& z, int p) {
  if (z == 0) throw math_error("nonzero required");
  const int v = vp(z, p);
  const long long z0 = unit_residue(unit_part(z, p), p);
  const bool odd = mod_floor(v, 2) == 1;
  return {legendre(odd ? p - z0 : z0, p), odd ? (p - 1) / 2 : 0};
}

// Least positive non-square residue mod p.
inline int least_nonsquare(int p) {
  for (int u = 2; u < p; ++u)
    if (legendre(u, p) == -1) return u;
  throw math_error("odd prime required");
}

// Representatives {1, u0, p, u0 p} of Q_p^x / (Q_p^x)^2.
inline std::array<Rational, 4> square_class_reps(int p) {
  const int u0 = least_nonsquare(p);
  return {Rational(1), Rational(u0), Rational(p), Rational(u0 * p)};
}

inline std::string sign_str(int s) { return s > 0 ? "1" : "-1"; }

}  // namespace mmf
