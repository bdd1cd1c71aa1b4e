#pragma once

#include <optional>
#include <utility>

#include "mmf/chars.hpp"

namespace mmf {

// mu_lambda (x) Ind(omega_n^H) with the tame twist folded into H and
// Lam = lambda^n.
struct InducedParams {
  int n = 1;
  long long H = 0;
  FieldElem Lam;

  int p() const { return Lam.field()->p(); }
  long long modulus() const { return ipow(p(), static_cast<unsigned>(n)) - 1; }
  // (p^n - 1) / (p - 1): the H-shift of a twist by omega.
  long long omega_step() const { return modulus() / (p() - 1); }

  static InducedParams make(int n, long long H, const FieldElem& lam) {
    if (n < 1) throw math_error("rank must be positive");
    if (lam.is_zero()) throw math_error("nonzero required");
    InducedParams r{n, 0, lam};
    r.H = mod_floor(H, r.modulus());
    return r;
  }
  // omega^a mu_lambda (x) Ind(omega_n^h).
  static InducedParams with_twist(int n, long long h, long long a, const FieldElem& lam) {
    InducedParams r = make(n, 0, lam);
    r.H = mod_floor(mod_floor(h, r.modulus()) + mod_floor(a, r.p() - 1) * r.omega_step(), r.modulus());
    return r;
  }

  bool operator==(const InducedParams& o) const { return n == o.n && H == o.H && Lam == o.Lam; }
};

inline InducedParams canonicalize(const InducedParams& P) {
  const long long q = P.modulus();
  long long best = P.H, cur = P.H;
  for (int i = 1; i < P.n; ++i) {
    cur = static_cast<long long>(static_cast<__int128>(cur) * P.p() % q);
    best = std::min(best, cur);
  }
  return {P.n, best, P.Lam};
}

inline bool iso_test(const InducedParams& a, const InducedParams& b) {
  if (a.n != b.n || !same_field(*a.Lam.field(), *b.Lam.field())) throw math_error("incomparable");
  return canonicalize(a).H == canonicalize(b).H && a.Lam == b.Lam;
}

inline bool primitive(long long h, int n, int p) {
  const long long q = ipow(p, static_cast<unsigned>(n)) - 1;
  if (h < 1 || h > q - 1) throw math_error("exponent range");
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    if (h % (q / (ipow(p, static_cast<unsigned>(d)) - 1)) == 0) return false;
  }
  return true;
}

inline bool is_irreducible(const InducedParams& P) { return P.H != 0 && primitive(P.H, P.n, P.p()); }

inline InducedParams quad_twist(const InducedParams& P, const QuadCharParams& eps) {
  InducedParams r = P;
  r.H = mod_floor(P.H + static_cast<long long>(eps.tame) * P.omega_step(), P.modulus());
  r.Lam = P.Lam * FieldElem(P.Lam.field(), eps.unram).pow(P.n);
  return r;
}

inline InducedParams twist(const InducedParams& P, const TameChar& chi) {
  InducedParams r = P;
  r.H = mod_floor(P.H + static_cast<long long>(chi.tame) * P.omega_step(), P.modulus());
  r.Lam = P.Lam * chi.unram.pow(P.n);
  return r;
}

inline InducedParams dual(const InducedParams& P) { return {P.n, mod_floor(-P.H, P.modulus()), P.Lam.inv()}; }

// (a, h') with Ind(omega_4^{(p^2+1)/2 h}) = omega^a (x) Ind(omega_4^{(p^2+1)/2 h'}),
// h' odd in [3, 2p - 1].
inline std::pair<int, long long> lemma2_reduce(long long h, int p) {
  if (mod_floor(h, 2) == 0) throw math_error("odd required");
  const long long P = p;
  long long a = 0;
  h = mod_floor(h, 2 * (P * P - 1));
  if (h >= P * P) {
    h -= P * P - 1;
    a += (P - 1) / 2;
  }
  const long long h1 = h / P;
  const long long shift = h1 / 2;
  h -= 2 * shift * (P + 1);
  a += shift;
  const long long d1 = h1 - 2 * shift;
  const long long d0 = h - d1 * P;
  if (d1 == 0 && d0 < 0) {
    h += 2 * (P + 1);
    a -= 1;
    if (d0 == -1) h = P + 2;
  }
  if (h == 1) h = P;
  return {static_cast<int>(mod_floor(a, P - 1)), h};
}

inline bool twist_invariant_quadratic(const InducedParams& P) {
  const long long q = P.modulus();
  const long long target = q / 2;
  long long pi = 1;
  for (int i = 0; i < P.n; ++i) {
    if (static_cast<long long>(static_cast<__int128>(pi - 1) * P.H % q) == target) return true;
    pi *= P.p();
  }
  return false;
}

// The normalized odd h' for an irreducible rank-4 parameter invariant under
// twisting by omega^{(p-1)/2}; nullopt otherwise.
inline std::optional<long long> lemma1_classify(const InducedParams& P) {
  if (P.n != 4) throw math_error("rank 4 required");
  if (!is_irreducible(P) || !twist_invariant_quadratic(P)) return std::nullopt;
  const long long c = (static_cast<long long>(P.p()) * P.p() + 1) / 2;
  if (P.H % c != 0) return std::nullopt;
  const long long h = P.H / c;
  if (h % 2 == 0) return std::nullopt;
  return lemma2_reduce(h, P.p()).second;
}

// Ind from Q_{p^2}(sqrt p) of omega_L^h, written at level 4.
inline InducedParams lfield_param(long long h, const FieldPtr& f) {
  if (mod_floor(h, 2) == 0) throw math_error("reducible for even exponent");
  const long long p = f->p();
  return InducedParams::make(4, (p * p + 1) / 2 * h, FieldElem(f, 1));
}

}  // namespace mmf
