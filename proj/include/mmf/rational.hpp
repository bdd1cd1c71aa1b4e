#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "mmf/arith.hpp"
#include "mmf/error.hpp"

namespace mmf {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline int vp(BigInt n, int p) {
  if (n == 0) throw math_error("nonzero required");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int vp(const Rational& x, int p) {
  if (x == 0) throw math_error("nonzero required");
  return vp(boost::multiprecision::numerator(x), p) - vp(boost::multiprecision::denominator(x), p);
}

inline Rational p_power(int p, int e) {
  Rational r = 1;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= p;
  return e < 0 ? Rational(1) / r : r;
}

// x / p^{v_p(x)}
inline Rational unit_part(const Rational& x, int p) { return x / p_power(p, vp(x, p)); }

// Reduction of a p-adic unit modulo p, as an integer in [1, p).
inline int unit_residue(const Rational& u, int p) {
  if (u == 0 || vp(u, p) != 0) throw math_error("not a unit");
  long long num = static_cast<long long>(BigInt(boost::multiprecision::numerator(u) % p));
  long long den = static_cast<long long>(BigInt(boost::multiprecision::denominator(u) % p));
  return static_cast<int>(mod_floor(num, p) * inv_mod(den, p) % p);
}

// Accepts "a" or "a/b".
inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw math_error("zero denominator");
    return Rational(BigInt(s.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw math_error("malformed rational: " + s);
  }
}

inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

}  // namespace mmf
