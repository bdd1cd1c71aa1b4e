#pragma once

#include <random>

#include "mmf/laurent.hpp"
#include "mmf/metagroup.hpp"

namespace mmf {

// Seeded generators for property checks.
class Sampler {
 public:
  explicit Sampler(int p, std::uint64_t seed) : p_(p), rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

  // Unit of Z_(p) with small numerator and denominator.
  Rational unit() {
    auto draw = [&] {
      long long n;
      do n = uniform(1, 4 * p_ * p_); while (n % p_ == 0);
      return n;
    };
    Rational u(draw(), draw());
    return uniform(0, 1) ? u : Rational(-u);
  }

  Rational nonzero() { return unit() * p_power(p_, static_cast<int>(uniform(-3, 3))); }

  Rational entry() { return uniform(0, 4) == 0 ? Rational(0) : nonzero(); }

  PMatrix matrix() {
    for (;;) {
      PMatrix g{entry(), entry(), entry(), entry()};
      if (g.det() != 0) return g;
    }
  }

  // Element of GL2(Z_p), with the lower-left entry in pZ_p half of the time.
  PMatrix k_matrix() {
    for (;;) {
      auto integral = [&](int minv) {
        if (uniform(0, 5) == 0) return Rational(0);
        return unit() * p_power(p_, static_cast<int>(uniform(minv, minv + 2)));
      };
      PMatrix g{integral(0), integral(0), integral(uniform(0, 1) ? 1 : 0), integral(0)};
      if (in_K(g, p_)) return g;
    }
  }

  int sign() { return uniform(0, 1) ? 1 : -1; }

  LaurentSeries series(const FieldPtr& f, long val, long prec) {
    std::vector<Field::Code> c(static_cast<std::size_t>(std::max(0L, prec - val)));
    for (auto& x : c) x = static_cast<Field::Code>(uniform(0, f->order() - 1));
    return LaurentSeries::from_codes(f, val, std::move(c), prec);
  }

  LaurentSeries one_unit(const FieldPtr& f, long prec) {
    return LaurentSeries::one(f) + series(f, 1, prec);
  }

  FieldElem nonzero_elem(const FieldPtr& f) {
    return FieldElem::from_code(f, static_cast<Field::Code>(uniform(1, f->order() - 1)));
  }

 private:
  int p_;
  std::mt19937_64 rng_;
};

}  // namespace mmf
