#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mmf/chars.hpp"
#include "mmf/laurent.hpp"

namespace mmf {

using SeriesVector = std::vector<LaurentSeries>;

// Dense matrix over truncated Laurent series.
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, LaurentSeries(f_, LaurentSeries::kExact)) {}

  static SeriesMatrix identity(const FieldPtr& f, std::size_t n) {
    SeriesMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentSeries::one(f);
    return m;
  }
  static SeriesMatrix scalar(const LaurentSeries& s, std::size_t n) {
    SeriesMatrix m(s.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  LaurentSeries& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const LaurentSeries& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  SeriesMatrix operator*(const SeriesMatrix& o) const {
    if (cols_ != o.rows_) throw math_error("dimension mismatch");
    SeriesMatrix r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        LaurentSeries acc(f_, LaurentSeries::kExact);
        for (std::size_t k = 0; k < cols_; ++k)
          if (!(*this)(i, k).is_zero() || !(*this)(i, k).is_exact()) acc = acc + (*this)(i, k) * o(k, j);
        r(i, j) = acc;
      }
    return r;
  }

  SeriesVector apply(const SeriesVector& v) const {
    if (v.size() != cols_) throw math_error("dimension mismatch");
    SeriesVector out(rows_, LaurentSeries(f_, LaurentSeries::kExact));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (!(*this)(i, k).is_zero() || !(*this)(i, k).is_exact()) out[i] = out[i] + (*this)(i, k) * v[k];
    return out;
  }

  SeriesMatrix transpose() const {
    SeriesMatrix r(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  template <class Fn>
  SeriesMatrix map(Fn fn) const {
    SeriesMatrix r = *this;
    for (auto& x : r.a_) x = fn(x);
    return r;
  }

  SeriesMatrix scaled(const FieldElem& s) const {
    return map([&](const LaurentSeries& x) { return s * x; });
  }

  // Kronecker product, index (i1 * rows(b) + i2).
  friend SeriesMatrix kron(const SeriesMatrix& a, const SeriesMatrix& b) {
    SeriesMatrix r(a.f_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i1 = 0; i1 < a.rows_; ++i1)
      for (std::size_t j1 = 0; j1 < a.cols_; ++j1)
        for (std::size_t i2 = 0; i2 < b.rows_; ++i2)
          for (std::size_t j2 = 0; j2 < b.cols_; ++j2)
            r(i1 * b.rows_ + i2, j1 * b.cols_ + j2) = a(i1, j1) * b(i2, j2);
    return r;
  }

  long precision() const {
    long n = LaurentSeries::kExact;
    for (const auto& x : a_) n = std::min(n, x.precision());
    return n;
  }
  long min_valuation() const {
    long v = LaurentSeries::kExact;
    for (const auto& x : a_)
      if (!x.is_zero()) v = std::min(v, x.valuation());
    return v;
  }

  friend bool agree(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      if (!agree(a.a_[k], b.a_[k])) return false;
    return true;
  }

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<LaurentSeries> a_;
};

inline bool agree(const SeriesVector& a, const SeriesVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!agree(a[i], b[i])) return false;
  return true;
}

inline long precision_of(const SeriesVector& v) {
  long n = LaurentSeries::kExact;
  for (const auto& x : v) n = std::min(n, x.precision());
  return n;
}

namespace detail {

// Gauss-Jordan elimination with minimal-valuation pivots. Returns the
// determinant and, when wanted, the inverse.
inline std::pair<LaurentSeries, std::optional<SeriesMatrix>> eliminate(const SeriesMatrix& m, long cap,
                                                                       bool want_inverse) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw math_error("square matrix required");
  const auto& f = m.field();
  SeriesMatrix a = m;
  SeriesMatrix inv = SeriesMatrix::identity(f, n);
  LaurentSeries det = LaurentSeries::one(f);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t r = k; r < n; ++r)
      if (!a(r, k).is_zero() && (piv == n || a(r, k).valuation() < a(piv, k).valuation())) piv = r;
    if (piv == n) {
      long prec = cap;
      for (std::size_t r = k; r < n; ++r) prec = std::min(prec, a(r, k).precision());
      return {LaurentSeries(f, prec), std::nullopt};
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
      det = -det;
    }
    det = det * a(k, k);
    const LaurentSeries pinv = invert(a(k, k), cap);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) = a(k, j) * pinv;
      inv(k, j) = inv(k, j) * pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || a(r, k).is_zero()) continue;
      const LaurentSeries factor = a(r, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - factor * a(k, j);
        if (want_inverse) inv(r, j) = inv(r, j) - factor * inv(k, j);
      }
    }
  }
  if (!want_inverse) return {det, std::nullopt};
  return {det, inv};
}

}  // namespace detail

// Inverse over k((X)); cap bounds the precision of inverted non-monomial pivots.
inline SeriesMatrix inverse(const SeriesMatrix& m, long cap = LaurentSeries::kExact) {
  auto [det, inv] = detail::eliminate(m, cap, true);
  if (!inv) throw math_error("not etale");
  return *inv;
}

inline LaurentSeries determinant(const SeriesMatrix& m, long cap = LaurentSeries::kExact) {
  return detail::eliminate(m, cap, false).first;
}

// gamma_c on each entry.
inline SeriesVector gamma_entries(unsigned long long c, const SeriesVector& v, long cap) {
  SeriesVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(gamma_act(c, x, cap));
  return out;
}

inline SeriesVector phi_entries(const SeriesVector& v) {
  SeriesVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(frobenius_phi(x));
  return out;
}

// Matrix of gamma_c in the standard basis, to the requested precision.
using GammaOracle = std::function<SeriesMatrix(unsigned long long c, long prec)>;

// Etale (phi, Gamma)-module over k((X)). Column j of phi is phi(e_j).
struct PhiGammaModule {
  FieldPtr field;
  std::size_t rank = 0;
  SeriesMatrix phi;
  GammaOracle gamma;
  long precision = 0;

  SeriesMatrix gamma_matrix(unsigned long long c, long prec) const {
    if (c % static_cast<unsigned long long>(field->p()) == 0) throw math_error("unit required");
    return gamma(c, prec);
  }
};

inline SeriesVector apply_phi(const PhiGammaModule& d, const SeriesVector& v) {
  return d.phi.apply(phi_entries(v));
}

// gamma_c(v) computed to precision prec.
inline SeriesVector apply_gamma(const PhiGammaModule& d, unsigned long long c, const SeriesVector& v, long prec) {
  long shift = 0;
  for (const auto& x : v)
    if (!x.is_zero()) shift = std::max(shift, -x.valuation());
  return d.gamma_matrix(c, prec + shift).apply(gamma_entries(c, v, prec));
}

// (gamma(phi(v)), phi(gamma(v))), each at its tracked precision.
inline std::pair<SeriesVector, SeriesVector> commutation_sides(const PhiGammaModule& d, unsigned long long c,
                                                               const SeriesVector& v) {
  const SeriesVector pv = apply_phi(d, v);
  SeriesVector lhs = apply_gamma(d, c, pv, precision_of(pv));
  SeriesVector rhs = apply_phi(d, apply_gamma(d, c, v, precision_of(v)));
  return {std::move(lhs), std::move(rhs)};
}

inline SeriesMatrix constant_matrix(const FieldElem& a) { return SeriesMatrix::scalar(LaurentSeries::constant(a), 1); }

inline PhiGammaModule make_rank1(const TameChar& chi, long precision) {
  const auto f = chi.field();
  PhiGammaModule d;
  d.field = f;
  d.rank = 1;
  d.phi = constant_matrix(chi.unram);
  d.gamma = [chi](unsigned long long c, long) { return constant_matrix(chi.on_unit(static_cast<long long>(c % chi.p()))); };
  d.precision = precision;
  return d;
}

// omega(c) X / gamma_c(X), a one-unit.
inline LaurentSeries gamma_ratio(const FieldPtr& f, unsigned long long c, long prec) {
  const FieldElem wc(f, static_cast<long long>(c % static_cast<unsigned long long>(f->p())));
  return wc * invert(gamma_x_over_x(f, c, prec), prec);
}

// Rank-n module of omega^tame mu_lambda (x) Ind(omega_n^h), with Lam = lambda^n
// carried on phi(e_n).
inline PhiGammaModule make_induced(int n, long long h, const FieldElem& lam, int tame, long precision) {
  if (n < 1) throw math_error("rank must be positive");
  if (lam.is_zero()) throw math_error("nonzero required");
  const auto f = lam.field();
  const long long p = f->p();
  const long long q1 = ipow(p, static_cast<unsigned>(n)) - 1;
  if (h < 0) h += q1 * ((-h + q1 - 1) / q1);
  PhiGammaModule d;
  d.field = f;
  d.rank = static_cast<std::size_t>(n);
  d.phi = SeriesMatrix(f, d.rank, d.rank);
  for (int i = 0; i + 1 < n; ++i) d.phi(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = LaurentSeries::one(f);
  d.phi(0, static_cast<std::size_t>(n - 1)) = LaurentSeries::monomial(lam, -h * (p - 1));
  d.gamma = [f, n, h, p, q1, tame](unsigned long long c, long prec) {
    const long len = std::max(prec, 1L);
    const LaurentSeries w = one_unit_root(gamma_ratio(f, c, len), q1, len);
    const FieldElem chi = FieldElem(f, static_cast<long long>(c % static_cast<unsigned long long>(p))).pow(tame);
    SeriesMatrix g(f, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    LaurentSeries base = pow(w, h * (p - 1), len);
    for (int i = 0; i < n; ++i) {
      g(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = chi * base;
      base = pow(base, p, len);
    }
    return g;
  };
  d.precision = precision;
  return d;
}

inline PhiGammaModule twist(const PhiGammaModule& d, const TameChar& chi) {
  PhiGammaModule r = d;
  r.phi = d.phi.scaled(chi.unram);
  auto g = d.gamma;
  r.gamma = [g, chi](unsigned long long c, long prec) {
    return g(c, prec).scaled(chi.on_unit(static_cast<long long>(c % chi.p())));
  };
  return r;
}

inline PhiGammaModule dual(const PhiGammaModule& d) {
  PhiGammaModule r = d;
  r.phi = inverse(d.phi, d.precision).transpose();
  auto g = d.gamma;
  r.gamma = [g](unsigned long long c, long prec) { return inverse(g(c, prec), prec).transpose(); };
  return r;
}

inline PhiGammaModule tensor(const PhiGammaModule& a, const PhiGammaModule& b) {
  if (!same_field(*a.field, *b.field)) throw math_error("field mismatch");
  PhiGammaModule r;
  r.field = a.field;
  r.rank = a.rank * b.rank;
  r.phi = kron(a.phi, b.phi);
  auto ga = a.gamma, gb = b.gamma;
  r.gamma = [ga, gb](unsigned long long c, long prec) { return kron(ga(c, prec), gb(c, prec)); };
  r.precision = std::min(a.precision, b.precision);
  return r;
}

// Left inverse of phi: write phi^{-1}-coordinates in the (1+X)^i basis over
// k((X^p)) and keep the i = 0 part. Output precision is carried per entry.
inline SeriesVector psi(const PhiGammaModule& d, const SeriesVector& v) {
  const long vp = precision_of(v);
  const SeriesVector c = inverse(d.phi, vp < LaurentSeries::kExact ? std::max(vp, d.precision) : d.precision).apply(v);
  SeriesVector out;
  out.reserve(c.size());
  for (const auto& x : c) out.push_back(phi_basis_decompose(x)[0]);
  return out;
}

// psi on the trivial rank-1 module.
inline LaurentSeries psi_ring(const LaurentSeries& f) { return phi_basis_decompose(f)[0]; }

struct EtaleCertificate {
  bool etale = false;
  long det_valuation = 0;
  std::optional<FieldElem> det_leading;
};

inline EtaleCertificate etale_check(const PhiGammaModule& d) {
  LaurentSeries det = determinant(d.phi, d.precision);
  if (det.is_zero()) return {false, det.precision(), std::nullopt};
  return {true, det.valuation(), det.leading()};
}

// phi(f_i) = d_i g_i X^{t_i} f_{i+1}, gamma(f_i) = omega(c)^{b_i} (1-unit) f_i.
struct CyclicForm {
  int n = 0;
  std::vector<FieldElem> d;
  std::vector<long long> t;
  std::vector<long long> b;
  std::vector<LaurentSeries> noise;

  int p() const { return d.front().field()->p(); }

  // b_{i+1} = b_i - t_i mod p-1 and one-unit noise.
  void validate() const {
    if (n < 1 || d.size() != static_cast<std::size_t>(n) || t.size() != d.size() || b.size() != d.size() ||
        noise.size() != d.size())
      throw math_error("malformed cyclic form");
    const int pm1 = p() - 1;
    for (int i = 0; i < n; ++i) {
      if (d[static_cast<std::size_t>(i)].is_zero()) throw math_error("nonzero required");
      const auto& g = noise[static_cast<std::size_t>(i)];
      if (g.is_zero() || g.valuation() != 0 || !g.leading().is_one()) throw math_error("not a one-unit");
      const std::size_t j = static_cast<std::size_t>((i + 1) % n);
      if (mod_floor(b[j] - b[static_cast<std::size_t>(i)] + t[static_cast<std::size_t>(i)], pm1) != 0)
        throw math_error("not phi-gamma compatible");
    }
  }
};

}  // namespace mmf
