#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "mmf/coeff.hpp"

namespace mmf {

// Truncated Laurent series over a finite field. Coefficients of X^e are
// known exactly for e < precision(); an exact series has precision kExact
// and finite support.
class LaurentSeries {
 public:
  using Code = Field::Code;
  static constexpr long kExact = 1L << 50;

  LaurentSeries() = default;
  // Zero known to precision prec.
  LaurentSeries(FieldPtr f, long prec) : f_(std::move(f)), val_(clamp(prec)), prec_(clamp(prec)) {}

  static LaurentSeries from_codes(FieldPtr f, long val, std::vector<Code> coef, long prec) {
    LaurentSeries s(std::move(f), prec);
    s.val_ = val;
    s.coef_ = std::move(coef);
    s.normalize();
    return s;
  }
  static LaurentSeries from_ints(FieldPtr f, long val, const std::vector<long long>& coef, long prec) {
    std::vector<Code> c(coef.size());
    for (std::size_t i = 0; i < coef.size(); ++i) c[i] = f->from_int(coef[i]);
    return from_codes(std::move(f), val, std::move(c), prec);
  }
  static LaurentSeries monomial(const FieldElem& a, long e, long prec = kExact) {
    return from_codes(a.field(), e, {a.code()}, prec);
  }
  static LaurentSeries constant(const FieldElem& a, long prec = kExact) { return monomial(a, 0, prec); }
  static LaurentSeries one(const FieldPtr& f, long prec = kExact) { return constant(FieldElem(f, 1), prec); }
  static LaurentSeries x_power(const FieldPtr& f, long e, long prec = kExact) {
    return monomial(FieldElem(f, 1), e, prec);
  }

  const FieldPtr& field() const { return f_; }
  // For a series known to be zero, valuation() equals precision().
  long valuation() const { return val_; }
  long precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return coef_.empty(); }
  // Highest exponent with a stored nonzero coefficient, plus one.
  long support_end() const { return val_ + static_cast<long>(coef_.size()); }

  Code code_at(long e) const {
    if (e < val_ || e >= support_end()) return 0;
    return coef_[static_cast<std::size_t>(e - val_)];
  }
  FieldElem coeff(long e) const { return FieldElem::from_code(f_, code_at(e)); }
  FieldElem leading() const {
    if (is_zero()) throw math_error("zero series");
    return FieldElem::from_code(f_, coef_.front());
  }

  LaurentSeries truncated(long prec) const {
    prec = clamp(std::min(prec, prec_));
    if (prec <= val_ || is_zero()) return LaurentSeries(f_, std::min(prec, prec_));
    LaurentSeries s = *this;
    s.prec_ = prec;
    if (s.support_end() > prec) s.coef_.resize(static_cast<std::size_t>(prec - val_));
    s.normalize();
    return s;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& c : s.coef_) c = f_->neg(c);
    return s;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return a.combine(b, false); }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a.combine(b, true); }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    a.check(b);
    const auto& f = a.f_;
    if (a.is_zero() || b.is_zero()) {
      long va = a.val_, vb = b.val_;
      long prec = std::min(clamp(a.prec_ + vb), clamp(b.prec_ + va));
      return LaurentSeries(f, prec);
    }
    long val = a.val_ + b.val_;
    long prec = std::min(clamp(a.prec_ + b.val_), clamp(b.prec_ + a.val_));
    long len = static_cast<long>(a.coef_.size() + b.coef_.size()) - 1;
    if (prec < kExact) len = std::min(len, prec - val);
    if (len <= 0) return LaurentSeries(f, prec);
    std::vector<Code> out(static_cast<std::size_t>(len), 0);
    convolve(*f, a.coef_, b.coef_, out);
    return from_codes(f, val, std::move(out), prec);
  }

  friend LaurentSeries operator*(const FieldElem& s, const LaurentSeries& a) {
    if (!same_field(*s.field(), *a.f_)) throw math_error("field mismatch");
    LaurentSeries r = a;
    for (auto& c : r.coef_) c = a.f_->mul(c, s.code());
    r.normalize();
    return r;
  }

  // Same stored coefficients, precision relabelled (used when lifting an
  // approximation to a longer window).
  LaurentSeries with_precision(long prec) const {
    LaurentSeries s = *this;
    s.prec_ = clamp(prec);
    if (s.is_zero()) s.val_ = s.prec_;
    s.normalize();
    return s;
  }

  // Multiplication by X^k.
  LaurentSeries shifted(long k) const {
    LaurentSeries s = *this;
    s.val_ = is_zero() ? clamp(val_ + k) : val_ + k;
    s.prec_ = clamp(prec_ + k);
    if (s.is_zero()) s.val_ = s.prec_;
    return s;
  }

  // Agreement of coefficients below min(prec, both precisions).
  friend bool agree(const LaurentSeries& a, const LaurentSeries& b, long prec) {
    long lim = std::min({prec, a.prec_, b.prec_, std::max(a.support_end(), b.support_end())});
    long lo = std::min(a.is_zero() ? lim : a.val_, b.is_zero() ? lim : b.val_);
    for (long e = lo; e < lim; ++e)
      if (a.code_at(e) != b.code_at(e)) return false;
    return true;
  }
  friend bool agree(const LaurentSeries& a, const LaurentSeries& b) {
    return agree(a, b, std::min(a.prec_, b.prec_));
  }

  // True when the series is zero up to min(prec, precision()).
  bool vanishes_below(long prec) const { return is_zero() || val_ >= std::min(prec, prec_); }

  static long clamp(long n) { return n >= kExact / 2 ? kExact : n; }

 private:
  void check(const LaurentSeries& o) const {
    if (!same_field(*f_, *o.f_)) throw math_error("field mismatch");
  }

  void normalize() {
    prec_ = clamp(prec_);
    std::size_t lead = 0;
    while (lead < coef_.size() && coef_[lead] == 0) ++lead;
    if (lead == coef_.size()) {
      coef_.clear();
      val_ = prec_;
      return;
    }
    if (lead > 0) {
      coef_.erase(coef_.begin(), coef_.begin() + static_cast<long>(lead));
      val_ += static_cast<long>(lead);
    }
    if (support_end() > prec_) coef_.resize(static_cast<std::size_t>(std::max(0L, prec_ - val_)));
    while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
    if (coef_.empty()) val_ = prec_;
  }

  LaurentSeries combine(const LaurentSeries& b, bool subtract) const {
    check(b);
    long prec = std::min(prec_, b.prec_);
    if (is_zero() && b.is_zero()) return LaurentSeries(f_, prec);
    long lo = std::min(is_zero() ? b.val_ : val_, b.is_zero() ? val_ : b.val_);
    long hi = std::max(is_zero() ? lo : support_end(), b.is_zero() ? lo : b.support_end());
    if (prec < kExact) hi = std::min(hi, prec);
    if (hi <= lo) return LaurentSeries(f_, prec);
    std::vector<Code> out(static_cast<std::size_t>(hi - lo), 0);
    for (long e = lo; e < hi; ++e) {
      Code x = code_at(e), y = b.code_at(e);
      out[static_cast<std::size_t>(e - lo)] = subtract ? f_->sub(x, y) : f_->add(x, y);
    }
    return from_codes(f_, lo, std::move(out), prec);
  }

  // out[k] = sum_{i+j=k} a[i] b[j] for k < out.size().
  static void convolve(const Field& f, const std::vector<Code>& a, const std::vector<Code>& b,
                       std::vector<Code>& out) {
    const std::size_t n = out.size();
    if (f.m() == 1) {
      const std::uint64_t p = static_cast<std::uint64_t>(f.p());
      std::vector<std::uint64_t> acc(n, 0);
      for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        const std::uint64_t ai = a[i];
        const std::size_t lim = std::min(b.size(), n - i);
        std::uint64_t* dst = acc.data() + i;
        for (std::size_t j = 0; j < lim; ++j) dst[j] += ai * b[j];
        if ((i & 0xffff) == 0xffff)
          for (auto& x : acc) x %= p;
      }
      for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<Code>(acc[k] % p);
      return;
    }
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
      if (a[i] == 0) continue;
      const std::size_t lim = std::min(b.size(), n - i);
      for (std::size_t j = 0; j < lim; ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }

  FieldPtr f_;
  long val_ = 0;
  long prec_ = 0;
  std::vector<Code> coef_;
};

// X -> X^p on the variable, coefficients fixed.
inline LaurentSeries frobenius_phi(const LaurentSeries& f) {
  const long p = f.field()->p();
  long prec = LaurentSeries::clamp(f.is_exact() ? LaurentSeries::kExact : f.precision() * p);
  if (f.is_zero()) return LaurentSeries(f.field(), prec);
  std::vector<Field::Code> c(static_cast<std::size_t>((f.support_end() - f.valuation() - 1) * p + 1), 0);
  for (long e = f.valuation(); e < f.support_end(); ++e) c[static_cast<std::size_t>((e - f.valuation()) * p)] = f.code_at(e);
  return LaurentSeries::from_codes(f.field(), f.valuation() * p, std::move(c), prec);
}

// Power series inverse of a unit u (u[0] != 0) modulo X^len.
inline std::vector<Field::Code> unit_inverse(const Field& fld, const LaurentSeries& u, long len) {
  std::vector<Field::Code> g(static_cast<std::size_t>(std::max(0L, len)), 0);
  if (len <= 0) return g;
  const long v = u.valuation();
  const Field::Code inv0 = fld.inv(u.code_at(v));
  const long ulen = std::min(len, u.support_end() - v);
  g[0] = inv0;
  if (fld.m() == 1) {
    const std::uint64_t p = static_cast<std::uint64_t>(fld.p());
    std::vector<std::uint64_t> uc(static_cast<std::size_t>(ulen));
    for (long j = 0; j < ulen; ++j) uc[static_cast<std::size_t>(j)] = u.code_at(v + j);
    for (long k = 1; k < len; ++k) {
      std::uint64_t s = 0;
      const long lim = std::min(k, ulen - 1);
      for (long j = 1; j <= lim; ++j) s += uc[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
      s %= p;
      g[static_cast<std::size_t>(k)] = static_cast<Field::Code>((p - s) % p * inv0 % p);
    }
    return g;
  }
  for (long k = 1; k < len; ++k) {
    Field::Code s = 0;
    const long lim = std::min(k, ulen - 1);
    for (long j = 1; j <= lim; ++j) s = fld.add(s, fld.mul(u.code_at(v + j), g[static_cast<std::size_t>(k - j)]));
    g[static_cast<std::size_t>(k)] = fld.mul(fld.neg(s), inv0);
  }
  return g;
}

// Multiplicative inverse. Exact non-monomial inputs need a finite cap on
// the output precision.
inline LaurentSeries invert(const LaurentSeries& f, long cap = LaurentSeries::kExact) {
  if (f.is_zero()) throw math_error("not invertible");
  const auto& fld = f.field();
  const long v = f.valuation();
  const bool monomial = f.support_end() == v + 1;
  if (f.is_exact() && monomial) return LaurentSeries::monomial(f.leading().inv(), -v);
  long out_prec = f.is_exact() ? cap : std::min(f.precision() - 2 * v, cap);
  if (out_prec >= LaurentSeries::kExact) {
    if (monomial) return LaurentSeries::monomial(f.leading().inv(), -v);
    throw math_error("insufficient precision");
  }
  long len = out_prec + v;
  if (len <= 0) return LaurentSeries(fld, out_prec);
  return LaurentSeries::from_codes(fld, -v, unit_inverse(*fld, f, len), out_prec);
}

inline LaurentSeries pow(const LaurentSeries& f, long long e, long cap = LaurentSeries::kExact) {
  if (e < 0) return pow(invert(f, cap), -e, cap);
  LaurentSeries result = LaurentSeries::one(f.field());
  LaurentSeries base = f.truncated(cap);
  while (e > 0) {
    if (e & 1) result = (result * base).truncated(cap);
    e >>= 1;
    if (e) base = (base * base).truncated(cap);
  }
  return result.truncated(cap);
}

namespace detail {

// (1+X)^n modulo X^len, coefficients via Lucas.
inline std::vector<Field::Code> binomial_row(const Field& f, const LucasTable& lucas, unsigned long long n,
                                             long len) {
  std::vector<Field::Code> r(static_cast<std::size_t>(std::max(0L, len)), 0);
  for (long k = 0; k < len; ++k) r[static_cast<std::size_t>(k)] = f.from_int(lucas(n, static_cast<unsigned long long>(k)));
  return r;
}

// Representative of c modulo p^M with p^M >= len, so that (1+X)^c mod X^len is unchanged.
inline unsigned long long reduce_unit(unsigned long long c, int p, long len) {
  unsigned long long pm = 1;
  while (pm < static_cast<unsigned long long>(std::max(1L, len))) pm *= static_cast<unsigned long long>(p);
  pm *= static_cast<unsigned long long>(p);
  unsigned long long r = c % pm;
  return r == 0 ? pm : r;
}

}  // namespace detail

// gamma_c(X) / X = ((1+X)^c - 1) / X modulo X^len.
inline LaurentSeries gamma_x_over_x(const FieldPtr& f, unsigned long long c, long len) {
  LucasTable lucas(f->p());
  unsigned long long cr = detail::reduce_unit(c, f->p(), len + 1);
  std::vector<Field::Code> u(static_cast<std::size_t>(std::max(0L, len)), 0);
  for (long k = 0; k < len; ++k) u[static_cast<std::size_t>(k)] = f->from_int(lucas(cr, static_cast<unsigned long long>(k + 1)));
  return LaurentSeries::from_codes(f, 0, std::move(u), len);
}

// f((1+X)^c - 1). Exact inputs other than constants need a finite cap.
// For c = p^k c' this is gamma_{c'} applied to f(X^{p^k}).
inline LaurentSeries gamma_act(unsigned long long c, const LaurentSeries& f, long cap = LaurentSeries::kExact) {
  const auto& fld = f.field();
  const int p = fld->p();
  if (c == 0) throw math_error("unit required");
  if (c % static_cast<unsigned long long>(p) == 0)
    return gamma_act(c / static_cast<unsigned long long>(p), frobenius_phi(f), cap);
  long out_prec = std::min(f.precision(), cap);
  if (f.is_zero()) return LaurentSeries(fld, out_prec);
  if (c == 1) return f.truncated(out_prec);
  if (out_prec >= LaurentSeries::kExact) {
    if (f.valuation() == 0 && f.support_end() == 1) return f;
    throw math_error("insufficient precision");
  }
  const long v = f.valuation();
  const long len = out_prec - v;
  if (len <= 0) return LaurentSeries(fld, out_prec);
  LucasTable lucas(p);
  const unsigned long long cr = detail::reduce_unit(c, p, len);

  // P(X) = X^{-v} f mod X^len; P((1+X)^c - 1) = Q((1+X)^c) with Q(Z) = P(Z - 1).
  std::vector<Field::Code> a(static_cast<std::size_t>(len), 0);
  for (long j = 0; j < len; ++j) a[static_cast<std::size_t>(j)] = f.code_at(v + j);
  long deg = len - 1;
  while (deg >= 0 && a[static_cast<std::size_t>(deg)] == 0) --deg;
  std::vector<Field::Code> b(static_cast<std::size_t>(deg + 1), 0);
  for (long j = 0; j <= deg; ++j) {
    if (a[static_cast<std::size_t>(j)] == 0) continue;
    for (long k = 0; k <= j; ++k) {
      int bin = lucas(static_cast<unsigned long long>(j), static_cast<unsigned long long>(k));
      if (bin == 0) continue;
      Field::Code term = fld->mul(a[static_cast<std::size_t>(j)], fld->from_int(((j - k) % 2 ? -bin : bin)));
      b[static_cast<std::size_t>(k)] = fld->add(b[static_cast<std::size_t>(k)], term);
    }
  }
  std::vector<Field::Code> out(static_cast<std::size_t>(len), 0);
  for (long k = 0; k <= deg; ++k) {
    if (b[static_cast<std::size_t>(k)] == 0) continue;
    const unsigned long long n = cr * static_cast<unsigned long long>(k);
    for (long i = 0; i < len; ++i) {
      int bin = lucas(n, static_cast<unsigned long long>(i));
      if (bin == 0) continue;
      out[static_cast<std::size_t>(i)] = fld->add(out[static_cast<std::size_t>(i)], fld->mul(b[static_cast<std::size_t>(k)], fld->from_int(bin)));
    }
  }
  LaurentSeries body = LaurentSeries::from_codes(fld, 0, std::move(out), len);
  if (v == 0) return body;
  LaurentSeries u = gamma_x_over_x(fld, cr, len);
  return (pow(u, v, len) * body).shifted(v).truncated(out_prec);
}

// The unique g in 1 + X k[[X]] with g^n = f.
inline LaurentSeries one_unit_root(const LaurentSeries& f, long long n, long cap = LaurentSeries::kExact) {
  const auto& fld = f.field();
  if (n < 1 || n % fld->p() == 0) throw math_error("root not unique");
  if (f.is_zero() || f.valuation() != 0 || !f.leading().is_one()) throw math_error("not a one-unit");
  long prec = std::min(f.precision(), cap);
  if (f.is_exact() && f.support_end() == 1) return LaurentSeries::one(fld, cap);
  if (prec >= LaurentSeries::kExact) throw math_error("insufficient precision");
  const FieldElem n_inv = FieldElem(fld, n).inv();
  LaurentSeries g = LaurentSeries::one(fld, 1);
  long have = 1;
  while (have < prec) {
    have = std::min(2 * have, prec);
    LaurentSeries gt = g.with_precision(have);
    LaurentSeries gn1 = pow(gt, n - 1, have);
    LaurentSeries corr = (f.truncated(have) * invert(gn1, have)).truncated(have) - gt;
    g = (gt + n_inv * corr).truncated(have);
  }
  return g.truncated(prec);
}

// f = sum_i (1+X)^i g_i(X^p); returns (g_0, ..., g_{p-1}).
inline std::vector<LaurentSeries> phi_basis_decompose(const LaurentSeries& f) {
  const auto& fld = f.field();
  const long p = fld->p();
  long out_prec = f.is_exact() ? LaurentSeries::kExact : div_floor(f.precision(), p);
  std::vector<LaurentSeries> g(static_cast<std::size_t>(p), LaurentSeries(fld, out_prec));
  if (f.is_zero()) return g;
  long lo = f.valuation();
  long hi = f.is_exact() ? f.support_end() : std::min(f.support_end(), f.precision());
  long qlo = div_floor(lo, p), qhi = div_floor(hi - 1, p) + 1;
  if (!f.is_exact()) qhi = std::min(qhi, out_prec);
  if (qhi <= qlo) return g;
  const std::size_t len = static_cast<std::size_t>(qhi - qlo);
  // Residue classes F_r(Y) = sum_q a_{pq + r} Y^q.
  std::vector<std::vector<Field::Code>> cls(static_cast<std::size_t>(p), std::vector<Field::Code>(len, 0));
  for (long e = lo; e < hi; ++e) {
    long q = div_floor(e, p), r = e - q * p;
    if (q >= qhi) continue;
    cls[static_cast<std::size_t>(r)][static_cast<std::size_t>(q - qlo)] = f.code_at(e);
  }
  LucasTable lucas(static_cast<int>(p));
  for (long i = 0; i < p; ++i) {
    std::vector<Field::Code> acc(len, 0);
    for (long r = i; r < p; ++r) {
      int bin = lucas(static_cast<unsigned long long>(r), static_cast<unsigned long long>(i));
      Field::Code coef = fld->from_int((r - i) % 2 ? -bin : bin);
      if (coef == 0) continue;
      for (std::size_t k = 0; k < len; ++k)
        acc[k] = fld->add(acc[k], fld->mul(coef, cls[static_cast<std::size_t>(r)][k]));
    }
    g[static_cast<std::size_t>(i)] = LaurentSeries::from_codes(fld, qlo, std::move(acc), out_prec);
  }
  return g;
}

// g(X^{p^k}).
inline LaurentSeries substitute_power(const LaurentSeries& g, int k) {
  LaurentSeries r = g;
  for (int i = 0; i < k; ++i) r = frobenius_phi(r);
  return r;
}

}  // namespace mmf
