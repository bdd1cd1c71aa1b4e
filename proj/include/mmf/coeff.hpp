#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "mmf/arith.hpp"
#include "mmf/error.hpp"
#include "mmf/rational.hpp"

namespace mmf {

// The finite field F_{p^m} = F_p[a]/(modulus). Elements are encoded as
// integers sum c_i p^i over their coefficient vectors.
class Field {
 public:
  using Code = std::uint32_t;

  Field(int p, int m) : p_(p), m_(m) {
    if (p == 2 || !is_prime(p)) throw math_error("odd prime required");
    if (m < 1) throw math_error("degree must be positive");
    q_ = static_cast<Code>(ipow(p, static_cast<unsigned>(m)));
    modulus_ = least_irreducible();
    build_tables();
  }

  int p() const { return p_; }
  int m() const { return m_; }
  Code order() const { return q_; }
  // Monic modulus, constant term first (size m + 1).
  const std::vector<int>& modulus() const { return modulus_; }

  Code from_int(long long n) const { return static_cast<Code>(mod_floor(n, p_)); }

  std::vector<int> digits(Code c) const {
    std::vector<int> d(m_);
    for (int i = 0; i < m_; ++i) {
      d[i] = static_cast<int>(c % p_);
      c /= p_;
    }
    return d;
  }

  Code from_digits(std::span<const int> d) const {
    if (static_cast<int>(d.size()) != m_) throw math_error("coefficient count mismatch");
    Code c = 0;
    for (int i = m_ - 1; i >= 0; --i) c = c * p_ + static_cast<Code>(mod_floor(d[i], p_));
    return c;
  }

  Code add(Code a, Code b) const {
    if (m_ == 1) return (a + b) % p_;
    Code r = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  Code neg(Code a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    Code r = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      r += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }

  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<Code>(static_cast<std::uint64_t>(a) * b % p_);
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  Code inv(Code a) const {
    if (a == 0) throw math_error("zero inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Code pow(Code a, long long e) const {
    if (a == 0) {
      if (e < 0) throw math_error("zero inverse");
      return e == 0 ? 1 : 0;
    }
    long long k = mod_floor(static_cast<long long>(log_[a]) * mod_floor(e, q_ - 1), q_ - 1);
    return exp_[k];
  }

  // Discrete logarithm with respect to the fixed generator.
  Code log(Code a) const {
    if (a == 0) throw math_error("zero inverse");
    return log_[a];
  }
  Code generator() const { return exp_[1 % (q_ - 1)]; }

 private:
  // Product of two coefficient vectors reduced modulo an arbitrary monic polynomial.
  std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& mod) const {
    int deg = static_cast<int>(mod.size()) - 1;
    std::vector<int> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    for (int k = static_cast<int>(r.size()) - 1; k >= deg; --k) {
      int c = r[k];
      if (c == 0) continue;
      for (int i = 0; i <= deg; ++i) r[k - deg + i] = static_cast<int>(mod_floor(r[k - deg + i] - c * mod[i], p_));
    }
    r.resize(deg);
    return r;
  }

  // Remainder of a modulo monic b.
  std::vector<int> polyrem(std::vector<int> a, const std::vector<int>& b) const {
    int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
      int c = a[k];
      if (c == 0) continue;
      for (int i = 0; i <= db; ++i) a[k - db + i] = static_cast<int>(mod_floor(a[k - db + i] - c * b[i], p_));
    }
    a.resize(std::max(db, 0));
    return a;
  }

  bool irreducible(const std::vector<int>& f) const {
    int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
      long long count = ipow(p_, static_cast<unsigned>(d));
      for (long long k = 0; k < count; ++k) {
        std::vector<int> g(d + 1);
        long long t = k;
        for (int i = 0; i < d; ++i) {
          g[i] = static_cast<int>(t % p_);
          t /= p_;
        }
        g[d] = 1;
        auto r = polyrem(f, g);
        if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) return false;
      }
    }
    return true;
  }

  // Monic polynomials X^m + a_{m-1}X^{m-1} + ... + a_0 enumerated in
  // lexicographic order of (a_{m-1}, ..., a_0).
  std::vector<int> least_irreducible() const {
    for (Code k = 0; k < q_; ++k) {
      std::vector<int> f(m_ + 1);
      Code t = k;
      for (int i = 0; i < m_; ++i) {
        f[i] = static_cast<int>(t % p_);
        t /= p_;
      }
      f[m_] = 1;
      if (irreducible(f)) return f;
    }
    throw math_error("no irreducible polynomial");
  }

  void build_tables() {
    if (m_ == 1) {
      // Smallest primitive root modulo p.
      for (int g = 1; g < p_; ++g) {
        bool prim = true;
        for (int d = 1; d < p_ - 1 && prim; ++d)
          if ((p_ - 1) % d == 0 && pow_mod(g, d, p_) == 1) prim = false;
        if (prim) {
          fill_tables([&](const std::vector<int>& a) {
            return std::vector<int>{static_cast<int>(a[0] * static_cast<long long>(g) % p_)};
          });
          return;
        }
      }
    }
    for (Code cand = 2; cand < q_; ++cand) {
      auto g = digits(cand);
      Code x = 1;
      std::vector<int> cur = digits(1);
      Code ord = 0;
      do {
        cur = polymulmod(cur, g, modulus_);
        x = from_digits(cur);
        ++ord;
      } while (x != 1 && ord < q_);
      if (ord == q_ - 1) {
        fill_tables([&](const std::vector<int>& a) { return polymulmod(a, g, modulus_); });
        return;
      }
    }
    throw math_error("no generator");
  }

  template <class Step>
  void fill_tables(Step step) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::vector<int> cur = digits(1);
    for (Code k = 0; k + 1 < q_; ++k) {
      Code c = from_digits(cur);
      exp_[k] = c;
      log_[c] = k;
      cur = step(cur);
    }
  }

  int p_, m_;
  Code q_;
  std::vector<int> modulus_;
  std::vector<Code> exp_, log_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Fields are cached so equal (p, m) share one instance.
inline FieldPtr field_make(int p, int m = 1) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(p, m);
  cache.emplace(key, f);
  return f;
}

inline bool same_field(const Field& a, const Field& b) { return a.p() == b.p() && a.m() == b.m(); }

class FieldElem {
 public:
  using Code = Field::Code;

  FieldElem() = default;
  FieldElem(FieldPtr f, long long n) : f_(std::move(f)), c_(f_->from_int(n)) {}
  static FieldElem from_code(FieldPtr f, Code c) {
    FieldElem e;
    e.f_ = std::move(f);
    e.c_ = c;
    return e;
  }
  static FieldElem from_coeffs(FieldPtr f, std::span<const int> coeffs) {
    Code c = f->from_digits(coeffs);
    return from_code(std::move(f), c);
  }

  const FieldPtr& field() const { return f_; }
  Code code() const { return c_; }
  std::vector<int> coeffs() const { return f_->digits(c_); }
  bool is_zero() const { return c_ == 0; }
  bool is_one() const { return c_ == 1; }

  FieldElem operator+(const FieldElem& o) const { check(o); return from_code(f_, f_->add(c_, o.c_)); }
  FieldElem operator-(const FieldElem& o) const { check(o); return from_code(f_, f_->sub(c_, o.c_)); }
  FieldElem operator-() const { return from_code(f_, f_->neg(c_)); }
  FieldElem operator*(const FieldElem& o) const { check(o); return from_code(f_, f_->mul(c_, o.c_)); }
  FieldElem operator/(const FieldElem& o) const { check(o); return from_code(f_, f_->mul(c_, f_->inv(o.c_))); }
  FieldElem inv() const { return from_code(f_, f_->inv(c_)); }
  FieldElem pow(long long e) const { return from_code(f_, f_->pow(c_, e)); }

  bool operator==(const FieldElem& o) const { return c_ == o.c_ && same_field(*f_, *o.f_); }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  // Compact text form: "c" in a prime field, "(c0,c1,...)" otherwise.
  std::string str() const {
    if (f_->m() == 1) return std::to_string(c_);
    std::string s = "(";
    auto d = coeffs();
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
  }

 private:
  void check(const FieldElem& o) const {
    if (!same_field(*f_, *o.f_)) throw math_error("field mismatch");
  }
  FieldPtr f_;
  Code c_ = 0;
};

// Ordering by coefficient vector, constant term first.
inline bool coeff_less(const FieldElem& a, const FieldElem& b) { return a.coeffs() < b.coeffs(); }

inline std::vector<FieldElem> nth_roots(const FieldElem& x, long long n) {
  if (x.is_zero()) throw math_error("nonzero required");
  if (n < 1) throw math_error("positive exponent required");
  std::vector<FieldElem> out;
  const auto& f = x.field();
  for (Field::Code c = 1; c < f->order(); ++c)
    if (f->pow(c, n) == x.code()) out.push_back(FieldElem::from_code(f, c));
  std::sort(out.begin(), out.end(), coeff_less);
  return out;
}

inline FieldElem omega_of_unit(const Rational& u, const FieldPtr& f) {
  return FieldElem(f, unit_residue(u, f->p()));
}

inline FieldElem factorial(int r, const FieldPtr& f) {
  FieldElem acc(f, 1);
  for (int i = 2; i <= r; ++i) acc = acc * FieldElem(f, i);
  return acc;
}

// Parses "c" (an integer) or "(c0,c1,...)" / "[c0,c1,...]".
inline FieldElem parse_field_elem(const std::string& s, const FieldPtr& f) {
  if (s.empty()) throw math_error("malformed field element");
  if (s.front() == '(' || s.front() == '[') {
    std::vector<int> d;
    std::string cur;
    for (std::size_t i = 1; i < s.size(); ++i) {
      char ch = s[i];
      if (ch == ',' || ch == ')' || ch == ']') {
        if (!cur.empty()) d.push_back(std::stoi(cur));
        cur.clear();
      } else if (ch != ' ') {
        cur += ch;
      }
    }
    d.resize(f->m(), 0);
    return FieldElem::from_coeffs(f, d);
  }
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw math_error("malformed field element");
    return FieldElem(f, v);
  } catch (const std::logic_error&) {
    throw math_error("malformed field element");
  }
}

}  // namespace mmf
