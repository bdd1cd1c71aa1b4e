#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace mmf {

inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long div_floor(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long ipow(long long base, unsigned e) {
  long long r = 1;
  while (e--) r *= base;
  return r;
}

inline long long pow_mod(long long base, long long e, long long m) {
  long long r = 1 % m;
  base = mod_floor(base, m);
  while (e > 0) {
    if (e & 1) r = static_cast<long long>((__int128)r * base % m);
    base = static_cast<long long>((__int128)base * base % m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m; a must be coprime to m.
inline long long inv_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
  while (a1 != 0) {
    long long q = g / a1;
    long long t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return mod_floor(x, m);
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Base-p digits, least significant first.
inline std::vector<int> digits_base(unsigned long long n, int p) {
  std::vector<int> d;
  while (n > 0) {
    d.push_back(static_cast<int>(n % p));
    n /= p;
  }
  return d;
}

// binom(n, k) mod p via Lucas' theorem.
class LucasTable {
 public:
  explicit LucasTable(int p) : p_(p), t_(static_cast<std::size_t>(p) * p, 0) {
    for (int n = 0; n < p; ++n) {
      t_[idx(n, 0)] = 1;
      for (int k = 1; k <= n; ++k)
        t_[idx(n, k)] = (t_[idx(n - 1, k - 1)] + (k <= n - 1 ? t_[idx(n - 1, k)] : 0)) % p;
    }
  }

  int operator()(unsigned long long n, unsigned long long k) const {
    if (k > n) return 0;
    int r = 1;
    while (k > 0 || n > 0) {
      int nd = static_cast<int>(n % p_), kd = static_cast<int>(k % p_);
      if (kd > nd) return 0;
      r = r * t_[idx(nd, kd)] % p_;
      n /= p_;
      k /= p_;
    }
    return r;
  }

  int p() const { return p_; }

 private:
  std::size_t idx(int n, int k) const { return static_cast<std::size_t>(n) * p_ + k; }
  int p_;
  std::vector<int> t_;
};

}  // namespace mmf
