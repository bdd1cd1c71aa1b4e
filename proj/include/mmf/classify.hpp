#pragma once

#include <optional>
#include <vector>

#include "mmf/galois.hpp"
#include "mmf/phigamma.hpp"

namespace mmf {

// Mirabolic cycle X^{s_i} F(v_i) = c_i v_{i+1}, gamma(v_i) = omega(gamma)^{a_i} v_i.
struct Cycle {
  int p = 3;
  std::vector<long long> s;
  std::vector<FieldElem> c;
  std::vector<long long> a;

  int n() const { return static_cast<int>(s.size()); }
  FieldPtr field() const { return c.front().field(); }
};

struct SSData {
  int p = 3;
  int r = 0;
  int rp = 0;
  std::vector<HChar> chi;
  std::vector<long long> s;
  std::vector<FieldElem> c;
  std::vector<std::pair<int, int>> weights;

  Cycle cycle() const {
    Cycle cy{p, s, c, {}};
    for (const auto& x : chi) cy.a.push_back(x.e1);
    return cy;
  }
};

inline int ss_rprime(int p, int r) {
  const int half = (p - 1) / 2;
  return r < half ? half - r : 3 * half - r;
}

inline SSData ss_data(int p, int r, FieldPtr f = nullptr) {
  if (!f) f = field_make(p);
  if (f->p() != p) throw math_error("field mismatch");
  const int half = (p - 1) / 2;
  if (r < 0 || r > p - 1) throw math_error("parameter range");
  if (r == half) throw math_error("excluded parameter");
  SSData d;
  d.p = p;
  d.r = r;
  d.rp = ss_rprime(p, r);
  const HChar chi = HChar::make(p, r, 0);
  d.chi = {chi, chi.swap().bracket(1, 0), chi.bracket(1, 1), chi.swap().bracket(0, 1)};
  d.weights = {{r, 0}, {d.rp, r}, {r, half}, {d.rp, r + half}};
  d.s = {d.rp, r, d.rp, r};
  auto sgn = [&](int e) { return FieldElem(f, e % 2 == 0 ? 1 : -1); };
  d.c = {sgn(r) * factorial(d.rp, f), sgn(half) * factorial(r, f), sgn(r + half) * factorial(d.rp, f),
         sgn(half) * factorial(r, f)};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (d.chi[static_cast<std::size_t>(i)] == d.chi[static_cast<std::size_t>(j)] &&
          d.s[static_cast<std::size_t>(i)] == d.s[static_cast<std::size_t>(j)])
        throw math_error("reducible cycle");
  return d;
}

inline CyclicForm dual_basis_form(const Cycle& cy) {
  const int n = cy.n();
  if (n < 1 || cy.c.size() != cy.s.size() || cy.a.size() != cy.s.size()) throw math_error("malformed cycle");
  bool positive = false;
  for (auto x : cy.s) {
    if (x < 0) throw math_error("negative exponent");
    positive = positive || x > 0;
  }
  if (!positive) throw math_error("finite-dimensional, dual vanishes");
  const auto f = cy.field();
  CyclicForm form;
  form.n = n;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    form.d.push_back(cy.c[k].inv());
    form.t.push_back(cy.s[k] - (cy.p - 1));
    form.b.push_back(mod_floor(-cy.a[k], cy.p - 1));
    form.noise.push_back(LaurentSeries::one(f));
  }
  form.validate();
  return form;
}

struct NormalForm {
  int n = 1;
  long long t = 0;
  FieldElem d;
  long long b1 = 0;
  // Change of basis f_i -> h_i f_i removing the noise, for audit.
  std::vector<LaurentSeries> h;

  bool operator==(const NormalForm& o) const { return n == o.n && t == o.t && d == o.d && b1 == o.b1; }
};

// Sum_j p^{n-j} x_j for j = 1..n.
inline long long weighted_sum(const std::vector<long long>& x, int p) {
  long long acc = 0;
  for (auto v : x) acc = acc * p + v;
  return acc;
}

inline NormalForm normalize_cyclic(const CyclicForm& form, long precision) {
  if (form.n < 1 || form.d.size() != static_cast<std::size_t>(form.n) || form.t.size() != form.d.size())
    throw math_error("malformed cyclic form");
  const int p = form.p();
  const long long T = weighted_sum(form.t, p);
  if (mod_floor(T, p - 1) != 0) throw math_error("inconsistent Gamma data");
  form.validate();
  NormalForm nf;
  nf.n = form.n;
  nf.t = -T / (p - 1);
  nf.d = form.d.front();
  for (std::size_t i = 1; i < form.d.size(); ++i) nf.d = nf.d * form.d[i];
  nf.b1 = mod_floor(form.b.front(), p - 1);
  // h_i = prod_{j >= 1} g_{i-j}(X^{p^{j-1}}), truncated once X^{p^{j-1}} passes the precision.
  int factors = 1;
  for (long long pj = 1; pj < precision; pj *= p) ++factors;
  const auto f = form.d.front().field();
  for (int i = 0; i < form.n; ++i) {
    LaurentSeries acc = LaurentSeries::one(f, precision);
    for (int j = 1; j <= factors; ++j) {
      const auto& g = form.noise[static_cast<std::size_t>(mod_floor(i - j, form.n))];
      acc = (acc * substitute_power(g.truncated(precision), j - 1)).truncated(precision);
    }
    nf.h.push_back(acc);
  }
  return nf;
}

// The Galois parameter read off a normal form: omega^{b1} mu (x) Ind(omega_n^t), Lam = d.
inline InducedParams normal_form_params(const NormalForm& nf) {
  return InducedParams::with_twist(nf.n, nf.t, nf.b1, nf.d);
}

inline InducedParams galois_of_cycle(const Cycle& cy, long long a1) {
  const int p = cy.p;
  const long long S = weighted_sum(cy.s, p);
  if (mod_floor(S, p - 1) != 0) throw math_error("inconsistent Gamma data");
  FieldElem lam = cy.c.front();
  for (std::size_t i = 1; i < cy.c.size(); ++i) lam = lam * cy.c[i];
  return InducedParams::with_twist(cy.n(), S / (p - 1), a1 - 1, lam);
}

inline InducedParams galois_of_cycle(const SSData& d) { return galois_of_cycle(d.cycle(), d.chi.front().e1); }

// omega^{r-1} mu (x) Ind(omega_4^{(p^2+1)/2 s'}), lambda^4 = (-1)^{(p-1)/2} (r!)^2 (r'!)^2.
inline InducedParams ss_closed_form(int p, int r, FieldPtr f = nullptr) {
  if (!f) f = field_make(p);
  const int half = (p - 1) / 2;
  if (r < 0 || r > p - 1) throw math_error("parameter range");
  if (r == half) throw math_error("excluded parameter");
  const int rp = ss_rprime(p, r);
  const long long sprime = r < half ? p - 2 * r : 3 * p - 2 * r;
  const FieldElem rf = factorial(r, f), rpf = factorial(rp, f);
  const FieldElem lam = FieldElem(f, half % 2 == 0 ? 1 : -1) * rf * rf * rpf * rpf;
  return InducedParams::with_twist(4, (static_cast<long long>(p) * p + 1) / 2 * sprime, r - 1, lam);
}

// e(i) and e(i)_m for 1-based i.
inline std::pair<long long, long long> e_exponents(const Cycle& cy, int i, int m) {
  if (m < 1) throw math_error("level must be positive");
  const int n = cy.n();
  long long e = 0;
  for (int j = 0; j < n; ++j) e = e * cy.p + cy.s[static_cast<std::size_t>(mod_floor(i - 1 + j, n))];
  const long long pn = ipow(cy.p, static_cast<unsigned>(n));
  __int128 geo = 0, pw = 1;
  for (int k = 0; k < m; ++k) {
    geo += pw;
    pw *= pn;
  }
  const __int128 em = static_cast<__int128>(e) * geo;
  if (em > static_cast<__int128>(1) << 62) throw math_error("level too large");
  return {e, static_cast<long long>(em)};
}

inline std::pair<long long, long long> e_exponents(const SSData& d, int i, int m) {
  return e_exponents(d.cycle(), i, m);
}

struct DualSimulation {
  int level = 1;
  long long e = 0;
  long long e_m = 0;
  // phi(f_i) = mu f_{i+1}; unit = mu X^{(p-1) - s_i}.
  LaurentSeries mu;
  LaurentSeries unit;
  long long exponent = 0;
};

namespace detail {

// Dual Frobenius on the top W + 1 basis vectors of pi_{i,m}:
// returns h_a, a <= W, with (g f_{i+1}) o F = sum_a h_a X^a f_i.
inline std::vector<FieldElem> dual_frobenius_window(const Cycle& cy, int i, int m, long long window,
                                                    const std::vector<FieldElem>& g) {
  const int n = cy.n();
  const auto k = static_cast<std::size_t>(i - 1);
  const long long p = cy.p;
  const auto [e_i, e_im] = e_exponents(cy, i, m);
  const int inext = i % n + 1;
  const auto [e_n, e_nm1] = e_exponents(cy, inext, m + 1);
  (void)e_i;
  const long long pnm = ipow(p, static_cast<unsigned>(n * m));
  const long long shift = pnm * (e_n - cy.s[k]);
  std::vector<FieldElem> h;
  const auto f = cy.field();
  for (long long a = 0; a <= window; ++a) {
    const long long d = e_im - a;
    // F(b_{m,d}) = c_i b'_{m+1, pd + shift}; the functional g f_{i+1} reads
    // coefficient e'_{m+1} - index of g.
    const long long idx = p * d + shift;
    FieldElem val(f, 0);
    if (idx <= e_nm1) {
      const long long gi = e_nm1 - idx;
      if (gi < static_cast<long long>(g.size())) val = cy.c[k] * g[static_cast<std::size_t>(gi)];
      else throw math_error("window too small");
    }
    h.push_back(val);
  }
  return h;
}

}  // namespace detail

inline int simulation_level(const Cycle& cy, int i, long K) {
  const long long need = static_cast<long long>(cy.p) * K + (cy.p - 1);
  for (int m = 1;; ++m)
    if (e_exponents(cy, i, m).second >= need) return m;
}

// phi(f_i) on the localized dual of the finite-level model, to K digits of the unit part.
inline DualSimulation simulate_dual_frobenius(const Cycle& cy, int i, long K, std::optional<int> level = {}) {
  if (i < 1 || i > cy.n()) throw math_error("index range");
  if (K < 1) throw math_error("precision must be positive");
  const int p = cy.p;
  const long long W = static_cast<long long>(p) * K + (p - 1);
  const int m = level ? *level : simulation_level(cy, i, K);
  DualSimulation out;
  out.level = m;
  std::tie(out.e, out.e_m) = e_exponents(cy, i, m);
  if (out.e_m < W) throw math_error("window too small");
  const auto f = cy.field();
  const auto k = static_cast<std::size_t>(i - 1);
  const long long s = cy.s[k];
  // nu = phi(f_i)^{-1} f_{i+1}-coefficient: nu = sum_j (1+X)^j phi(nu_j),
  // nu_j = psi((1+X)^{-j} f_{i+1}) read off the dual Frobenius.
  const long len_nu = static_cast<long>(K / p + 3);
  const long long glen = p * static_cast<long long>(len_nu) + s + 1;
  LaurentSeries nu(f, LaurentSeries::kExact);
  const LaurentSeries onex = LaurentSeries::from_ints(f, 0, {1, 1}, LaurentSeries::kExact);
  LaurentSeries onex_pow = LaurentSeries::one(f);
  const LaurentSeries onex_inv = invert(onex, glen);
  LaurentSeries gser = LaurentSeries::one(f, glen);
  for (int j = 0; j < p; ++j) {
    std::vector<FieldElem> g;
    for (long long a = 0; a < glen; ++a) g.push_back(gser.coeff(a));
    const auto h = detail::dual_frobenius_window(cy, i, m, len_nu - 1, g);
    std::vector<Field::Code> codes;
    for (const auto& x : h) codes.push_back(x.code());
    const LaurentSeries nu_j = LaurentSeries::from_codes(f, 0, std::move(codes), len_nu);
    nu = nu + onex_pow * frobenius_phi(nu_j);
    onex_pow = onex_pow * onex;
    gser = (gser * onex_inv).truncated(glen);
  }
  out.mu = invert(nu);
  out.exponent = s - (p - 1);
  out.unit = out.mu.shifted(-out.exponent).truncated(K);
  return out;
}

inline DualSimulation simulate_dual_frobenius(const SSData& d, int i, long K, std::optional<int> level = {}) {
  return simulate_dual_frobenius(d.cycle(), i, K, level);
}

// gamma_c(f_i) = h f_i on the same model, to K digits.
inline LaurentSeries simulate_dual_gamma(const Cycle& cy, int i, unsigned long long c, long K,
                                         std::optional<int> level = {}) {
  if (i < 1 || i > cy.n()) throw math_error("index range");
  const int p = cy.p;
  if (c % static_cast<unsigned long long>(p) == 0) throw math_error("unit required");
  const int m = level ? *level : simulation_level(cy, i, K);
  const auto [e, e_m] = e_exponents(cy, i, m);
  if (e_m < K) throw math_error("window too small");
  const auto f = cy.field();
  // c^{-1} modulo p^M with p^M >= K.
  unsigned long long pm = static_cast<unsigned long long>(p);
  while (pm < static_cast<unsigned long long>(K) + 1) pm *= static_cast<unsigned long long>(p);
  const unsigned long long cinv = static_cast<unsigned long long>(inv_mod(static_cast<long long>(c % pm), static_cast<long long>(pm)));
  const LaurentSeries u = gamma_x_over_x(f, cinv, K);
  const FieldElem chi_inv = FieldElem(f, static_cast<long long>(c % static_cast<unsigned long long>(p)))
                                .pow(cy.a[static_cast<std::size_t>(i - 1)])
                                .inv();
  std::vector<Field::Code> codes;
  for (long a = 0; a < K; ++a) codes.push_back((chi_inv * pow(u, e_m - a, K).coeff(a)).code());
  return LaurentSeries::from_codes(f, 0, std::move(codes), K);
}

}  // namespace mmf
