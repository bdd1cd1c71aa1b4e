#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mmf/meta.hpp"
#include "mmf/sampling.hpp"

namespace mmf {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace selftest {

inline SeriesVector random_vector(Sampler& s, const FieldPtr& f, std::size_t n, long val, long prec) {
  SeriesVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(s.series(f, val, prec));
  return v;
}

inline bool field_inverses(std::uint64_t) {
  for (auto [p, m] : {std::pair{5, 2}, std::pair{3, 3}, std::pair{7, 1}}) {
    auto f = field_make(p, m);
    for (Field::Code c = 1; c < f->order(); ++c) {
      auto a = FieldElem::from_code(f, c);
      if (!(a * a.inv()).is_one()) return false;
    }
  }
  return true;
}

inline bool nth_root_counts(std::uint64_t) {
  auto f = field_make(5, 2);
  const long long q1 = f->order() - 1;
  for (long long n : {2, 3, 4, 6, 8}) {
    std::set<Field::Code> powers;
    for (Field::Code c = 1; c < f->order(); ++c) powers.insert(FieldElem::from_code(f, c).pow(n).code());
    for (Field::Code c = 1; c < f->order(); ++c) {
      auto x = FieldElem::from_code(f, c);
      auto roots = nth_roots(x, n);
      const std::size_t expect = powers.count(c) ? static_cast<std::size_t>(std::gcd(n, q1)) : 0;
      if (roots.size() != expect) return false;
      for (const auto& y : roots)
        if (!(y.pow(n) == x)) return false;
    }
  }
  return true;
}

inline bool omega_multiplicative(std::uint64_t seed) {
  for (int p : {3, 5, 7}) {
    auto f = field_make(p);
    Sampler s(p, seed);
    for (int i = 0; i < 200; ++i) {
      auto u = s.unit(), v = s.unit();
      if (!(omega_of_unit(u * v, f) == omega_of_unit(u, f) * omega_of_unit(v, f))) return false;
    }
  }
  return true;
}

inline bool series_reassembly(std::uint64_t seed) {
  for (int p : {3, 5}) {
    auto f = field_make(p, p == 3 ? 2 : 1);
    Sampler s(p, seed);
    for (int i = 0; i < 20; ++i) {
      auto x = s.series(f, -7, 40);
      auto parts = phi_basis_decompose(x);
      LaurentSeries acc(f, LaurentSeries::kExact);
      LaurentSeries onex = LaurentSeries::from_ints(f, 0, {1, 1}, LaurentSeries::kExact);
      LaurentSeries pw = LaurentSeries::one(f);
      for (const auto& g : parts) {
        acc = acc + pw * frobenius_phi(g);
        pw = pw * onex;
      }
      if (!agree(acc, x)) return false;
    }
  }
  return true;
}

inline bool gamma_composition(std::uint64_t seed) {
  for (int p : {3, 5}) {
    auto f = field_make(p);
    Sampler s(p, seed);
    for (int i = 0; i < 10; ++i) {
      auto x = s.series(f, 0, 30);
      const auto c1 = static_cast<unsigned long long>(s.uniform(1, 50)), c2 = static_cast<unsigned long long>(s.uniform(1, 50));
      if (c1 % p == 0 || c2 % p == 0) continue;
      if (!agree(gamma_act(c1, gamma_act(c2, x)), gamma_act(c1 * c2, x))) return false;
      if (!agree(frobenius_phi(gamma_act(c1, x)), gamma_act(c1, frobenius_phi(x)))) return false;
    }
  }
  return true;
}

inline bool one_unit_roots(std::uint64_t seed) {
  for (int p : {3, 5}) {
    auto f = field_make(p, 2);
    Sampler s(p, seed);
    for (long long n : {2LL, 4LL, 80LL}) {
      if (n % p == 0) continue;
      auto u = s.one_unit(f, 30);
      if (!agree(pow(one_unit_root(u, n), n), u)) return false;
    }
  }
  return true;
}

inline bool cocycle_identity(std::uint64_t seed) {
  for (int p : {3, 5}) {
    Sampler s(p, seed);
    for (int i = 0; i < 300; ++i) {
      auto g1 = s.matrix(), g2 = s.matrix(), g3 = s.matrix();
      if (cocycle(g1, g2, p) * cocycle(g1 * g2, g3, p) != cocycle(g1, g2 * g3, p) * cocycle(g2, g3, p)) return false;
    }
  }
  return true;
}

inline bool hilbert_laws(std::uint64_t seed) {
  for (int p : {3, 5, 7}) {
    Sampler s(p, seed);
    for (int i = 0; i < 300; ++i) {
      auto a = s.nonzero(), b = s.nonzero(), c = s.nonzero();
      if (hilbert(a, b, p) != hilbert(b, a, p)) return false;
      if (hilbert(a * c, b, p) != hilbert(a, b, p) * hilbert(c, b, p)) return false;
      if (hilbert(a, -a, p) != 1) return false;
      if (hilbert(a * c * c, b, p) != hilbert(a, b, p)) return false;
    }
  }
  return true;
}

inline bool kappa_homomorphism(std::uint64_t seed) {
  for (int p : {3, 5}) {
    Sampler s(p, seed);
    for (int i = 0; i < 300; ++i) {
      auto g1 = s.k_matrix(), g2 = s.k_matrix();
      const int z1 = s.sign(), z2 = s.sign();
      if (!(kappa_split(g1 * g2, z1 * z2, p) == meta_mul(kappa_split(g1, z1, p), kappa_split(g2, z2, p), p))) return false;
    }
  }
  return true;
}

inline bool conjugation_law(std::uint64_t seed) {
  for (int p : {3, 5}) {
    Sampler s(p, seed);
    for (int i = 0; i < 300; ++i) {
      auto z = s.nonzero();
      MetaElem zt{PMatrix::scalar(z), s.sign()};
      MetaElem gt{s.matrix(), s.sign()};
      auto conj = meta_mul(meta_mul(zt, gt, p), meta_inverse(zt, p), p);
      if (!(conj == MetaElem{gt.g, gt.zeta * chi_z(z, p).evaluate(gt.g.det(), p)})) return false;
      auto x = s.nonzero();
      if (chi_z(z, p).evaluate(x, p) != hilbert(z, x, p)) return false;
    }
  }
  return true;
}

inline bool chi_z_surjective(std::uint64_t seed) {
  for (int p : {3, 5, 7}) {
    const auto reps = square_class_reps(p);
    std::set<std::vector<int>> images;
    for (const auto& z : reps) {
      std::vector<int> vals;
      for (const auto& x : reps) vals.push_back(chi_z(z, p).evaluate(x, p));
      images.insert(vals);
    }
    if (images.size() != 4) return false;
    Sampler s(p, seed);
    for (int i = 0; i < 100; ++i) {
      auto z1 = s.nonzero(), z2 = s.nonzero();
      for (const auto& x : reps)
        if (chi_z(z1 * z2, p).evaluate(x, p) != chi_z(z1, p).evaluate(x, p) * chi_z(z2, p).evaluate(x, p)) return false;
    }
  }
  return true;
}

inline bool center_is_squares(std::uint64_t seed) {
  for (int p : {3, 5}) {
    Sampler s(p, seed);
    std::vector<MetaElem> samples;
    for (int i = 0; i < 40; ++i) samples.push_back({s.matrix(), s.sign()});
    for (const auto& z : square_class_reps(p))
      for (const Rational& scale : {Rational(1), Rational(4), Rational(p * p)}) {
        MetaElem zt{PMatrix::scalar(z * scale), 1};
        bool central = true;
        for (const auto& g : samples) central = central && meta_mul(zt, g, p) == meta_mul(g, zt, p);
        if (central != (z == 1)) return false;
      }
  }
  return true;
}

inline bool restriction_kernel(std::uint64_t) {
  auto f = field_make(5, 2);
  const auto quad = quadratic_chars(f);
  const auto fam = tame_family(f);
  for (const auto& chi : fam) {
    const bool in_kernel = restrict_S(chi) == SChar::trivial(f);
    const bool quadratic = std::find(quad.begin(), quad.end(), chi) != quad.end();
    if (in_kernel != quadratic) return false;
  }
  for (std::size_t i = 0; i < fam.size(); i += 11)
    for (std::size_t j = 0; j < fam.size(); j += 13)
      if (!(restrict_S(fam[i] * fam[j]) == restrict_S(fam[i]) * restrict_S(fam[j]))) return false;
  return true;
}

inline bool bracket_swap(std::uint64_t) {
  for (int p : {3, 5, 7})
    for (int e1 = 0; e1 < p - 1; ++e1)
      for (int e2 = 0; e2 < p - 1; ++e2)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            auto chi = HChar::make(p, e1, e2);
            if (!(chi.swap().bracket(i, j) == chi.bracket(j, i).swap())) return false;
          }
  return true;
}

inline bool phi_gamma_commutation(std::uint64_t seed) {
  for (auto [p, n, h] : {std::tuple{3, 2, 5}, std::tuple{3, 4, 5}, std::tuple{5, 1, 3}}) {
    auto f = field_make(p);
    Sampler s(p, seed);
    const long N = 30;
    std::vector<PhiGammaModule> mods{make_induced(n, h, FieldElem(f, 2), 1, N)};
    mods.push_back(twist(mods[0], TameChar::make(FieldElem(f, -1), 1)));
    mods.push_back(dual(mods[0]));
    mods.push_back(make_rank1(TameChar::make(FieldElem(f, 2), 1), N));
    for (const auto& d : mods)
      for (unsigned long long c : {2ULL, 1ULL + static_cast<unsigned long long>(p)}) {
        auto [lhs, rhs] = commutation_sides(d, c, random_vector(s, f, d.rank, 0, N));
        if (!agree(lhs, rhs)) return false;
      }
  }
  return true;
}

inline bool projection_formulas(std::uint64_t seed) {
  for (auto [p, n, h] : {std::tuple{3, 2, 5}, std::tuple{5, 4, 39}}) {
    auto f = field_make(p);
    auto d = make_induced(n, h, FieldElem(f, 2), 1, 40);
    Sampler s(p, seed);
    for (int trial = 0; trial < 5; ++trial) {
      auto v = random_vector(s, f, d.rank, -2, 40);
      if (!agree(psi(d, apply_phi(d, v)), v)) return false;
      auto g = s.series(f, -3, 3 * p);
      auto fv = apply_phi(d, v);
      for (auto& x : fv) x = g * x;
      const auto pr = psi_ring(g);
      SeriesVector rhs;
      for (auto& x : v) rhs.push_back(pr * x);
      if (!agree(psi(d, fv), rhs)) return false;
      auto w = random_vector(s, f, d.rank, 0, 40 * p);
      auto hs = s.series(f, -1, 40);
      SeriesVector scaled;
      for (auto& x : w) scaled.push_back(frobenius_phi(hs) * x);
      SeriesVector rhs2;
      for (auto& x : psi(d, w)) rhs2.push_back(hs * x);
      if (!agree(psi(d, scaled), rhs2)) return false;
    }
  }
  return true;
}

inline bool psi_gamma_equivariance(std::uint64_t seed) {
  auto f = field_make(3);
  auto d = make_induced(2, 5, FieldElem(f, 1), 0, 50);
  Sampler s(3, seed);
  for (int trial = 0; trial < 3; ++trial) {
    auto v = random_vector(s, f, 2, 0, 50);
    for (unsigned long long c : {2ULL, 4ULL}) {
      auto pv = psi(d, v);
      if (!agree(psi(d, apply_gamma(d, c, v, 50)), apply_gamma(d, c, pv, precision_of(pv)))) return false;
    }
  }
  return true;
}

inline bool rank1_lattice(std::uint64_t) {
  auto f = field_make(5);
  const long N = 40;
  auto chi = TameChar::make(FieldElem(f, 3), 2);
  auto d = make_rank1(chi, N);
  for (long a = 0; a < N; ++a) {
    auto r = psi(d, {LaurentSeries::x_power(f, a, N)});
    if (!(r[0].is_zero() || r[0].valuation() >= 0)) return false;
    if (a % 5 == 0 && !agree(r[0], LaurentSeries::monomial(chi.unram.inv(), a / 5))) return false;
  }
  return true;
}

inline bool two_routes(std::uint64_t) {
  for (int p : {3, 5, 7})
    for (int r : admissible_r(p))
      if (!(galois_of_cycle(ss_data(p, r)) == ss_closed_form(p, r))) return false;
  return true;
}

inline bool duality_consistency(std::uint64_t) {
  for (int p : {3, 5, 7})
    for (int r : admissible_r(p)) {
      auto d = ss_data(p, r);
      auto nf = normalize_cyclic(dual_basis_form(d.cycle()), 10);
      if (!iso_test(dual(normal_form_params(nf)), galois_of_cycle(d))) return false;
    }
  return true;
}

inline bool simulation_containment(std::uint64_t) {
  for (int p : {3, 5})
    for (int r : admissible_r(p)) {
      auto d = ss_data(p, r);
      for (int i = 1; i <= 4; ++i) {
        auto sim = simulate_dual_frobenius(d, i, 4);
        const auto& ci = d.c[static_cast<std::size_t>(i - 1)];
        if (sim.mu.valuation() != d.s[static_cast<std::size_t>(i - 1)] - (p - 1)) return false;
        if (sim.unit.precision() < 4 || !(sim.unit.leading() * ci).is_one()) return false;
      }
    }
  return true;
}

inline bool normalization_noise(std::uint64_t seed) {
  for (int p : {3, 5}) {
    auto f = field_make(p);
    Sampler s(p, seed);
    for (int r : admissible_r(p)) {
      auto clean = dual_basis_form(ss_data(p, r).cycle());
      auto noisy = clean;
      for (auto& g : noisy.noise) g = s.one_unit(f, 30);
      if (!(normalize_cyclic(noisy, 30) == normalize_cyclic(clean, 30))) return false;
    }
  }
  return true;
}

inline bool iso_equivalence(std::uint64_t seed) {
  auto f = field_make(3);
  Sampler s(3, seed);
  std::vector<InducedParams> ps;
  for (int i = 0; i < 40; ++i) ps.push_back(InducedParams::make(4, s.uniform(0, 79), FieldElem(f, s.uniform(1, 2))));
  for (const auto& a : ps) {
    if (!iso_test(a, a) || !(canonicalize(canonicalize(a)) == canonicalize(a))) return false;
    for (const auto& b : ps) {
      if (iso_test(a, b) != iso_test(b, a)) return false;
      for (const auto& c : ps)
        if (iso_test(a, b) && iso_test(b, c) && !iso_test(a, c)) return false;
    }
  }
  return true;
}

inline bool reduction_exhaustive(std::uint64_t) {
  for (int p : {3, 5}) {
    auto f = field_make(p);
    const long long c = (static_cast<long long>(p) * p + 1) / 2;
    const long long q = ipow(p, 4) - 1;
    for (long long h = 1; h <= 2 * q; h += 2) {
      auto [a, hp] = lemma2_reduce(h, p);
      if (hp % 2 == 0 || hp < 3 || hp > 2 * p - 1) return false;
      if (!iso_test(InducedParams::make(4, c * h, FieldElem(f, 1)), InducedParams::with_twist(4, c * hp, a, FieldElem(f, 1))))
        return false;
    }
  }
  return true;
}

inline bool normalized_exponents_on_pipeline(std::uint64_t) {
  for (int p : {3, 5, 7}) {
    std::set<long long> hs, expect;
    for (int r : admissible_r(p)) {
      auto h = lemma1_classify(galois_of_cycle(ss_data(p, r)));
      if (!h) return false;
      hs.insert(*h);
    }
    for (long long h = 3; h <= 2 * p - 1; h += 2) expect.insert(h);
    if (hs != expect) return false;
  }
  return true;
}

inline bool dual_involution(std::uint64_t) {
  auto f = field_make(5, 2);
  for (long long H = 0; H < 624; H += 7) {
    auto P = InducedParams::make(4, H, FieldElem::from_code(f, static_cast<Field::Code>(1 + H % 24)));
    auto D = dual(P);
    if (!(dual(D) == P) || mod_floor(D.H + P.H, 624) != 0 || !(D.Lam * P.Lam).is_one()) return false;
  }
  return true;
}

inline bool ss_image_class_and_orbit(std::uint64_t) {
  for (int p : {3, 5, 7}) {
    auto f = field_make(p, 2);
    auto fam = tame_family(f);
    for (int r : admissible_r(p))
      for (std::size_t k = 0; k < fam.size(); k += 5) {
        auto m = ss_image(SSRep{r, fam[k]});
        if (!lemma1_classify(ss_galois(m))) return false;
        for (const auto& q : quadratic_chars(f))
          if (!iso_test(twist(ss_galois(m), q), ss_galois(m))) return false;
      }
  }
  return true;
}

inline bool ps_image_shape(std::uint64_t) {
  auto f = field_make(5, 2);
  auto fam = tame_family(f);
  for (std::size_t i = 0; i < fam.size(); i += 9)
    for (std::size_t j = 0; j < fam.size(); j += 7) {
      auto m = ps_image(fam[i], fam[j]);
      if (!meta_irred_test(m)) return false;
      auto chars = ps_galois_characters(m);
      for (std::size_t a = 0; a < chars.size(); ++a)
        for (std::size_t b = a + 1; b < chars.size(); ++b)
          if (chars[a] == chars[b]) return false;
    }
  return true;
}

inline bool class_function_consistency(std::uint64_t) {
  return verify_bijection(3, 2).well_defined && verify_bijection(5, 1).well_defined;
}

inline std::vector<std::pair<std::string, std::function<bool(std::uint64_t)>>> registry() {
  return {
      {"coeff.inverse", field_inverses},
      {"coeff.nth_roots", nth_root_counts},
      {"coeff.omega_multiplicative", omega_multiplicative},
      {"laurent.reassembly", series_reassembly},
      {"laurent.gamma_composition_and_phi", gamma_composition},
      {"laurent.one_unit_root", one_unit_roots},
      {"metagroup.cocycle_identity", cocycle_identity},
      {"metagroup.hilbert_laws", hilbert_laws},
      {"metagroup.kappa_homomorphism", kappa_homomorphism},
      {"metagroup.conjugation_law", conjugation_law},
      {"metagroup.chi_z_surjective", chi_z_surjective},
      {"metagroup.center", center_is_squares},
      {"chars.restriction_kernel", restriction_kernel},
      {"chars.bracket_swap", bracket_swap},
      {"phigamma.commutation", phi_gamma_commutation},
      {"phigamma.projection_formulas", projection_formulas},
      {"phigamma.psi_gamma_equivariance", psi_gamma_equivariance},
      {"phigamma.rank1_lattice", rank1_lattice},
      {"classify.two_routes", two_routes},
      {"classify.duality", duality_consistency},
      {"classify.simulation_containment", simulation_containment},
      {"classify.noise_invariance", normalization_noise},
      {"galois.iso_equivalence", iso_equivalence},
      {"galois.reduction_exhaustive", reduction_exhaustive},
      {"galois.normalized_exponents", normalized_exponents_on_pipeline},
      {"galois.dual_involution", dual_involution},
      {"meta.ss_image_class", ss_image_class_and_orbit},
      {"meta.ps_image_shape", ps_image_shape},
      {"meta.class_function", class_function_consistency},
  };
}

}  // namespace selftest

inline std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : selftest::registry()) {
    CheckResult r{name, false, ""};
    try {
      r.passed = fn(seed);
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace mmf
