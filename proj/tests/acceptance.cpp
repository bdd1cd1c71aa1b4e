// Acceptance run: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "mmf/mmf.hpp"

namespace {

using namespace mmf;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

SeriesVector random_vector(Sampler& s, const FieldPtr& f, std::size_t n, long val, long prec) {
  SeriesVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(s.series(f, val, prec));
  return v;
}

Outcome cocycle_suite() {
  Outcome out;
  for (int p : {3, 5}) {
    Sampler s(p, kSeed);
    for (int i = 0; i < 10000; ++i) {
      auto g1 = s.matrix(), g2 = s.matrix(), g3 = s.matrix();
      out.require(cocycle(g1, g2, p) * cocycle(g1 * g2, g3, p) == cocycle(g1, g2 * g3, p) * cocycle(g2, g3, p),
                  "cocycle identity p=" + std::to_string(p));
    }
    for (int i = 0; i < 10000; ++i) {
      auto k1 = s.k_matrix(), k2 = s.k_matrix();
      const int z1 = s.sign(), z2 = s.sign();
      out.require(kappa_split(k1 * k2, z1 * z2, p) == meta_mul(kappa_split(k1, z1, p), kappa_split(k2, z2, p), p),
                  "kappa_split p=" + std::to_string(p));
    }
  }
  return out;
}

Outcome conjugation_suite() {
  Outcome out;
  for (int p : {3, 5}) {
    Sampler s(p, kSeed + 1);
    for (int i = 0; i < 1000; ++i) {
      auto z = s.nonzero();
      MetaElem zt{PMatrix::scalar(z), s.sign()};
      MetaElem gt{s.matrix(), s.sign()};
      auto conj = meta_mul(meta_mul(zt, gt, p), meta_inverse(zt, p), p);
      out.require(conj == MetaElem{gt.g, gt.zeta * chi_z(z, p).evaluate(gt.g.det(), p)}, "conjugation p=" + std::to_string(p));
    }
    for (int i = 0; i < 1000; ++i) {
      auto z = s.nonzero(), x = s.nonzero();
      out.require(chi_z(z, p).evaluate(x, p) == hilbert(z, x, p), "chi_z vs hilbert p=" + std::to_string(p));
    }
  }
  return out;
}

Outcome module_suite() {
  Outcome out;
  for (auto [p, N] : {std::pair{3, 60L}, std::pair{5, 80L}}) {
    auto f = field_make(p);
    Sampler s(p, kSeed + 2);
    const auto up = static_cast<unsigned long long>(p);
    for (long long h : {5LL, 39LL}) {
      const std::string tag = " p=" + std::to_string(p) + " h=" + std::to_string(h);
      auto d = make_induced(4, h, FieldElem(f, 2), 1, N);
      const long phi_bound = p * N - h * (p - 1);
      for (unsigned long long c : {2ULL, 1 + up, 1 + up * up}) {
        auto v = random_vector(s, f, 4, 0, N);
        auto [lhs, rhs] = commutation_sides(d, c, v);
        out.require(agree(lhs, rhs), "commutation" + tag);
        out.require(std::min(precision_of(lhs), precision_of(rhs)) >= N, "commutation precision" + tag);
        out.require(precision_of(apply_phi(d, v)) >= phi_bound, "phi precision" + tag);
      }
      for (int trial = 0; trial < 200; ++trial) {
        auto v = random_vector(s, f, 4, -2, N);
        auto back = psi(d, apply_phi(d, v));
        out.require(agree(back, v) && precision_of(back) >= N, "psi after phi" + tag);

        // psi(phi(g) x) = g psi(x)
        auto g = s.series(f, -1, N);
        auto x = random_vector(s, f, 4, 0, p * N);
        SeriesVector scaled, rhs;
        for (const auto& e : x) scaled.push_back(frobenius_phi(g) * e);
        for (const auto& e : psi(d, x)) rhs.push_back(g * e);
        out.require(agree(psi(d, scaled), rhs), "projection formula phi(g)" + tag);

        // psi(g phi(v)) = psi(g) v
        auto g2 = s.series(f, -3, 3 * p);
        auto fv = apply_phi(d, v);
        for (auto& e : fv) e = g2 * e;
        const auto pg = psi_ring(g2);
        SeriesVector rhs2;
        for (const auto& e : v) rhs2.push_back(pg * e);
        out.require(agree(psi(d, fv), rhs2), "projection formula psi(g)" + tag);
      }
    }
  }
  return out;
}

CyclicForm random_form(Sampler& s, const FieldPtr& f, int n, long prec, bool noisy) {
  const int pm1 = f->p() - 1;
  CyclicForm form;
  form.n = n;
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    form.d.push_back(s.nonzero_elem(f));
    long long ti = s.uniform(-3 * pm1, 3 * pm1);
    if (i == n - 1) ti -= mod_floor(total + ti, pm1);
    total += ti;
    form.t.push_back(ti);
  }
  form.b.push_back(s.uniform(0, pm1 - 1));
  for (int i = 0; i + 1 < n; ++i) form.b.push_back(mod_floor(form.b.back() - form.t[static_cast<std::size_t>(i)], pm1));
  for (int i = 0; i < n; ++i) form.noise.push_back(noisy ? s.one_unit(f, prec) : LaurentSeries::one(f));
  return form;
}

Outcome normalization_round_trip() {
  Outcome out;
  const long prec = 30;
  int count = 0;
  for (int p : {3, 5}) {
    auto f = field_make(p, 2);
    Sampler s(p, kSeed + 3);
    for (int k = 0; k < 50; ++k, ++count) {
      const int n = std::array{1, 2, 4}[static_cast<std::size_t>(k % 3)];
      auto noisy = random_form(s, f, n, prec, true);
      auto clean = noisy;
      for (auto& g : clean.noise) g = LaurentSeries::one(f);
      out.require(normalize_cyclic(noisy, prec) == normalize_cyclic(clean, prec), "round trip #" + std::to_string(count));
    }
  }
  out.require(count == 100, "form count");
  return out;
}

Outcome closed_form_routes() {
  Outcome out;
  for (int p : {3, 5, 7})
    for (int r : admissible_r(p))
      out.require(galois_of_cycle(ss_data(p, r)) == ss_closed_form(p, r),
                  "routes differ p=" + std::to_string(p) + " r=" + std::to_string(r));
  return out;
}

Outcome oracle_cross_check() {
  Outcome out;
  const long K = 4;
  for (int r : {1, 3}) {
    bool rejected = false;
    try {
      ss_data(3, r);
    } catch (const math_error&) {
      rejected = true;
    }
    out.require(rejected, "p=3 r=" + std::to_string(r) + " should be rejected");
  }
  for (auto [p, rs] : {std::pair{3, std::vector{0, 2}}, std::pair{5, std::vector{0, 1, 3}}})
    for (int r : rs) {
      auto d = ss_data(p, r);
      for (int i = 1; i <= 4; ++i) {
        const auto idx = static_cast<std::size_t>(i - 1);
        auto sim = simulate_dual_frobenius(d, i, K);
        const std::string tag = " p=" + std::to_string(p) + " r=" + std::to_string(r) + " i=" + std::to_string(i);
        out.require(sim.exponent == d.s[idx] - (p - 1), "exponent" + tag);
        out.require(sim.mu.valuation() == sim.exponent, "valuation" + tag);
        out.require(sim.unit.valuation() == 0 && sim.unit.precision() >= K, "unit window" + tag);
        out.require((sim.unit.leading() * d.c[idx]).is_one(), "leading coefficient" + tag);
      }
    }
  return out;
}

Outcome reduction_suite() {
  Outcome out;
  const int p = 3;
  auto f = field_make(p);
  const long long c = (p * p + 1) / 2;
  const long long q = ipow(p, 4) - 1;
  for (long long h = 1; h <= 2 * q; h += 2) {
    auto [a, hp] = lemma2_reduce(h, p);
    out.require(hp % 2 != 0 && hp >= 3 && hp <= 2 * p - 1, "h' range for h=" + std::to_string(h));
    out.require(iso_test(InducedParams::make(4, c * h, FieldElem(f, 1)), InducedParams::with_twist(4, c * hp, a, FieldElem(f, 1))),
                "not isomorphic for h=" + std::to_string(h));
  }
  return out;
}

Outcome bijection_suite() {
  Outcome out;
  for (int p : {3, 5}) {
    auto rep = verify_bijection(p, 4);
    const std::string tag = " p=" + std::to_string(p);
    out.require(rep.injective && rep.surjective, "bijectivity" + tag);
    out.require(rep.well_defined && rep.lands_in_target, "well-definedness" + tag);
    out.require(rep.rep_up_to_twist == static_cast<std::size_t>(p - 1) && rep.galois_up_to_twist == static_cast<std::size_t>(p - 1), "up-to-twist counts" + tag);
    if (p == 5) {
      std::set<std::pair<int, long long>> got(rep.pairs.begin(), rep.pairs.end());
      const std::set<std::pair<int, long long>> expect{{1, 3}, {0, 5}, {4, 7}, {3, 9}};
      out.require(got == expect, "pair table p=5");
    }
  }
  return out;
}

std::string s_key(const TameChar& chi) {
  const auto s = restrict_S(chi);
  return s.val_p2.str() + "/" + std::to_string(s.tame);
}

Outcome principal_series_suite() {
  Outcome out;
  auto f = field_make(5, 2);
  const auto fam = tame_family(f);
  std::map<std::string, std::vector<MetaPhiGamma>> groups;
  for (const auto& chi1 : fam)
    for (const auto& chi2 : fam) {
      auto m = ps_image(chi1, chi2);
      out.require(meta_irred_test(m), "reducible image " + chi1.str() + ", " + chi2.str());
      auto chars = ps_galois_characters(m);
      std::set<std::string> distinct;
      for (const auto& c : chars) distinct.insert(c.str());
      out.require(chars.size() == 4 && distinct.size() == 4, "character count " + chi1.str() + ", " + chi2.str());
      groups[s_key(chi1) + "|" + s_key(chi2)].push_back(std::move(m));
    }
  for (const auto& [key, members] : groups)
    for (const auto& m : members) out.require(meta_iso(members.front(), m), "class varies within " + key);
  std::vector<const MetaPhiGamma*> reps;
  for (const auto& [key, members] : groups) reps.push_back(&members.front());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) out.require(!meta_iso(*reps[i], *reps[j]), "distinct keys collide");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double budget_s;
  };
  const Criterion criteria[] = {
      {"1 cocycle suite", cocycle_suite, 10},
      {"2 conjugation law", conjugation_suite, 60},
      {"3 phi-gamma module suite", module_suite, 60},
      {"4 normalization round-trip", normalization_round_trip, 60},
      {"5 supersingular closed form", closed_form_routes, 1},
      {"6 dual frobenius oracle", oracle_cross_check, 120},
      {"7 exponent reduction exhaustive", reduction_suite, 10},
      {"8 supersingular bijection", bijection_suite, 300},
      {"9 principal series image", principal_series_suite, 300},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (res.ok && secs > c.budget_s) res = {false, "over time budget"};
    std::printf("%s criterion %s (%.2fs)%s%s\n", res.ok ? "PASS" : "FAIL", c.name, secs, res.ok ? "" : ": ", res.note.c_str());
    std::fflush(stdout);
    failures += res.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
