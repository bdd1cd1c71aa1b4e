#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "mmf/classify.hpp"
#include "mmf/galois.hpp"
#include "mmf/phigamma.hpp"

namespace mmf {

// pi~(r, 0, eta).
struct SSRep {
  int r = 0;
  TameChar eta;

  int p() const { return eta.p(); }
  static SSRep make(int r, const TameChar& eta) {
    const int p = eta.p();
    if (r < 0 || r > p - 1) throw math_error("parameter range");
    if (r == (p - 1) / 2) throw math_error("excluded parameter");
    return {r, eta};
  }
};

// Principal series, kept as its complete invariant (chi_1|_S, chi_2|_S).
struct PSRep {
  SChar psi1;
  SChar psi2;

  static PSRep from_chars(const TameChar& chi1, const TameChar& chi2) { return {restrict_S(chi1), restrict_S(chi2)}; }
  // pi~(r, lambda, eta), lambda != 0.
  static PSRep hecke(int r, const FieldElem& lam, const TameChar& eta) {
    if (lam.is_zero()) throw math_error("nonzero required");
    const SChar e = restrict_S(eta);
    return {SChar::make(lam.inv(), 0) * e, SChar::make(lam, r) * e};
  }
  bool operator==(const PSRep& o) const { return psi1 == o.psi1 && psi2 == o.psi2; }
};

using IrrRep = std::variant<SSRep, PSRep>;

// The r' with pi~(r', 0) a twist of pi~(r, 0) through the second branch, if any.
inline std::optional<int> ss_partner(int r, int p) {
  const int half = (p - 1) / 2;
  if (0 < r && r < half) return half - r;
  if (half < r && r < p - 1) return 3 * half - r;
  return std::nullopt;
}

inline bool irr_iso_test(const SSRep& a, const SSRep& b) {
  if (!same_field(*a.eta.field(), *b.eta.field())) throw math_error("incomparable");
  SSRep::make(a.r, a.eta);
  SSRep::make(b.r, b.eta);
  const int half = (a.p() - 1) / 2;
  const TameChar rel = a.eta * b.eta.inv();
  if (!rel.unram.pow(4).is_one()) return false;
  if (a.r == b.r && rel.tame % half == 0) return true;
  return ss_partner(b.r, b.p()) == a.r && mod_floor(rel.tame - b.r, half) == 0;
}

inline bool irr_iso_test(const PSRep& a, const PSRep& b) { return a == b; }

inline bool irr_iso_test(const IrrRep& a, const IrrRep& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<SSRep>(&a)) return irr_iso_test(*x, std::get<SSRep>(b));
  return irr_iso_test(std::get<PSRep>(a), std::get<PSRep>(b));
}

struct HeckeCokernel {
  std::optional<PSRep> principal;
  // Sub then quotient when lambda = 0.
  std::vector<SSRep> constituents;
  bool split = false;
};

inline HeckeCokernel hecke_cokernel(int r, const FieldElem& lam) {
  const int p = lam.field()->p();
  if (r < 0 || r > p - 1) throw math_error("parameter range");
  HeckeCokernel out;
  if (!lam.is_zero()) {
    out.principal = PSRep::hecke(r, lam, TameChar::trivial(lam.field()));
    return out;
  }
  out.constituents = {SSRep{r, TameChar::trivial(lam.field())}, SSRep{p - 1 - r, TameChar::make(FieldElem(lam.field(), 1), r)}};
  out.split = 2 * r == p - 1;
  return out;
}

struct CharSum {
  std::vector<TameChar> chars;
};

using MetaBase = std::variant<TameChar, InducedParams, CharSum, PhiGammaModule>;

struct MetaPhiGamma {
  SChar s_char;
  MetaBase base;
  // base twisted by chi_g for g in {1, u0, p, u0 p}.
  std::vector<MetaBase> summands;
};

inline FieldPtr base_field(const MetaBase& b) {
  struct V {
    FieldPtr operator()(const TameChar& c) const { return c.field(); }
    FieldPtr operator()(const InducedParams& P) const { return P.Lam.field(); }
    FieldPtr operator()(const CharSum& s) const {
      if (s.chars.empty()) throw math_error("empty sum");
      return s.chars.front().field();
    }
    FieldPtr operator()(const PhiGammaModule& d) const { return d.field; }
  };
  return std::visit(V{}, b);
}

inline MetaBase twist_base(const MetaBase& b, const TameChar& eps) {
  struct V {
    const TameChar& eps;
    MetaBase operator()(const TameChar& c) const { return c * eps; }
    MetaBase operator()(const InducedParams& P) const { return twist(P, eps); }
    MetaBase operator()(const CharSum& s) const {
      CharSum out;
      for (const auto& c : s.chars) out.chars.push_back(c * eps);
      return out;
    }
    MetaBase operator()(const PhiGammaModule& d) const { return twist(d, eps); }
  };
  return std::visit(V{eps}, b);
}

inline std::vector<TameChar> coset_characters(const FieldPtr& f) {
  std::vector<TameChar> out;
  for (const auto& g : square_class_reps(f->p())) out.push_back(from_quad(chi_z(g, f->p()), f));
  return out;
}

inline MetaPhiGamma meta_ind(const SChar& sigma, const MetaBase& base) {
  MetaPhiGamma m{sigma, base, {}};
  for (const auto& eps : coset_characters(base_field(base))) m.summands.push_back(twist_base(base, eps));
  return m;
}

inline bool base_iso(const MetaBase& a, const MetaBase& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<TameChar>(&a)) return *x == std::get<TameChar>(b);
  if (const auto* x = std::get_if<InducedParams>(&a)) return iso_test(*x, std::get<InducedParams>(b));
  if (const auto* x = std::get_if<CharSum>(&a)) {
    auto key = [](const CharSum& s) {
      std::vector<std::pair<int, Field::Code>> k;
      for (const auto& c : s.chars) k.emplace_back(c.tame, c.unram.code());
      std::sort(k.begin(), k.end());
      return k;
    };
    return key(*x) == key(std::get<CharSum>(b));
  }
  throw math_error("undecidable at this rank");
}

// Same s_char and the same summands up to isomorphism, with multiplicity.
inline bool meta_iso(const MetaPhiGamma& a, const MetaPhiGamma& b) {
  if (!(a.s_char == b.s_char) || a.summands.size() != b.summands.size()) return false;
  std::vector<bool> used(b.summands.size(), false);
  for (const auto& x : a.summands) {
    bool hit = false;
    for (std::size_t j = 0; j < b.summands.size() && !hit; ++j)
      if (!used[j] && base_iso(x, b.summands[j])) used[j] = hit = true;
    if (!hit) return false;
  }
  return true;
}

inline bool meta_irred_test(const MetaPhiGamma& m) {
  auto pairwise_distinct = [&] {
    for (std::size_t i = 0; i < m.summands.size(); ++i)
      for (std::size_t j = i + 1; j < m.summands.size(); ++j)
        if (base_iso(m.summands[i], m.summands[j])) return false;
    return true;
  };
  if (std::holds_alternative<TameChar>(m.base)) return pairwise_distinct();
  if (const auto* s = std::get_if<CharSum>(&m.base)) return s->chars.size() == 1 && pairwise_distinct();
  if (const auto* P = std::get_if<InducedParams>(&m.base)) return P->H != 0 && is_irreducible(*P);
  if (std::get<PhiGammaModule>(m.base).rank == 1) return true;
  throw math_error("undecidable at this rank");
}

inline MetaPhiGamma ps_image(const TameChar& chi1, const TameChar& chi2) {
  return meta_ind(restrict_S(chi1 * chi2), chi2);
}

// The four characters chi_2 eps of the underlying Galois object.
inline std::vector<TameChar> ps_galois_characters(const MetaPhiGamma& m) {
  std::vector<TameChar> out;
  for (const auto& s : m.summands) out.push_back(std::get<TameChar>(s));
  return out;
}

inline MetaPhiGamma ss_image(const SSRep& rep) {
  const SSRep checked = SSRep::make(rep.r, rep.eta);
  const auto f = checked.eta.field();
  const InducedParams base = twist(ss_closed_form(f->p(), checked.r, f), checked.eta);
  const SChar s_char = SChar::make(FieldElem(f, 1), checked.r) * restrict_S(checked.eta.pow(2));
  return meta_ind(s_char, base);
}

inline const InducedParams& ss_galois(const MetaPhiGamma& m) { return std::get<InducedParams>(m.base); }

// Candidate theta-actions differing by a quadratic character; all share the S-data.
struct ThetaCandidate {
  TameChar eps;
  SChar s_char;
};

inline std::vector<ThetaCandidate> theta_candidates(const MetaPhiGamma& m) {
  std::vector<ThetaCandidate> out;
  for (const auto& eps : quadratic_chars(base_field(m.base))) out.push_back({eps, m.s_char * restrict_S(eps)});
  return out;
}

inline int r_from_normalized(long long h, int p) { return h <= p ? static_cast<int>((p - h) / 2) : static_cast<int>((3 * p - h) / 2); }

inline std::vector<TameChar> tame_family(const FieldPtr& f) {
  std::vector<TameChar> out;
  for (int a = 0; a < f->p() - 1; ++a)
    for (Field::Code c = 1; c < f->order(); ++c) out.push_back(TameChar::make(FieldElem::from_code(f, c), a));
  return out;
}

inline SSRep invert_ss_image(const InducedParams& M) {
  if (M.n != 4) throw math_error("rank 4 required");
  const auto h = lemma1_classify(M);
  if (!h) throw math_error("not twist-invariant-irreducible");
  const auto f = M.Lam.field();
  const int r = r_from_normalized(*h, f->p());
  const InducedParams base = ss_closed_form(f->p(), r, f);
  for (const auto& eta : tame_family(f))
    if (iso_test(twist(base, eta), M)) return SSRep{r, eta};
  throw math_error("lambda not a norm in field");
}

struct BijectionReport {
  int p = 3;
  int m = 1;
  std::size_t rep_classes = 0;
  std::size_t galois_classes = 0;
  std::size_t rep_up_to_twist = 0;
  std::size_t galois_up_to_twist = 0;
  bool well_defined = false;
  bool lands_in_target = false;
  bool injective = false;
  bool surjective = false;
  // (r, h') for eta = 1.
  std::vector<std::pair<int, long long>> pairs;
};

inline std::vector<int> admissible_r(int p) {
  std::vector<int> out;
  for (int r = 0; r < p; ++r)
    if (2 * r != p - 1) out.push_back(r);
  return out;
}

inline BijectionReport verify_bijection(int p, int m) {
  const auto f = field_make(p, m);
  BijectionReport rep;
  rep.p = p;
  rep.m = m;
  const auto family = tame_family(f);
  const TameChar one = TameChar::trivial(f);

  // Representation side, bucketed by eta(p^4) which every isomorphism preserves.
  std::map<Field::Code, std::vector<std::vector<SSRep>>> buckets;
  for (int r : admissible_r(p))
    for (const auto& eta : family) {
      const SSRep x{r, eta};
      auto& classes = buckets[eta.unram.pow(4).code()];
      auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return irr_iso_test(c.front(), x); });
      if (it == classes.end()) classes.push_back({x});
      else it->push_back(x);
    }

  // Galois side: primitive, omega^{(p-1)/2}-invariant, Lam a fourth power in the field.
  std::set<Field::Code> fourth;
  for (Field::Code c = 1; c < f->order(); ++c) fourth.insert(FieldElem::from_code(f, c).pow(4).code());
  const long long q = ipow(p, 4) - 1;
  std::set<std::pair<long long, Field::Code>> target;
  std::set<long long> normalized;
  for (long long H = 1; H < q; ++H) {
    const auto P = InducedParams::make(4, H, FieldElem(f, 1));
    if (!is_irreducible(P) || !twist_invariant_quadratic(P)) continue;
    normalized.insert(*lemma1_classify(P));
    for (auto lam : fourth) target.insert({canonicalize(P).H, lam});
  }
  rep.galois_classes = target.size();
  rep.galois_up_to_twist = normalized.size();

  rep.well_defined = true;
  rep.lands_in_target = true;
  std::map<Field::Code, std::vector<InducedParams>> images;
  for (const auto& [key, classes] : buckets)
    for (const auto& cls : classes) {
      ++rep.rep_classes;
      const InducedParams img = ss_galois(ss_image(cls.front()));
      for (const auto& x : cls) rep.well_defined = rep.well_defined && iso_test(ss_galois(ss_image(x)), img);
      rep.lands_in_target = rep.lands_in_target && lemma1_classify(img).has_value() &&
                            target.count({canonicalize(img).H, img.Lam.code()}) > 0;
      images[img.Lam.code()].push_back(img);
    }
  rep.injective = true;
  std::set<std::pair<long long, Field::Code>> hit;
  for (const auto& [lam, imgs] : images)
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      hit.insert({canonicalize(imgs[i]).H, lam});
      for (std::size_t j = i + 1; j < imgs.size(); ++j) rep.injective = rep.injective && !iso_test(imgs[i], imgs[j]);
    }
  rep.surjective = std::includes(hit.begin(), hit.end(), target.begin(), target.end());

  // r ~ r' when some twist of pi~(r, 0) is isomorphic to pi~(r', 0).
  const auto rs = admissible_r(p);
  std::vector<std::size_t> parent(rs.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      for (const auto& eta : family)
        if (irr_iso_test(SSRep{rs[i], eta}, SSRep{rs[j], one})) {
          parent[find(i)] = find(j);
          break;
        }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < rs.size(); ++i) roots.insert(find(i));
  rep.rep_up_to_twist = roots.size();

  for (int r : rs) rep.pairs.emplace_back(r, *lemma1_classify(ss_galois(ss_image(SSRep{r, one}))));
  return rep;
}

}  // namespace mmf
