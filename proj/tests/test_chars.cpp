#include <gtest/gtest.h>

#include "mmf/chars.hpp"

namespace {

using mmf::FieldElem;
using mmf::HChar;
using mmf::SChar;
using mmf::TameChar;

std::vector<TameChar> all_tame(const mmf::FieldPtr& f) {
  std::vector<TameChar> out;
  for (mmf::Field::Code c = 1; c < f->order(); ++c)
    for (int a = 0; a < f->p() - 1; ++a) out.push_back(TameChar::make(FieldElem::from_code(f, c), a));
  return out;
}

TEST(Chars, RestrictionExamples) {
  auto f = mmf::field_make(5, 2);
  EXPECT_EQ(mmf::restrict_S(TameChar::trivial(f)), SChar::trivial(f));
  auto lam = FieldElem::from_coeffs(f, std::vector<int>{2, 1});
  auto r = mmf::restrict_S(TameChar::make(lam, 3));
  EXPECT_EQ(r.val_p2, lam * lam);
  EXPECT_EQ(r.tame, 1);
  auto chi = TameChar::make(lam, 1);
  for (const auto& eps : mmf::quadratic_chars(f)) EXPECT_EQ(mmf::restrict_S(chi * eps), mmf::restrict_S(chi));
}

TEST(Chars, RestrictionKernelIsQuadratic) {
  for (auto [p, m] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{7, 1}}) {
    auto f = mmf::field_make(p, m);
    auto chars = all_tame(f);
    auto quad = mmf::quadratic_chars(f);
    int kernel = 0;
    for (const auto& a : chars) {
      bool trivial = mmf::restrict_S(a) == SChar::trivial(f);
      bool is_quad = std::find(quad.begin(), quad.end(), a) != quad.end();
      EXPECT_EQ(trivial, is_quad) << a.str();
      kernel += trivial;
    }
    EXPECT_EQ(kernel, 4);
    for (std::size_t i = 0; i < chars.size(); i += 7)
      for (std::size_t j = 0; j < chars.size(); j += 5)
        EXPECT_EQ(mmf::restrict_S(chars[i] * chars[j]), mmf::restrict_S(chars[i]) * mmf::restrict_S(chars[j]));
  }
}

TEST(Chars, QuadraticChars) {
  auto f = mmf::field_make(3);
  auto q = mmf::quadratic_chars(f);
  ASSERT_EQ(q.size(), 4u);
  for (const auto& e : q) {
    EXPECT_TRUE(e.tame == 0 || e.tame == 1);
    EXPECT_TRUE(e.unram == FieldElem(f, 1) || e.unram == FieldElem(f, -1));
    EXPECT_EQ(e * e, TameChar::trivial(f));
  }
}

TEST(Chars, ChiZHitsAllQuadraticChars) {
  for (int p : {3, 5, 7}) {
    auto f = mmf::field_make(p);
    auto q = mmf::quadratic_chars(f);
    std::vector<TameChar> hit;
    for (const auto& z : mmf::square_class_reps(p)) hit.push_back(mmf::from_quad(mmf::chi_z(z, p), f));
    for (const auto& e : q) EXPECT_NE(std::find(hit.begin(), hit.end(), e), hit.end());
  }
}

TEST(Chars, TameValuesMatchHilbert) {
  const int p = 7;
  auto f = mmf::field_make(p);
  for (const auto& z : mmf::square_class_reps(p)) {
    auto chi = mmf::from_quad(mmf::chi_z(z, p), f);
    for (mmf::Rational x : {mmf::Rational(3), mmf::Rational(7), mmf::Rational(5, 49), mmf::Rational(-14)})
      EXPECT_EQ(chi.on_rational(x), FieldElem(f, mmf::hilbert(z, x, p)));
  }
}

TEST(Chars, BracketAndSwap) {
  const int p = 7;
  const int half = 3;
  HChar chi = HChar::make(p, 2, 0);
  EXPECT_EQ(chi.bracket(0, 0), chi);
  EXPECT_EQ(chi.swap().bracket(1, 0), HChar::make(p, half, 2));
  EXPECT_EQ(chi.bracket(1, 1).bracket(1, 1), chi);
  for (int e1 = 0; e1 < p - 1; ++e1)
    for (int e2 = 0; e2 < p - 1; ++e2)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          HChar c = HChar::make(p, e1, e2);
          EXPECT_EQ(c.swap().bracket(i, j), c.bracket(j, i).swap());
        }
}

TEST(Chars, Parse) {
  auto f = mmf::field_make(5, 2);
  auto c = mmf::parse_tame_char("mu((1,2))*omega^3", f);
  EXPECT_EQ(c.unram, FieldElem::from_coeffs(f, std::vector<int>{1, 2}));
  EXPECT_EQ(c.tame, 3);
  EXPECT_EQ(mmf::parse_tame_char("1", f), TameChar::trivial(f));
  EXPECT_EQ(mmf::parse_tame_char("omega*omega", f).tame, 2);
  EXPECT_EQ(mmf::parse_tame_char("mu(4)", f).unram, FieldElem(f, 4));
  EXPECT_THROW(mmf::parse_tame_char("nu(2)", f), mmf::math_error);
  EXPECT_THROW(mmf::parse_tame_char("mu(0)", f), mmf::math_error);
}

}  // namespace
