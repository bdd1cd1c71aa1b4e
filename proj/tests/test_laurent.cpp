#include <gtest/gtest.h>

#include <random>

#include "mmf/laurent.hpp"

namespace {

using mmf::FieldElem;
using mmf::LaurentSeries;
using mmf::field_make;

LaurentSeries ints(const mmf::FieldPtr& f, long val, std::vector<long long> c, long prec = LaurentSeries::kExact) {
  return LaurentSeries::from_ints(f, val, c, prec);
}

LaurentSeries random_series(const mmf::FieldPtr& f, std::mt19937& rng, long val, long prec) {
  std::vector<mmf::Field::Code> c(static_cast<std::size_t>(prec - val));
  for (auto& x : c) x = static_cast<mmf::Field::Code>(rng() % f->order());
  return LaurentSeries::from_codes(f, val, std::move(c), prec);
}

LaurentSeries random_one_unit(const mmf::FieldPtr& f, std::mt19937& rng, long prec) {
  auto s = random_series(f, rng, 1, prec);
  return LaurentSeries::one(f) + s;
}

// Dense coefficient list of (1+X)^n mod X^len computed by repeated multiplication.
std::vector<long long> naive_binomial_row(int p, long long n, long len) {
  std::vector<long long> r(static_cast<std::size_t>(len), 0);
  r[0] = 1;
  for (long long k = 0; k < n; ++k)
    for (long i = len - 1; i >= 1; --i) r[i] = (r[i] + r[i - 1]) % p;
  return r;
}

TEST(Laurent, FrobeniusExamples) {
  auto f3 = field_make(3);
  auto s = mmf::frobenius_phi(ints(f3, 1, {1, 1}));
  EXPECT_TRUE(agree(s, ints(f3, 3, {1, 0, 0, 1})));
  EXPECT_EQ(s.valuation(), 3);
  auto f5 = field_make(5);
  auto inv = mmf::frobenius_phi(LaurentSeries::x_power(f5, -1));
  EXPECT_EQ(inv.valuation(), -5);
  EXPECT_EQ(inv.support_end(), -4);
  auto c = mmf::frobenius_phi(LaurentSeries::constant(FieldElem(f5, 3)));
  EXPECT_TRUE(agree(c, LaurentSeries::constant(FieldElem(f5, 3))));
  auto t = mmf::frobenius_phi(ints(f5, 0, {1, 2}, 4));
  EXPECT_EQ(t.precision(), 20);
}

TEST(Laurent, InvertExamples) {
  auto f3 = field_make(3);
  auto g = mmf::invert(ints(f3, 0, {1, 1}), 4);
  EXPECT_EQ(g.precision(), 4);
  EXPECT_TRUE(agree(g, ints(f3, 0, {1, 2, 1, 2})));
  auto xi = mmf::invert(LaurentSeries::x_power(f3, 1));
  EXPECT_TRUE(xi.is_exact());
  EXPECT_EQ(xi.valuation(), -1);
  try {
    mmf::invert(LaurentSeries(f3, 10));
    FAIL();
  } catch (const mmf::math_error& e) {
    EXPECT_STREQ(e.what(), "not invertible");
  }
}

TEST(Laurent, InverseProperty) {
  auto f = field_make(5, 2);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_series(f, rng, -3, 20);
    if (s.is_zero()) continue;
    auto prod = s * mmf::invert(s);
    EXPECT_TRUE(agree(prod, LaurentSeries::one(f))) << trial;
  }
}

TEST(Laurent, GammaExamples) {
  auto f3 = field_make(3);
  auto x = LaurentSeries::x_power(f3, 1, 10);
  EXPECT_TRUE(agree(mmf::gamma_act(2, x), ints(f3, 1, {2, 1})));
  EXPECT_TRUE(agree(mmf::gamma_act(3, x), ints(f3, 3, {1})));
  EXPECT_TRUE(agree(mmf::gamma_act(1, x), x));
  EXPECT_TRUE(agree(mmf::gamma_act(6, x), ints(f3, 3, {2, 0, 0, 1})));
  EXPECT_THROW(mmf::gamma_act(0, x), mmf::math_error);
}

TEST(Laurent, GammaMatchesBinomialExpansion) {
  auto f = field_make(5);
  const long len = 40;
  for (unsigned long long c : {2ull, 6ull, 7ull, 26ull, 127ull}) {
    auto g = mmf::gamma_act(c, LaurentSeries::x_power(f, 1, len));
    auto row = naive_binomial_row(5, static_cast<long long>(c), len);
    row[0] = 0;
    EXPECT_TRUE(agree(g, ints(f, 0, row, len))) << c;
  }
}

TEST(Laurent, GammaComposition) {
  auto f = field_make(3, 2);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_series(f, rng, -2, 25);
    unsigned long long c1 = 1 + 3 * (rng() % 20) + rng() % 2;
    unsigned long long c2 = 1 + 3 * (rng() % 20) + rng() % 2;
    auto lhs = mmf::gamma_act(c1, mmf::gamma_act(c2, s));
    auto rhs = mmf::gamma_act(c1 * c2, s);
    EXPECT_TRUE(agree(lhs, rhs)) << trial;
  }
}

TEST(Laurent, FrobeniusCommutesWithGamma) {
  auto f = field_make(5);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_series(f, rng, -1, 15);
    unsigned long long c = 2 + 5 * (rng() % 10);
    auto lhs = mmf::frobenius_phi(mmf::gamma_act(c, s));
    auto rhs = mmf::gamma_act(c, mmf::frobenius_phi(s));
    EXPECT_TRUE(agree(lhs, rhs)) << trial;
  }
}

TEST(Laurent, OneUnitRootExamples) {
  auto f3 = field_make(3);
  auto one = mmf::one_unit_root(LaurentSeries::one(f3), 7);
  EXPECT_TRUE(agree(one, LaurentSeries::one(f3)));
  auto sq = ints(f3, 0, {1, 2, 1}, 12);
  EXPECT_TRUE(agree(mmf::one_unit_root(sq, 2), ints(f3, 0, {1, 1})));
  auto g = mmf::one_unit_root(ints(f3, 0, {1, 1}, 4), 2);
  EXPECT_EQ(g.precision(), 4);
  EXPECT_TRUE(agree(g, ints(f3, 0, {1, 2, 1, 1})));
  EXPECT_TRUE(agree(mmf::pow(g, 2), ints(f3, 0, {1, 1}, 4)));
  try {
    mmf::one_unit_root(sq, 3);
    FAIL();
  } catch (const mmf::math_error& e) {
    EXPECT_STREQ(e.what(), "root not unique");
  }
  try {
    mmf::one_unit_root(ints(f3, 0, {2, 1}, 5), 2);
    FAIL();
  } catch (const mmf::math_error& e) {
    EXPECT_STREQ(e.what(), "not a one-unit");
  }
}

TEST(Laurent, OneUnitRootProperty) {
  auto f = field_make(5, 2);
  std::mt19937 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto u = random_one_unit(f, rng, 30);
    long long n = 1 + rng() % 700;
    if (n % 5 == 0) ++n;
    auto g = mmf::one_unit_root(u, n);
    EXPECT_TRUE(agree(mmf::pow(g, n), u)) << trial;
  }
}

TEST(Laurent, PhiBasisExamples) {
  auto f5 = field_make(5);
  auto g = mmf::phi_basis_decompose(LaurentSeries::one(f5));
  EXPECT_TRUE(agree(g[0], LaurentSeries::one(f5)));
  for (int i = 1; i < 5; ++i) EXPECT_TRUE(g[i].is_zero());

  auto h = ints(f5, -1, {3, 0, 1});
  auto composite = ints(f5, 0, {1, 2, 1}) * mmf::frobenius_phi(h);
  auto gc = mmf::phi_basis_decompose(composite);
  EXPECT_TRUE(agree(gc[2], h));
  for (int i : {0, 1, 3, 4}) EXPECT_TRUE(gc[i].is_zero()) << i;

  // X^{p-1} = ((1+X) - 1)^{p-1}: component i is binom(p-1, i)(-1)^{p-1-i} = 1 for p = 5.
  auto gx = mmf::phi_basis_decompose(LaurentSeries::x_power(f5, 4));
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(agree(gx[i], LaurentSeries::one(f5))) << i;
}

TEST(Laurent, PhiBasisReassembly) {
  for (int p : {3, 5, 7}) {
    auto f = field_make(p);
    std::mt19937 rng(50u + p);
    for (int trial = 0; trial < 20; ++trial) {
      long n = 40 + static_cast<long>(rng() % 20);
      auto s = random_series(f, rng, -static_cast<long>(rng() % 9), n);
      auto g = mmf::phi_basis_decompose(s);
      long guaranteed = mmf::div_floor(n, p) - 1;
      EXPECT_GE(g[0].precision(), guaranteed);
      LaurentSeries sum(f, LaurentSeries::kExact);
      for (int i = 0; i < p; ++i)
        sum = sum + mmf::pow(ints(f, 0, {1, 1}), i) * mmf::frobenius_phi(g[static_cast<std::size_t>(i)]);
      EXPECT_TRUE(agree(sum, s, p * guaranteed)) << p << " " << trial;
    }
  }
}

TEST(Laurent, ArithmeticPrecision) {
  auto f = field_make(3);
  auto a = ints(f, -2, {1, 1}, 5);
  auto b = ints(f, 1, {2}, 4);
  auto prod = a * b;
  EXPECT_EQ(prod.valuation(), -1);
  EXPECT_EQ(prod.precision(), 2);
  EXPECT_EQ((a + b).precision(), 4);
  auto z = a - a;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.precision(), 5);
}

}  // namespace
