#include <gtest/gtest.h>

#include "mmf/io.hpp"
#include "mmf/selftest.hpp"

namespace {

using mmf::FieldElem;
using mmf::LaurentSeries;
namespace io = mmf::io;

TEST(Io, FieldElemShape) {
  auto f = mmf::field_make(5, 2);
  auto j = io::to_json(FieldElem::from_coeffs(f, std::vector<int>{3, 1}));
  EXPECT_EQ(j["p"], 5);
  EXPECT_EQ(j["m"], 2);
  EXPECT_EQ(j["coeffs"], (std::vector<int>{3, 1}));
}

TEST(Io, SeriesPrecision) {
  auto f = mmf::field_make(3);
  auto exact = io::to_json(LaurentSeries::from_ints(f, -1, {1, 0, 2}, LaurentSeries::kExact));
  EXPECT_TRUE(exact["precision"].is_null());
  EXPECT_EQ(exact["valuation"], -1);
  EXPECT_EQ(exact["coeffs"], (std::vector<int>{1, 0, 2}));
  auto trunc = io::to_json(LaurentSeries::from_ints(f, 0, {1, 2, 1, 1}, 3));
  EXPECT_EQ(trunc["precision"], 3);
  EXPECT_EQ(trunc["coeffs"].size(), 3u);
  auto zero = io::to_json(LaurentSeries(f, 4));
  EXPECT_TRUE(zero["valuation"].is_null());
  EXPECT_EQ(zero["precision"], 4);
}

TEST(Io, SchemaAndPipeline) {
  auto d = mmf::ss_data(5, 1);
  auto j = io::with_schema({{"galois", io::to_json(mmf::galois_of_cycle(d))}, {"data", io::to_json(d)}});
  EXPECT_EQ(j.begin().key(), "schema");
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["galois"]["H"], 39);
  EXPECT_EQ(j["galois"]["Lam"], "1");
  EXPECT_EQ(j["data"]["c"], (std::vector<std::string>{"4", "1", "4", "1"}));
  const std::string text = j.dump(2);
  EXPECT_NE(text.find("\"H\": 39"), std::string::npos);
  EXPECT_NE(text.find("\"Lam\": \"1\""), std::string::npos);
}

TEST(Io, DeterministicDump) {
  auto a = io::to_json(mmf::verify_bijection(3, 2)).dump();
  auto b = io::to_json(mmf::verify_bijection(3, 2)).dump();
  EXPECT_EQ(a, b);
  auto m = mmf::ss_image(mmf::SSRep{1, mmf::TameChar::trivial(mmf::field_make(5))});
  auto j = io::to_json(m);
  EXPECT_EQ(j["summands"].size(), 4u);
  EXPECT_EQ(j["summands"][1]["coset"], "2/1");
  EXPECT_TRUE(j["irreducible"].get<bool>());
}

TEST(Io, ParseMatrix) {
  auto g = io::parse_matrix("1, 2/3, 0, -5");
  EXPECT_EQ(g.b, mmf::Rational(2, 3));
  EXPECT_EQ(g.d, -5);
  EXPECT_THROW(io::parse_matrix("1,2,3"), mmf::math_error);
  EXPECT_THROW(io::parse_matrix("1,x,3,4"), mmf::math_error);
}

TEST(Io, ModuleJson) {
  auto f = mmf::field_make(3);
  auto d = mmf::make_induced(2, 5, FieldElem(f, 2), 0, 12);
  auto j = io::to_json(d, 2);
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["phi"].size(), 2u);
  EXPECT_TRUE(j["etale"].get<bool>());
  EXPECT_EQ(j["gamma"][0][0]["precision"], 12);
}

TEST(Io, SelftestAllPass) {
  for (const auto& r : mmf::run_selftest(20261016)) EXPECT_TRUE(r.passed) << r.name << " " << r.detail;
}

}  // namespace
