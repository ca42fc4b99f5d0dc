#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace skewpbw;

namespace {

std::vector<std::string> formatted(const FiniteRing& r, const std::vector<RingElement>& v) {
  std::vector<std::string> out;
  for (auto a : v) out.push_back(r.format(a));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Ring, ModularArithmetic) {
  const auto z6 = make_zn(6);
  EXPECT_EQ(z6.size(), 6u);
  const auto a = *z6.parse("4");
  const auto b = *z6.parse("5");
  EXPECT_EQ(z6.format(z6.add(a, b)), "3");
  EXPECT_EQ(z6.format(z6.mul(a, b)), "2");
  EXPECT_EQ(z6.format(z6.neg(a)), "2");
  EXPECT_EQ(z6.format(z6.pow(b, 0)), "1");
  EXPECT_THROW(make_zn(1), RingError);
}

TEST(Ring, CatalogRingsSatisfyRingLaws) {
  Builtins b;
  for (const char* name : {"Z2", "Z3", "Z4", "Z6", "Z2xZ2", "M2(Z2)", "R3(Z2)", "S(Z3)"}) {
    const auto r = b.ring(name);
    const auto rep = verify_ring_laws(r);
    EXPECT_FALSE(rep.violation.has_value()) << name << ": " << rep.violation.value_or("");
    EXPECT_EQ(rep.exhaustive, r.size() <= 100) << name;
  }
}

TEST(Ring, SizesOfBuiltins) {
  Builtins b;
  EXPECT_EQ(b.ring("Z2xZ2").size(), 4u);
  EXPECT_EQ(b.ring("M2(Z2)").size(), 16u);
  EXPECT_EQ(b.ring("R3(Z2)").size(), 16u);
  EXPECT_EQ(b.ring("S(Z3)").size(), 531441u);
  EXPECT_EQ(b.ring("M2(Z2)xZ3").size(), 48u);
  EXPECT_EQ(b.ring("M2(Z2)"), b.ring(" M2( Z2 ) "));
  EXPECT_THROW(b.ring("Q7"), RingError);
  EXPECT_THROW(b.ring("M2(Z2"), RingError);
}

TEST(Ring, MatrixProductsMatchIntegerOracle) {
  Builtins b;
  for (auto [name, n] : {std::pair{"M2(Z2)", 2L}, std::pair{"R3(Z2)", 2L}}) {
    const auto r = b.ring(name);
    for (auto x : r.elements())
      for (auto y : r.elements()) {
        const auto expect = oracle::matmul_mod(oracle::parse_matrix(r.format(x)), oracle::parse_matrix(r.format(y)), n);
        ASSERT_EQ(r.format(r.mul(x, y)), oracle::format_matrix(expect)) << name;
      }
  }
  const auto s = b.ring("S(Z3)");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(0, s.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto x = s.element(pick(rng));
    const auto y = s.element(pick(rng));
    const auto expect = oracle::matmul_mod(oracle::parse_matrix(s.format(x)), oracle::parse_matrix(s.format(y)), 3);
    ASSERT_EQ(s.format(s.mul(x, y)), oracle::format_matrix(expect));
  }
}

TEST(Ring, ParseFormatRoundTrip) {
  Builtins b;
  for (const char* name : {"Z6", "Z2xZ2", "M2(Z2)", "R3(Z2)", "M2(Z2)xZ3"}) {
    const auto r = b.ring(name);
    for (auto a : r.elements()) {
      EXPECT_EQ(r.parse(r.format(a)), a) << name;
      EXPECT_EQ(r.parse("#" + std::to_string(r.ordinal(a))), a) << name;
    }
  }
  const auto r3 = b.ring("R3(Z2)");
  EXPECT_FALSE(r3.parse("[[1,0,0],[0,0,0],[0,0,1]]").has_value());  // diagonal not constant
  EXPECT_FALSE(r3.parse("[[1,0,0],[1,1,0],[0,0,1]]").has_value());  // below the diagonal
  EXPECT_EQ(r3.format(*r3.parse("[[1, 1, 0], [0, 1, 0], [0, 0, 1]]")), "[[1,1,0],[0,1,0],[0,0,1]]");
}

TEST(Ring, TableRing) {
  // F4 = Z2[t]/(t^2+t+1) with elements 0, 1, t, t+1
  const std::vector<std::uint32_t> add = {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
  const std::vector<std::uint32_t> mul = {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 3, 1, 0, 3, 1, 2};
  const auto f4 = make_table_ring("F4", 4, add, mul, 0, 1);
  EXPECT_TRUE(is_reduced(f4));
  for (auto a : f4.elements())
    if (!f4.is_zero(a)) {
      bool unit = false;
      for (auto x : f4.elements()) unit = unit || f4.mul(a, x) == f4.one();
      EXPECT_TRUE(unit);
    }
  auto bad = mul;
  bad[1 * 4 + 1] = 0;  // 1*1 = 0
  EXPECT_THROW(make_table_ring("bad", 4, add, bad, 0, 1), RingError);
}

TEST(Ring, NilradicalTwoWays) {
  Builtins b;
  const auto z4 = b.ring("Z4");
  EXPECT_EQ(formatted(z4, oracle::nil_by_cycle(z4)), (std::vector<std::string>{"0", "2"}));
  EXPECT_EQ(formatted(z4, nil_set(z4).elements()), (std::vector<std::string>{"0", "2"}));
  const auto z6 = b.ring("Z6");
  EXPECT_EQ(formatted(z6, nil_set(z6).elements()), (std::vector<std::string>{"0"}));
  const auto r3 = b.ring("R3(Z2)");
  const auto nil = nil_set(r3).elements();
  EXPECT_EQ(nil.size(), 8u);
  for (auto a : nil) EXPECT_EQ(oracle::parse_matrix(r3.format(a))[0][0], 0);
  for (const char* name : {"Z4", "Z6", "R3(Z2)", "M2(Z2)", "Z2xZ2"}) {
    const auto r = b.ring(name);
    EXPECT_EQ(formatted(r, oracle::nil_by_cycle(r)), formatted(r, oracle::nil_by_power(r))) << name;
    EXPECT_EQ(formatted(r, oracle::nil_by_cycle(r)), formatted(r, nil_set(r).elements())) << name;
  }
}

TEST(Ring, ClassificationMatchesCatalog) {
  Builtins b;
  for (const auto& e : catalog()) {
    if (!e.expected) continue;
    const auto r = b.ring(e.ring_expr);
    if (r.size() > kDefaultElementBudget) continue;
    EXPECT_EQ(is_reduced(r), e.expected->reduced) << e.name;
    EXPECT_EQ(is_ni(r), e.expected->ni) << e.name;
    EXPECT_EQ(is_abelian(r), e.expected->abelian) << e.name;
  }
}

TEST(Ring, SOverZ3IsNotNi) {
  Builtins b;
  const auto s = b.ring("S(Z3)");
  const auto v = find_ni_violation(s);
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(oracle::nilpotent_by_cycle(s, v->a));
}

TEST(Ring, IdempotentsOfZ6) {
  const auto z6 = make_zn(6);
  EXPECT_EQ(formatted(z6, idempotents(z6)), (std::vector<std::string>{"0", "1", "3", "4"}));
  EXPECT_TRUE(is_central(z6, *z6.parse("3")));
}

TEST(Ring, IdealsInM2) {
  Builtins b;
  const auto m2 = b.ring("M2(Z2)");
  const auto e11 = *m2.parse("[[1,0],[0,0]]");
  const auto right = principal_right_ideal(m2, e11);
  EXPECT_EQ(right.size(), 4u);
  EXPECT_FALSE(right.is_ideal());  // right ideal only; M2 over a field is simple
  EXPECT_TRUE(principal_right_ideal(m2, m2.one()).is_ideal());
}

TEST(Ring, ElementBudgetIsEnforced) {
  Builtins b;
  const auto s4 = b.ring("S(Z4)");
  EXPECT_THROW((void)s4.elements(1u << 20), ResourceError);
}
