#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace skewpbw;

namespace {

/// Z2^3 as Z2 x (Z2 x Z2) with coordinate access.
struct Cube {
  FiniteRing r;
  const ProductRingImpl* outer;
  const ProductRingImpl* inner;

  Cube() : r(Builtins().ring("Z2x(Z2xZ2)")), outer(product_of(r)), inner(product_of(outer->right())) {}

  std::array<std::uint64_t, 3> bits(RingElement a) const {
    const auto rest = outer->second(a.code).code;
    return {outer->first(a.code).code, inner->first(rest).code, inner->second(rest).code};
  }
  RingElement make(std::array<std::uint64_t, 3> b) const {
    return RingElement{outer->pack(RingElement{b[0]}, RingElement{inner->pack(RingElement{b[1]}, RingElement{b[2]})})};
  }
  RingMap swap(std::size_t i, std::size_t j, const std::string& name) const {
    return verify_endomorphism(
        r,
        [this, i, j](RingElement a) {
          auto b = bits(a);
          std::swap(b[i], b[j]);
          return make(b);
        },
        name);
  }
};

}  // namespace

TEST(Morphisms, BuiltinMapsVerify) {
  Builtins b;
  const auto r = b.ring("Z2xZ2");
  const auto s = *b.map(r, "swap");
  EXPECT_TRUE(s.injective());
  EXPECT_EQ(r.format(s(*r.parse("(1,0)"))), "(0,1)");
  EXPECT_TRUE(b.map(r, "identity")->is_identity());
  EXPECT_FALSE(b.map(r, "no-such-map").has_value());
  EXPECT_THROW(b.map(b.ring("Z4"), "swap"), MorphismError);
  const auto s3 = b.ring("S(Z3)");
  const auto neg = *b.map(s3, "negate-B");
  const auto a = *s3.parse("[[1,2,0,1],[0,1,1,0],[0,0,2,0],[0,0,0,1]]");
  EXPECT_EQ(s3.format(neg(a)), "[[1,2,0,2],[0,1,2,0],[0,0,2,0],[0,0,0,1]]");
}

TEST(Morphisms, RejectsNonEndomorphisms) {
  const auto z4 = make_zn(4);
  try {
    verify_endomorphism(z4, [&](RingElement a) { return z4.mul(a, *z4.parse("2")); }, "times2");
    FAIL() << "expected MorphismError";
  } catch (const MorphismError& e) {
    EXPECT_EQ(e.kind(), MorphismError::Kind::UnitNotFixed);
  }
  Builtins b;
  const auto m2 = b.ring("M2(Z2)");
  // transpose is an anti-homomorphism
  try {
    verify_endomorphism(
        m2,
        [&](RingElement a) {
          auto m = oracle::parse_matrix(m2.format(a));
          std::swap(m[0][1], m[1][0]);
          return *m2.parse(oracle::format_matrix(m));
        },
        "transpose");
    FAIL() << "expected MorphismError";
  } catch (const MorphismError& e) {
    EXPECT_EQ(e.kind(), MorphismError::Kind::NotMultiplicative);
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(Morphisms, CompositionAppliesLastFactorFirst) {
  Cube c;
  const auto s1 = c.swap(0, 1, "s12");
  const auto s2 = c.swap(1, 2, "s23");
  SigmaFamily fam({s1, s2});
  const auto a = c.make({1, 0, 0});
  // sigma^(1,1) = s1 o s2: s2 first leaves (1,0,0), s1 gives (0,1,0)
  EXPECT_EQ(c.bits(sigma_power(fam, ExponentVector{1, 1})(a)), (std::array<std::uint64_t, 3>{0, 1, 0}));
  EXPECT_EQ(c.bits(s2(s1(a))), (std::array<std::uint64_t, 3>{0, 0, 1}));
  EXPECT_THROW(sigma_power(fam, ExponentVector{1}), MorphismError);
}

TEST(Morphisms, OrbitClosureIsExactlyTheSigmaPowers) {
  Cube c;
  SigmaFamily fam({c.swap(0, 1, "s12"), c.swap(1, 2, "s23")});
  const auto orbit = orbit_closure(fam);
  // brute force: distinct maps sigma^theta over a window larger than every period
  std::set<std::vector<std::uint64_t>> brute;
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = 0; j < 6; ++j) {
      const auto m = sigma_power(fam, ExponentVector{i, j});
      std::vector<std::uint64_t> table;
      for (auto a : c.r.elements()) table.push_back(m(a).code);
      brute.insert(table);
    }
  EXPECT_EQ(orbit.size(), brute.size());
  EXPECT_EQ(orbit.size(), 4u);  // id, s12, s23, s12 o s23; s23 o s12 is not a sigma power
  for (const auto& om : orbit) EXPECT_TRUE(om.map.same_as(sigma_power(fam, om.theta)));
}

TEST(Morphisms, DerivationsSatisfyLeibniz) {
  Builtins b;
  const auto r = b.ring("Z2xZ2");
  const auto s = *b.map(r, "swap");
  for (const auto& d : {id_minus_derivation(s), inner_derivation(s, *r.parse("(1,0)"))})
    for (auto x : r.elements())
      for (auto y : r.elements()) {
        EXPECT_EQ(d(r.add(x, y)), r.add(d(x), d(y)));
        EXPECT_EQ(d(r.mul(x, y)), r.add(r.mul(s(x), d(y)), r.mul(d(x), y)));
      }
  try {
    verify_sigma_derivation(r, s, [](RingElement a) { return a; }, "bogus");
    FAIL() << "expected MorphismError";
  } catch (const MorphismError& e) {
    EXPECT_EQ(e.kind(), MorphismError::Kind::LeibnizViolation);
  }
  EXPECT_TRUE(zero_derivation(s).is_zero());
}
