#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace skewpbw;

namespace {

Instance build(const std::string& name) {
  Builtins b;
  return find_catalog_entry(name)->build(b);
}

/// Direct definition over theta in [0, window)^n.
bool brute_rigid(const Instance& inst, unsigned window) {
  const FiniteRing& r = inst.ring;
  const std::size_t n = inst.family.size();
  for (const auto& theta : monomials_up_to(n, window * static_cast<unsigned>(n))) {
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i) inside = inside && theta[i] < window;
    if (!inside) continue;
    const auto m = sigma_power(inst.family, theta);
    for (auto a : r.elements())
      if (!r.is_zero(a) && r.is_zero(r.mul(a, m(a)))) return false;
  }
  return true;
}

bool brute_weak_rigid(const Instance& inst, unsigned window) {
  const FiniteRing& r = inst.ring;
  const std::size_t n = inst.family.size();
  for (const auto& theta : monomials_up_to(n, window * static_cast<unsigned>(n))) {
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i) inside = inside && theta[i] < window;
    if (!inside) continue;
    const auto m = sigma_power(inst.family, theta);
    for (auto a : r.elements())
      if (oracle::nilpotent_by_cycle(r, r.mul(a, m(a))) != oracle::nilpotent_by_cycle(r, a)) return false;
  }
  return true;
}

enum class Cond { WeakSigmaSkew, SigmaSkew, Skew, WeakCommutative };

/// Exhaustive one-variable search with the dense Ore oracle. Returns true
/// when some f, g of degree <= d with fg = 0 violate the conclusion.
bool brute_armendariz_fails(const Instance& inst, unsigned d, Cond cond) {
  const FiniteRing& r = inst.ring;
  const auto& sys = inst.system;
  const bool untwisted_mode = cond == Cond::WeakCommutative;
  oracle::Ore ore{r, [&](RingElement a) { return untwisted_mode ? a : sys.sigma(0)(a); },
                  [&](RingElement a) { return untwisted_mode ? r.zero() : sys.delta(0)(a); }};
  const auto elems = r.elements();
  std::vector<oracle::Dense> polys;
  std::vector<std::size_t> digits(d + 1, 0);
  for (;;) {
    oracle::Dense p;
    for (auto k : digits) p.push_back(elems[k]);
    polys.push_back(p);
    std::size_t k = 0;
    while (k <= d && ++digits[k] == elems.size()) digits[k++] = 0;
    if (k > d) break;
  }
  auto sigma_pow = [&](std::size_t i, RingElement b) {
    for (std::size_t s = 0; s < i; ++s) b = sys.sigma(0)(b);
    return b;
  };
  for (const auto& f : polys)
    for (const auto& g : polys) {
      if (!ore.mul(ore.trim(f), ore.trim(g)).empty()) continue;
      for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j) {
          bool bad = false;
          switch (cond) {
            case Cond::WeakSigmaSkew:
              bad = !oracle::nilpotent_by_cycle(r, r.mul(f[i], sigma_pow(i, g[j])));
              break;
            case Cond::SigmaSkew:
              bad = !r.is_zero(r.mul(f[i], sigma_pow(i, g[j])));
              break;
            case Cond::Skew:
              bad = i == 0 && !r.is_zero(r.mul(f[0], g[j]));
              break;
            case Cond::WeakCommutative:
              bad = !oracle::nilpotent_by_cycle(r, r.mul(f[i], g[j]));
              break;
          }
          if (bad) return true;
        }
    }
  return false;
}

SearchBudget full(unsigned d) {
  SearchBudget b;
  b.degree_bound = d;
  b.coefficients = CoefficientMode::Full;
  return b;
}

}  // namespace

TEST(PropertyLab, RigidityMatchesDefinition) {
  Builtins b;
  for (const auto& e : catalog()) {
    if (b.ring(e.ring_expr).size() > 64) continue;
    const auto inst = e.build(b);
    EXPECT_EQ(is_sigma_rigid(inst.ring, inst.family).holds(), brute_rigid(inst, 4)) << e.name;
    EXPECT_EQ(is_weak_sigma_rigid(inst.ring, inst.family).holds(), brute_weak_rigid(inst, 4)) << e.name;
    if (e.expected) {
      EXPECT_EQ(is_sigma_rigid(inst.ring, inst.family).holds(), e.expected->sigma_rigid) << e.name;
      EXPECT_EQ(is_weak_sigma_rigid(inst.ring, inst.family).holds(), e.expected->weak_sigma_rigid) << e.name;
    }
  }
}

TEST(PropertyLab, R3WitnessIsValid) {
  const auto inst = build("R3(Z2)");
  EXPECT_TRUE(is_weak_sigma_rigid(inst.ring, inst.family).holds());
  const auto v = is_sigma_rigid(inst.ring, inst.family);
  ASSERT_TRUE(v.fails());
  const auto& w = v.element_witness();
  const auto a = w.elements.at(0);
  EXPECT_FALSE(inst.ring.is_zero(a));
  EXPECT_TRUE(inst.ring.is_zero(inst.ring.mul(a, sigma_power(inst.family, *w.theta)(a))));
}

TEST(PropertyLab, M2IdentityIsWeakRigid) {
  // aa nilpotent <=> a nilpotent holds in every ring, so id is weak rigid on M2(Z2)
  const auto inst = build("M2(Z2)");
  EXPECT_TRUE(is_weak_sigma_rigid(inst.ring, inst.family).holds());
  EXPECT_TRUE(is_sigma_rigid(inst.ring, inst.family).fails());
}

TEST(PropertyLab, SwapIsNotWeakRigid) {
  const auto inst = build("Z2xZ2/swap");
  const auto v = is_weak_sigma_rigid(inst.ring, inst.family);
  ASSERT_TRUE(v.fails());
  const auto& w = v.element_witness();
  const auto a = w.elements.at(0);
  const auto s = sigma_power(inst.family, *w.theta)(a);
  EXPECT_NE(oracle::nilpotent_by_cycle(inst.ring, inst.ring.mul(a, s)), oracle::nilpotent_by_cycle(inst.ring, a));
}

TEST(PropertyLab, IdealVariant) {
  const auto inst = build("Z6");
  const auto ideal = principal_right_ideal(inst.ring, *inst.ring.parse("3"));
  EXPECT_TRUE(is_weak_sigma_rigid_ideal(inst.ring, inst.family, ideal).holds());
  const auto m2 = build("M2(Z2)");
  EXPECT_THROW(is_weak_sigma_rigid_ideal(m2.ring, m2.family, principal_right_ideal(m2.ring, *m2.ring.parse("[[1,0],[0,0]]"))),
               NotAnIdeal);
}

TEST(PropertyLab, ArmendarizSearchesMatchBruteForce) {
  struct Case {
    const char* name;
    unsigned d;
  };
  for (auto [name, d] : {Case{"Z4", 1}, Case{"Z4", 2}, Case{"Z6", 1}, Case{"Z2xZ2/swap", 1}, Case{"Z2xZ2/swap", 2},
                         Case{"R3(Z2)", 1}}) {
    const auto inst = build(name);
    EXPECT_EQ(is_weak_sigma_skew_armendariz(inst.system, full(d)).fails(),
              brute_armendariz_fails(inst, d, Cond::WeakSigmaSkew))
        << name << " D=" << d;
    EXPECT_EQ(is_sigma_skew_armendariz(inst.system, full(d)).fails(), brute_armendariz_fails(inst, d, Cond::SigmaSkew))
        << name << " D=" << d;
    EXPECT_EQ(is_skew_armendariz(inst.system, full(d)).fails(), brute_armendariz_fails(inst, d, Cond::Skew))
        << name << " D=" << d;
    EXPECT_EQ(is_weak_armendariz_commutative(inst.ring, full(d)).fails(),
              brute_armendariz_fails(inst, d, Cond::WeakCommutative))
        << name << " D=" << d;
  }
  const auto so = build("swap-ore");
  EXPECT_EQ(is_skew_armendariz(so.system, full(1)).fails(), brute_armendariz_fails(so, 1, Cond::Skew));
}

TEST(PropertyLab, SwapSkewWitnessIsReal) {
  const auto inst = build("Z2xZ2/swap");
  const auto v = is_sigma_skew_armendariz(inst.system, full(1));
  ASSERT_TRUE(v.fails());
  const auto& w = v.poly_witness();
  oracle::Ore ore{inst.ring, [&](RingElement a) { return inst.system.sigma(0)(a); }, [&](RingElement) { return inst.ring.zero(); }};
  EXPECT_TRUE(ore.mul(oracle::dense_of(w.f), oracle::dense_of(w.g)).empty());
  EXPECT_EQ(w.a, w.f.coefficient(w.alpha));
  EXPECT_EQ(w.b, w.g.coefficient(w.beta));
  EXPECT_FALSE(inst.ring.is_zero(*w.value));
}

TEST(PropertyLab, SCounterexampleAtDegreeOne) {
  const auto inst = build("S(Z3)");
  SearchBudget b;
  b.degree_bound = 1;
  b.coefficients = CoefficientMode::BlockElementary;
  const auto v = is_weak_sigma_skew_armendariz(inst.system, b);
  ASSERT_TRUE(v.fails());
  const auto& w = v.poly_witness();
  const FiniteRing& r = inst.ring;
  oracle::Ore ore{r, [&](RingElement a) { return inst.system.sigma(0)(a); }, [&](RingElement) { return r.zero(); }};
  EXPECT_TRUE(ore.mul(oracle::dense_of(w.f), oracle::dense_of(w.g)).empty());
  EXPECT_FALSE(oracle::nilpotent_by_cycle(r, *w.value));
  EXPECT_EQ(*w.value, r.mul(w.a, apply_sigma_power(inst.family, w.alpha, w.b)));
  EXPECT_EQ(v.bound->coefficients, "block-elementary");
}

TEST(PropertyLab, SkewPiOnZ4) {
  const auto inst = build("Z4");
  SearchBudget b = full(1);
  b.power_bound = 3;
  const auto v = is_skew_pi_armendariz(inst.system, b);
  EXPECT_EQ(v.status, PropertyVerdict::Status::HoldsUpToBound);
  ASSERT_TRUE(v.bound.has_value());
  EXPECT_EQ(v.bound->power_bound, 3u);
  EXPECT_EQ(v.bound->degree, 1u);
}

TEST(PropertyLab, SigmaDeltaConditionOnSwapOre) {
  const auto inst = build("swap-ore");
  const auto v = is_sigma_delta_skew_armendariz(inst.system, full(1));
  if (v.fails()) {
    const auto& w = v.poly_witness();
    EXPECT_TRUE((w.f * w.g).is_zero());
    ASSERT_TRUE(w.term_product.has_value());
    EXPECT_FALSE(w.term_product->is_zero());
  } else {
    EXPECT_EQ(v.status, PropertyVerdict::Status::HoldsUpToBound);
  }
}

TEST(PropertyLab, PreconditionsAndBudgets) {
  const auto so = build("swap-ore");
  EXPECT_THROW(is_weak_sigma_skew_armendariz(so.system, full(1)), NotEndomorphismType);
  EXPECT_THROW(is_sigma_skew_armendariz(so.system, full(1)), NotEndomorphismType);
  const auto m2 = build("M2(Z2)");
  SearchBudget b = full(2);
  b.candidate_cap = 1000;
  EXPECT_THROW(is_weak_sigma_skew_armendariz(m2.system, b), ResourceError);
}

TEST(PropertyLab, VerdictsDoNotDependOnJobs) {
  for (const char* name : {"Z2xZ2/swap", "R3(Z2)", "M2(Z2)"}) {
    const auto inst = build(name);
    SearchBudget one = full(1);
    SearchBudget many = one;
    many.jobs = 4;
    const auto a = is_sigma_skew_armendariz(inst.system, one);
    const auto b = is_sigma_skew_armendariz(inst.system, many);
    ASSERT_EQ(a.status, b.status) << name;
    if (a.fails()) {
      EXPECT_EQ(a.poly_witness().f, b.poly_witness().f) << name;
      EXPECT_EQ(a.poly_witness().g, b.poly_witness().g) << name;
    }
    const auto ra = is_sigma_rigid(inst.ring, inst.family, 1);
    const auto rb = is_sigma_rigid(inst.ring, inst.family, 4);
    ASSERT_EQ(ra.status, rb.status);
    if (ra.fails()) {
      EXPECT_EQ(ra.element_witness().elements, rb.element_witness().elements);
    }
  }
}
