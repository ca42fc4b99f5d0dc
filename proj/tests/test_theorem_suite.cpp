#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace skewpbw;

namespace {

const std::vector<TheoremReport>& suite() {
  static const std::vector<TheoremReport> reports = verify_theorems();
  return reports;
}

std::vector<const TheoremReport*> reports_for(const std::string& theorem) {
  std::vector<const TheoremReport*> out;
  for (const auto& r : suite())
    if (r.theorem == theorem) out.push_back(&r);
  return out;
}

std::string detail_of(const TheoremReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST(TheoremSuite, NothingFails) {
  EXPECT_TRUE(suite_passed(suite()));
  for (const auto& r : suite()) EXPECT_NE(r.status, InstanceStatus::Fail) << r.theorem << " on " << r.instance << ": " << r.note;
}

TEST(TheoremSuite, RigidIffCoversEnoughInstances) {
  std::size_t evaluated = 0;
  for (const auto* r : reports_for(theorem::kRigidIff))
    if (r->status == InstanceStatus::Pass) ++evaluated;
  EXPECT_GE(evaluated, 8u);
}

TEST(TheoremSuite, BiconditionalAgreesWithIndependentEvaluation) {
  Builtins b;
  for (const auto& e : catalog()) {
    if (b.ring(e.ring_expr).size() > 64) continue;
    const auto inst = e.build(b);
    const FiniteRing& r = inst.ring;
    bool reduced = oracle::nil_by_cycle(r).size() == 1;
    bool rigid = true;
    bool weak = true;
    for (const auto& om : orbit_closure(inst.family))
      for (auto a : r.elements()) {
        const auto prod = r.mul(a, om.map(a));
        if (!r.is_zero(a) && r.is_zero(prod)) rigid = false;
        if (oracle::nilpotent_by_cycle(r, prod) != oracle::nilpotent_by_cycle(r, a)) weak = false;
      }
    EXPECT_EQ(rigid, weak && reduced) << e.name;
  }
}

TEST(TheoremSuite, GatedInstancesForWeakArmendariz) {
  std::set<std::string> passed;
  for (const auto* r : reports_for(theorem::kWeakArmendariz))
    if (r->status == InstanceStatus::Pass) {
      passed.insert(r->instance);
      ASSERT_TRUE(r->verdict.has_value());
      EXPECT_FALSE(r->verdict->fails());
      EXPECT_EQ(r->verdict->bound->degree, 2u);
    }
  EXPECT_TRUE(passed.count("R3(Z2)"));
  EXPECT_TRUE(passed.count("Z4"));
  // S(Z3) is not NI, so it sits outside the gate
  for (const auto* r : reports_for(theorem::kWeakArmendariz))
    if (r->instance == "S(Z3)") {
      EXPECT_EQ(r->status, InstanceStatus::Vacuous);
      EXPECT_NE(r->note.find("not NI"), std::string::npos) << r->note;
    }
}

TEST(TheoremSuite, LiteralIdempotentHypothesisIsUnsatisfiable) {
  const auto lit = reports_for(theorem::kIdealDecompositionLiteral);
  EXPECT_FALSE(lit.empty());
  for (const auto* r : lit) {
    EXPECT_EQ(r->status, InstanceStatus::Vacuous) << r->instance;
    EXPECT_NE(r->note.find("unsatisfiable"), std::string::npos) << r->instance << ": " << r->note;
  }
}

TEST(TheoremSuite, CounterexamplesAreRecorded) {
  const auto r3 = reports_for(theorem::kCounterexampleR3);
  ASSERT_EQ(r3.size(), 1u);
  EXPECT_EQ(r3[0]->status, InstanceStatus::Pass);
  EXPECT_EQ(detail_of(*r3[0], "weak_sigma_rigid"), "true");
  EXPECT_EQ(detail_of(*r3[0], "sigma_rigid"), "false");
  const auto s = reports_for(theorem::kCounterexampleS);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0]->status, InstanceStatus::Pass) << s[0]->note;
  EXPECT_EQ(detail_of(*s[0], "weak_sigma_skew_armendariz"), "fails");
}

TEST(TheoremSuite, OversizedInstanceIsSkipped) {
  for (const auto& r : suite()) {
    if (r.instance != "S(Z4)") continue;
    if (r.theorem == std::string(theorem::kIdealDecompositionLiteral)) {
      EXPECT_EQ(r.status, InstanceStatus::Vacuous);  // decided from sigma_i(1) alone
    } else {
      EXPECT_EQ(r.status, InstanceStatus::Skipped) << r.theorem;
    }
  }
}

TEST(TheoremSuite, SingleInstanceAndUnknownName) {
  const auto only = verify_theorems({}, std::string("Z4"));
  for (const auto& r : only) EXPECT_EQ(r.instance, "Z4");
  EXPECT_FALSE(only.empty());
  EXPECT_THROW(verify_theorems({}, std::string("Z5xZ7")), std::invalid_argument);
}
