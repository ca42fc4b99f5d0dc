#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace skewpbw;

namespace {

SpecError spec_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e;
  }
  ADD_FAILURE() << "no SpecError for:\n" << text;
  return SpecError(0, 0, "none");
}

const char* kFull = R"(name custom   # trailing comment
ring Z2xZ2
map s = swap
map t = [(0,0), (1,0), (0,1), (1,1)]
derivation d = id-minus(s)
derivation e = inner(t, (1,0))
derivation z = images(s) [(0,0), (0,0), (0,0), (0,0)]
extension sigma=s delta=d
poly f = (1,0)*x1^2 + (0,1)
ideal I = principal((1,0))
checks reduced, sigma_rigid, weak_sigma_rigid_ideal:I, in_nil_ra:f
expect: sigma_rigid=fails
degree-bound 1
power-bound 3
seed 17
coefficients full
)";

}  // namespace

TEST(SpecFile, MinimalSpec) {
  const auto s = parse_spec("ring Z4; maps id; checks weak_sigma_rigid");
  ASSERT_TRUE(s.resolved);
  EXPECT_EQ(s.checks.size(), 1u);
  const auto res = run_spec(s);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].status, "holds");
  EXPECT_EQ(res.exit_code, 0);
}

TEST(SpecFile, CatalogExpectations) {
  auto res = run_spec(parse_spec("ring catalog:R3(Z2)\nexpect: weak_sigma_rigid=holds, sigma_rigid=fails\n"));
  EXPECT_EQ(res.exit_code, 0);
  ASSERT_EQ(res.records.size(), 2u);
  EXPECT_EQ(res.records[0].check, "weak_sigma_rigid");
  EXPECT_EQ(res.records[1].check, "sigma_rigid");
  res = run_spec(parse_spec("ring catalog:R3(Z2)\nexpect: sigma_rigid=holds\n"));
  EXPECT_EQ(res.exit_code, 1);
  EXPECT_NE(res.records[0].note.find("expected holds"), std::string::npos);
}

TEST(SpecFile, UndefinedMapReportedAtReference) {
  const auto e = spec_error("ring Z2\n\nmaps id,   nope\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 12);
  EXPECT_NE(e.message().find("undefined map 'nope'"), std::string::npos);
}

TEST(SpecFile, ZeroQuantumParameter) {
  const auto e = spec_error("ring catalog:quantum-plane(Z3,0)\n");
  EXPECT_EQ(e.message(), "c_{1,2} must be nonzero");
  const auto e2 = spec_error("ring Z3\nmaps id, id\nrelation 1 2 c=0\n");
  EXPECT_EQ(e2.message(), "c_{1,2} must be nonzero");
  EXPECT_EQ(e2.witness(), "c_{1,2} = 0");
}

TEST(SpecFile, InvalidDerivationRejected) {
  // a -> a + swap(a) breaks the Leibniz rule for sigma = id
  const auto e = spec_error("ring Z2xZ2\nmap s = swap\nderivation d = images(id) [(0,0), (1,1), (1,1), (0,0)]\n");
  EXPECT_EQ(e.line(), 3);
}

TEST(SpecFile, SyntaxErrors) {
  EXPECT_EQ(spec_error("ring Z2\nfrobnicate 3\n").line(), 2);
  EXPECT_EQ(spec_error("ring Z2\nchecks reduced, flying\n").column(), 17);
  EXPECT_EQ(spec_error("ring Z2\nexpect reduced=maybe\n").column(), 16);
  EXPECT_EQ(spec_error("ring Z2\ndegree-bound two\n").line(), 2);
  EXPECT_EQ(spec_error("ring Z2\nmap m = [0]\n").line(), 2);
  EXPECT_EQ(spec_error("ring Z2\nchecks in_nil_ra\n").line(), 2);
  EXPECT_EQ(spec_error("ring Z2\nchecks in_nil_ra:g\n").line(), 2);
  EXPECT_EQ(spec_error("ring Q9\n").line(), 1);
  EXPECT_EQ(spec_error("maps id\n").message(), "missing ring declaration");
  const auto p = spec_error("ring Z3\npoly f = 2*x1 + *\n");
  EXPECT_EQ(p.line(), 2);
  EXPECT_EQ(p.column(), 17);
  EXPECT_EQ(spec_error("ring M2(Z2)\nideal J = principal([[1,0],[0,0]])\n").line(), 2);
}

TEST(SpecFile, RoundTrip) {
  const auto a = parse_spec(kFull);
  const auto b = parse_spec(a.to_text());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.to_text(), b.to_text());
  // reformatting does not change the parsed value
  const auto c = parse_spec("ring   Z2xZ2 ;map s=swap;map t = [ (0,0),(1,0),(0,1),(1,1) ]\n"
                            "derivation d = id-minus( s )\nderivation e = inner(t,(1,0))\n"
                            "derivation z = images(s) [(0,0),(0,0),(0,0),(0,0)]\nextension sigma=s delta=d\n"
                            "poly f = (1,0)*x1^2 + (0,1)\nideal I = principal((1,0))\nname custom\n"
                            "checks reduced,sigma_rigid;checks weak_sigma_rigid_ideal:I,in_nil_ra:f\n"
                            "expect sigma_rigid=fails\ndegree-bound 1\npower-bound 3\nseed 17\ncoefficients full\n");
  EXPECT_EQ(a.to_text(), c.to_text());
}

TEST(SpecFile, RunFollowsFileOrder) {
  const auto s = parse_spec(kFull);
  const auto res = run_spec(s);
  ASSERT_EQ(res.records.size(), 4u);
  EXPECT_EQ(res.records[0].check, "reduced");
  EXPECT_EQ(res.records[1].check, "sigma_rigid");
  EXPECT_EQ(res.records[2].check, "weak_sigma_rigid_ideal:I");
  EXPECT_EQ(res.records[3].check, "in_nil_ra:f");
  EXPECT_EQ(res.records[3].status, "fails");
  EXPECT_EQ(res.exit_code, 0);
}

TEST(SpecFile, TableRingAndExplicitMaps) {
  const char* text = R"(ring table F4 zero=0 one=1 add=0,1,2,3,1,0,3,2,2,3,0,1,3,2,1,0 mul=0,0,0,0,0,1,2,3,0,2,3,1,0,3,1,2
map frob = [e0, e1, e3, e2]
maps frob
checks reduced, sigma_rigid, weak_sigma_skew_armendariz
degree-bound 1
)";
  const auto s = parse_spec(text);
  EXPECT_EQ(parse_spec(s.to_text()), s);
  const auto res = run_spec(s);
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_EQ(res.records[0].status, "holds");
  EXPECT_EQ(res.records[1].status, "holds");
  EXPECT_EQ(res.records[2].status, "holds-up-to-bound");
  // not additive: e2 + e3 = e1 but the images sum to e0
  EXPECT_THROW(parse_spec("ring table F4 zero=0 one=1 add=0,1,2,3,1,0,3,2,2,3,0,1,3,2,1,0 mul=0,0,0,0,0,1,2,3,0,2,3,1,0,3,1,2\n"
                          "map bad = [e0, e1, e2, e2]\n"),
               SpecError);
}

TEST(SpecFile, CheckErrorsBecomeRecords) {
  const auto res = run_spec(parse_spec("ring catalog:swap-ore\nchecks weak_sigma_skew_armendariz\ndegree-bound 1\n"));
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].status, "error");
  EXPECT_EQ(res.exit_code, 1);
}

TEST(Report, RecordsRoundTripThroughJson) {
  const auto res = run_spec(parse_spec(kFull));
  for (const auto& r : res.records) {
    const auto text = to_json(r).dump();
    EXPECT_EQ(record_from_json(Json::parse(text)), r);
    const auto no_time = to_json(r, false);
    EXPECT_FALSE(no_time.contains("wall_ms"));
  }
  const auto keys = to_json(res.records[1]);
  std::vector<std::string> order;
  for (auto it = keys.begin(); it != keys.end(); ++it) order.push_back(it.key());
  EXPECT_EQ(order, (std::vector<std::string>{"check", "instance", "status", "note", "witness", "bound", "wall_ms"}));
}

TEST(Explain, ConfirmsStoredWitnesses) {
  const char* text = R"(ring catalog:Z2xZ2/swap
checks reduced, sigma_rigid, weak_sigma_rigid, sigma_skew_armendariz, skew_armendariz, weak_sigma_skew_armendariz
degree-bound 1
coefficients full
)";
  const auto res = run_spec(parse_spec(text));
  std::size_t explained = 0;
  for (const auto& r : res.records) {
    if (!r.witness.is_object()) continue;
    const auto ex = explain_witness(Json::parse(to_json(r).dump()));
    EXPECT_TRUE(ex.confirmed) << r.check;
    ++explained;
  }
  EXPECT_GE(explained, 3u);
}

TEST(Explain, RejectsTamperedWitness) {
  const auto res = run_spec(parse_spec("ring catalog:R3(Z2)\nchecks sigma_rigid\n"));
  auto j = to_json(res.records.at(0));
  j["witness"]["elements"][0] = "[[1,0,0],[0,1,0],[0,0,1]]";
  EXPECT_FALSE(explain_witness(j).confirmed);
  auto k = to_json(res.records.at(0));
  k["witness"]["elements"][0] = "[[2,0,0],[0,1,0],[0,0,1]]";
  EXPECT_THROW(explain_witness(k), std::invalid_argument);
}

TEST(Explain, TheoremSuiteWitnesses) {
  SuiteOptions opts;
  for (const char* name : {"R3(Z2)", "S(Z3)"}) {
    for (const auto& t : verify_theorems(opts, std::string(name))) {
      const auto rec = theorem_record(t);
      if (!rec.witness.is_object() || !rec.witness.contains("instance_spec")) continue;
      EXPECT_TRUE(explain_witness(to_json(rec)).confirmed) << t.theorem << " " << name;
    }
  }
}
