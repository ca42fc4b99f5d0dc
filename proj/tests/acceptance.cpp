// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "oracles.hpp"

using namespace skewpbw;

namespace {

// Wall-time limits in seconds; algebraic comparisons are exact.
constexpr double kRingLawsLimit = 10.0;
constexpr double kClosedFormulaLimit = 5.0;
constexpr double kR3Limit = 1.0;
constexpr double kSLimit = 60.0;
constexpr std::uint64_t kSampledTriples = 100000;
constexpr unsigned kClosedFormulaDegree = 4;
constexpr std::size_t kMinRigidInstances = 8;
constexpr unsigned kGateDegree = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

std::string canonical_report(const std::vector<TheoremReport>& reports) {
  std::string out;
  for (const auto& t : reports) out += to_json(theorem_record(t), false).dump() + "\n";
  return out;
}

}  // namespace

int main() {
  Builtins builtins;
  std::vector<TheoremReport> suite;

  criterion(1, "ring laws on builtin catalog rings", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    std::set<std::string> seen;
    std::string detail;
    Outcome o;
    for (const auto& e : catalog()) {
      if (!seen.insert(e.ring_expr).second) continue;
      const auto r = builtins.ring(e.ring_expr);
      LawCheckOptions opts;
      opts.exhaustive_cap = 100;
      opts.samples = kSampledTriples;
      const auto rep = verify_ring_laws(r, opts);
      const bool ok = !rep.violation && (rep.exhaustive ? r.size() <= 100 : rep.triples >= kSampledTriples);
      o.pass = o.pass && ok;
      detail += e.ring_expr + (rep.exhaustive ? "(exh)" : "(" + std::to_string(rep.triples) + ")") + (ok ? " " : "! ");
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < kRingLawsLimit;
    o.detail = detail + "total " + fmt_secs(secs) + " < " + fmt_secs(kRingLawsLimit);
    return o;
  });

  criterion(2, "nilradical oracle", [&] {
    auto names = [](const FiniteRing& r, const std::vector<RingElement>& v) {
      std::set<std::string> out;
      for (auto a : v) out.insert(r.format(a));
      return out;
    };
    Outcome o;
    const auto z4 = builtins.ring("Z4");
    const auto z6 = builtins.ring("Z6");
    const auto r3 = builtins.ring("R3(Z2)");
    for (const auto& r : {z4, z6, r3}) {
      const auto a = names(r, oracle::nil_by_power(r));
      const auto b = names(r, oracle::nil_by_cycle(r));
      const auto c = names(r, nil_set(r).elements());
      o.pass = o.pass && a == b && b == c;
    }
    o.pass = o.pass && names(z4, nil_set(z4).elements()) == std::set<std::string>{"0", "2"};
    o.pass = o.pass && names(z6, nil_set(z6).elements()) == std::set<std::string>{"0"};
    const auto nr3 = nil_set(r3).elements();
    bool zero_diag = nr3.size() == 8;
    for (auto a : nr3) zero_diag = zero_diag && oracle::parse_matrix(r3.format(a))[0][0] == 0;
    o.pass = o.pass && zero_diag;
    o.detail = "nil(Z4)={0,2}, nil(Z6)={0}, |nil(R3(Z2))|=" + std::to_string(nr3.size()) +
               " zero diagonal; power bound and cycle detection agree";
    return o;
  });

  criterion(3, "closed formula equals rewriting", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::uint64_t compared = 0;
    for (const char* name : {"swap-ore", "quantum-plane(Z3,2)"}) {
      const auto inst = find_catalog_entry(name)->build(builtins);
      for (const auto& alpha : monomials_up_to(inst.system.n(), kClosedFormulaDegree))
        for (auto r : inst.ring.elements()) {
          const bool same = mono_times_coeff_closed(inst.system, alpha, r) ==
                            SkewPoly::monomial(inst.system, alpha) * SkewPoly::constant(inst.system, r);
          o.pass = o.pass && same;
          ++compared;
        }
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < kClosedFormulaLimit;
    o.detail = std::to_string(compared) + " (alpha, r) pairs with |alpha| <= 4, exact; " + fmt_secs(secs) + " < " +
               fmt_secs(kClosedFormulaLimit);
    return o;
  });

  criterion(4, "confluence of builtin systems", [&] {
    Outcome o;
    std::size_t systems = 0;
    for (const auto& e : catalog()) {
      const auto inst = e.build(builtins);
      verify_pbw_axioms(inst.system);
      ++systems;
    }
    std::string diagnostic;
    try {
      find_catalog_entry("quantum-plane(Z3,0)")->build(builtins);
    } catch (const AxiomViolation& e) {
      diagnostic = e.what();
    }
    o.pass = diagnostic == "c_{1,2} must be nonzero";
    o.detail = std::to_string(systems) + " systems confluent; q = 0 rejected: \"" + diagnostic + "\"";
    return o;
  });

  suite = verify_theorems();

  criterion(5, "sigma-rigid iff weak sigma-rigid and reduced", [&] {
    Outcome o;
    std::size_t pass = 0;
    for (const auto& t : suite) {
      if (t.theorem != std::string(theorem::kRigidIff)) continue;
      if (t.status == InstanceStatus::Fail) o.pass = false;
      if (t.status == InstanceStatus::Pass) ++pass;
    }
    o.pass = o.pass && pass >= kMinRigidInstances;
    o.detail = std::to_string(pass) + " instances evaluated exhaustively, no mismatch (need >= " +
               std::to_string(kMinRigidInstances) + ")";
    return o;
  });

  criterion(6, "R3(Z2) is weak rigid but not rigid", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto inst = find_catalog_entry("R3(Z2)")->build(builtins);
    const auto weak = is_weak_sigma_rigid(inst.ring, inst.family);
    const auto rigid = is_sigma_rigid(inst.ring, inst.family);
    Outcome o;
    o.pass = weak.holds() && rigid.fails();
    if (rigid.fails()) {
      const auto& w = rigid.element_witness();
      const auto a = w.elements.at(0);
      o.pass = o.pass && !inst.ring.is_zero(a) &&
               inst.ring.is_zero(inst.ring.mul(a, sigma_power(inst.family, *w.theta)(a)));
      o.detail = "witness r = " + inst.ring.format(a) + ", r*sigma(r) = 0";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < kR3Limit;
    o.detail += "; " + fmt_secs(secs) + " < " + fmt_secs(kR3Limit);
    return o;
  });

  criterion(7, "S(Z3) weak rigid but not weak skew Armendariz at D = 1", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto inst = find_catalog_entry("S(Z3)")->build(builtins);
    const FiniteRing& r = inst.ring;
    const auto weak = is_weak_sigma_rigid(r, inst.family);
    SearchBudget b;
    b.degree_bound = 1;
    b.coefficients = CoefficientMode::BlockElementary;
    const auto v = is_weak_sigma_skew_armendariz(inst.system, b);
    Outcome o;
    o.pass = weak.holds() && v.fails();
    if (v.fails()) {
      const auto& w = v.poly_witness();
      const bool zero = (w.f * w.g).is_zero();
      const auto value = r.mul(w.a, apply_sigma_power(inst.family, w.alpha, w.b));
      bool never = true;
      RingElement p = value;
      for (std::uint64_t k = 1; k <= r.size() && never; ++k, p = r.mul(p, value)) never = !r.is_zero(p);
      o.pass = o.pass && zero && never && value == *w.value;
      o.detail = "f = " + w.f.to_string() + ", g = " + w.g.to_string() + ", a*sigma^alpha(b) = " + r.format(value) +
                 " never reaches 0 in |S| steps";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < kSLimit;
    o.detail += "; " + fmt_secs(secs) + " < " + fmt_secs(kSLimit);
    return o;
  });

  criterion(8, "gate for weak skew Armendariz", [&] {
    Outcome o;
    std::set<std::string> gated;
    for (const auto& t : suite) {
      if (t.theorem != std::string(theorem::kWeakArmendariz)) continue;
      if (t.status == InstanceStatus::Fail) o.pass = false;
      if (t.status == InstanceStatus::Pass) {
        gated.insert(t.instance);
        o.pass = o.pass && t.verdict && !t.verdict->fails() && t.verdict->bound &&
                 t.verdict->bound->degree == kGateDegree && t.verdict->bound->coefficients == "full";
      }
    }
    o.pass = o.pass && gated.count("R3(Z2)") && gated.count("Z4");
    std::string list;
    for (const auto& g : gated) list += (list.empty() ? "" : ", ") + g;
    o.detail = "no witness at D = 2 over full coefficients on gated instances: " + list;
    return o;
  });

  criterion(9, "nil transfer, idempotents and ideal decomposition", [&] {
    Outcome o;
    std::size_t passed = 0;
    std::size_t literal = 0;
    std::size_t instances = 0;
    std::set<std::string> names;
    for (const auto& t : suite) {
      names.insert(t.instance);
      const std::string id = t.theorem;
      if (id == theorem::kNilTransfer || id == theorem::kIdempotentFixed || id == theorem::kIdealDecomposition) {
        if (t.status == InstanceStatus::Fail) o.pass = false;
        if (t.status == InstanceStatus::Pass) ++passed;
      }
      if (id == theorem::kIdealDecompositionLiteral) {
        ++instances;
        if (t.status == InstanceStatus::Vacuous && t.note.find("unsatisfiable") != std::string::npos) ++literal;
      }
    }
    o.pass = o.pass && passed > 0 && literal == instances && instances == names.size();
    o.detail = std::to_string(passed) + " gated checks pass; literal hypothesis unsatisfiable at e = 1 on " +
               std::to_string(literal) + "/" + std::to_string(names.size()) + " instances";
    return o;
  });

  criterion(10, "deterministic reports", [&] {
    SuiteOptions one;
    SuiteOptions many;
    many.jobs = 4;
    const auto a = canonical_report(suite);
    const auto b = canonical_report(verify_theorems(one));
    const auto c = canonical_report(verify_theorems(many));
    Outcome o;
    o.pass = a == b && b == c;
    o.detail = std::to_string(a.size()) + " bytes, identical across runs and --jobs 1/4 (timings stripped)";
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
