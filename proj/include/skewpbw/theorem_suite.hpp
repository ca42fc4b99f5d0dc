#pragma once

// Re-verification of the rigidity / Armendariz theorems on catalog
// instances. Every theorem is an implication "hypotheses => conclusion";
// instances failing the hypotheses are reported as vacuous, and a
// conclusion failure on a gated instance is a hard failure.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewpbw/catalog.hpp"
#include "skewpbw/classify.hpp"
#include "skewpbw/property_lab.hpp"

namespace skewpbw {

enum class InstanceStatus { Pass, Vacuous, Fail, Skipped };

inline std::string to_string(InstanceStatus s) {
  switch (s) {
    case InstanceStatus::Pass:
      return "pass";
    case InstanceStatus::Vacuous:
      return "vacuous";
    case InstanceStatus::Fail:
      return "fail";
    case InstanceStatus::Skipped:
      return "skipped";
  }
  return "?";
}

struct TheoremReport {
  std::string theorem;
  std::string instance;
  InstanceStatus status = InstanceStatus::Pass;
  std::string note;
  std::vector<std::pair<std::string, std::string>> details;  // ordered facts and witnesses
  std::optional<PropertyVerdict> verdict;                    // the decisive verdict, when there is one
  double wall_ms = 0;
  std::optional<FiniteRing> ring;  // for rendering witnesses
};

struct SuiteOptions {
  unsigned degree_bound = 2;
  unsigned power_bound = 4;
  std::uint64_t seed = 0x5eed;
  std::uint64_t element_budget = kDefaultElementBudget;
  std::uint64_t pair_budget = std::uint64_t{1} << 22;  // a,b pairs for the two-element propositions
  std::uint64_t candidate_cap = std::uint64_t{1} << 26;  // Armendariz search pairs
  unsigned jobs = 1;
};

namespace theorem {
inline constexpr const char* kExpectedFlags = "expected-flags";
inline constexpr const char* kRigidIff = "rigid-iff-weak-rigid-and-reduced";
inline constexpr const char* kNilTransfer = "nil-transfer";
inline constexpr const char* kIdempotentFixed = "central-idempotents-fixed";
inline constexpr const char* kIdealDecomposition = "ideal-decomposition";
inline constexpr const char* kIdealDecompositionLiteral = "ideal-decomposition-literal";
inline constexpr const char* kWeakArmendariz = "ni-weak-rigid-implies-weak-armendariz";
inline constexpr const char* kCounterexampleR3 = "counterexample-R3";
inline constexpr const char* kCounterexampleS = "counterexample-S";
}  // namespace theorem

/// Cached classification of one instance.
class InstanceFacts {
 public:
  InstanceFacts(Instance inst, const SuiteOptions& opts) : inst_(std::move(inst)), opts_(opts) {}

  const Instance& instance() const { return inst_; }
  const FiniteRing& ring() const { return inst_.ring; }

  bool reduced() { return get(reduced_, [&] { return is_reduced(ring(), opts_.element_budget, opts_.jobs); }); }
  bool ni() { return get(ni_, [&] { return is_ni(ring(), opts_.element_budget); }); }
  bool abelian() { return get(abelian_, [&] { return is_abelian(ring(), opts_.element_budget); }); }
  const PropertyVerdict& rigid() {
    if (!rigid_) rigid_ = is_sigma_rigid(ring(), inst_.family, opts_.jobs, opts_.element_budget);
    return *rigid_;
  }
  const PropertyVerdict& weak_rigid() {
    if (!weak_) weak_ = is_weak_sigma_rigid(ring(), inst_.family, opts_.jobs, opts_.element_budget);
    return *weak_;
  }
  const std::vector<OrbitMap>& orbit() {
    if (!orbit_) orbit_ = orbit_closure(inst_.family);
    return *orbit_;
  }
  const NilOracle& nil() {
    if (!nil_) nil_.emplace(ring());
    return *nil_;
  }

 private:
  template <class F>
  bool get(std::optional<bool>& slot, F&& f) {
    if (!slot) slot = f();
    return *slot;
  }

  Instance inst_;
  SuiteOptions opts_;
  std::optional<bool> reduced_, ni_, abelian_;
  std::optional<PropertyVerdict> rigid_, weak_;
  std::optional<std::vector<OrbitMap>> orbit_;
  std::optional<NilOracle> nil_;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline TheoremReport start(const char* id, const InstanceFacts& f) { return TheoremReport{id, f.instance().name, {}, {}, {}, {}, 0, f.ring()}; }

inline std::string theta_string(const ExponentVector& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

inline void vacuous(TheoremReport& rep, std::string why) {
  rep.status = InstanceStatus::Vacuous;
  rep.note = std::move(why);
}

/// NI and weak Sigma-rigid; returns the missing hypotheses, empty when met.
inline std::string ni_weak_gate(InstanceFacts& f) {
  std::string missing;
  if (!f.ni()) missing += "not NI";
  if (!f.weak_rigid().holds()) missing += std::string(missing.empty() ? "" : ", ") + "not weak Sigma-rigid";
  return missing;
}

}  // namespace detail

inline TheoremReport check_expected_flags(InstanceFacts& f, const ExpectedFlags& want) {
  auto rep = detail::start(theorem::kExpectedFlags, f);
  const ExpectedFlags got{f.reduced(), f.ni(), f.abelian(), f.rigid().holds(), f.weak_rigid().holds()};
  const std::pair<const char*, std::pair<bool, bool>> rows[] = {
      {"reduced", {got.reduced, want.reduced}},
      {"ni", {got.ni, want.ni}},
      {"abelian", {got.abelian, want.abelian}},
      {"sigma_rigid", {got.sigma_rigid, want.sigma_rigid}},
      {"weak_sigma_rigid", {got.weak_sigma_rigid, want.weak_sigma_rigid}},
  };
  for (const auto& [name, v] : rows) {
    rep.details.emplace_back(name, detail::yes_no(v.first));
    if (v.first != v.second) {
      rep.status = InstanceStatus::Fail;
      rep.note += std::string(rep.note.empty() ? "" : "; ") + name + " expected " + detail::yes_no(v.second);
    }
  }
  return rep;
}

/// Sigma-rigid <=> weak Sigma-rigid and reduced.
inline TheoremReport check_rigid_iff_weakrigid_reduced(InstanceFacts& f) {
  auto rep = detail::start(theorem::kRigidIff, f);
  const bool left = f.rigid().holds();
  const bool weak = f.weak_rigid().holds();
  const bool reduced = f.reduced();
  rep.details = {{"sigma_rigid", detail::yes_no(left)},
                 {"weak_sigma_rigid", detail::yes_no(weak)},
                 {"reduced", detail::yes_no(reduced)}};
  if (left != (weak && reduced)) {
    rep.status = InstanceStatus::Fail;
    rep.note = "biconditional violated";
  }
  rep.verdict = f.rigid();
  return rep;
}

/// For NI weak Sigma-rigid R and all orbit maps m:
/// (1) ab nil => a m(b), m(a) b nil; (2) m(a) b nil => ab, ba nil;
/// (3) a m(b) nil => ab, ba nil.
inline TheoremReport check_nil_transfer(InstanceFacts& f, const SuiteOptions& opts) {
  auto rep = detail::start(theorem::kNilTransfer, f);
  if (auto missing = detail::ni_weak_gate(f); !missing.empty()) {
    detail::vacuous(rep, "hypotheses not met: " + missing);
    return rep;
  }
  const FiniteRing& r = f.ring();
  if (r.size() > opts.pair_budget / r.size()) {
    rep.status = InstanceStatus::Skipped;
    rep.note = "pair enumeration exceeds budget";
    return rep;
  }
  const auto& nil = f.nil();
  const auto& orbit = f.orbit();
  const auto all = r.elements(opts.element_budget);
  std::uint64_t checked = 0;
  for (auto a : all)
    for (auto b : all) {
      const bool ab = nil(r.mul(a, b));
      const bool ba = nil(r.mul(b, a));
      for (const auto& m : orbit) {
        const bool a_mb = nil(r.mul(a, m.map(b)));
        const bool ma_b = nil(r.mul(m.map(a), b));
        const char* part = nullptr;
        if (ab && !(a_mb && ma_b)) part = "(1)";
        else if (ma_b && !(ab && ba)) part = "(2)";
        else if (a_mb && !(ab && ba)) part = "(3)";
        ++checked;
        if (part) {
          rep.status = InstanceStatus::Fail;
          rep.note = std::string("part ") + part + " violated";
          rep.details = {{"a", r.format(a)}, {"b", r.format(b)}, {"theta", detail::theta_string(m.theta)}};
          return rep;
        }
      }
    }
  rep.details = {{"triples_checked", std::to_string(checked)}, {"orbit_size", std::to_string(orbit.size())}};
  return rep;
}

/// NI and weak Sigma-rigid => sigma_i(e) = e for central idempotents e.
inline TheoremReport check_idempotent_fixed(InstanceFacts& f, const SuiteOptions& opts) {
  auto rep = detail::start(theorem::kIdempotentFixed, f);
  const FiniteRing& r = f.ring();
  const auto& fam = f.instance().family;
  std::vector<RingElement> central;
  for (auto e : idempotents(r, opts.element_budget))
    if (is_central(r, e, opts.element_budget)) central.push_back(e);
  // a central idempotent moved by some sigma_i, if any; reported either way
  std::optional<std::pair<RingElement, std::size_t>> moved;
  for (auto e : central)
    for (std::size_t i = 0; i < fam.size() && !moved; ++i)
      if (fam[i](e) != e) moved = std::pair{e, i};
  std::string list;
  for (auto e : central) list += (list.empty() ? "" : " ") + r.format(e);
  rep.details.emplace_back("central_idempotents", list);
  if (moved)
    rep.details.emplace_back("moved", r.format(moved->first) + " by sigma_" + std::to_string(moved->second + 1));
  if (auto missing = detail::ni_weak_gate(f); !missing.empty()) {
    detail::vacuous(rep, "hypotheses not met: " + missing);
    return rep;
  }
  if (moved) {
    rep.status = InstanceStatus::Fail;
    rep.note = "central idempotent not fixed";
  }
  return rep;
}

/// For abelian R and each idempotent e: R weak Sigma-rigid <=> eR and
/// (1-e)R weak Sigma-rigid ideals. In fixed mode the hypothesis on the
/// idempotents is sigma_i(e) = e; in literal mode it is sigma_i(e) = 0.
inline TheoremReport check_ideal_decomposition(InstanceFacts& f, const SuiteOptions& opts, bool literal = false) {
  auto rep = detail::start(literal ? theorem::kIdealDecompositionLiteral : theorem::kIdealDecomposition, f);
  const FiniteRing& r = f.ring();
  const auto& fam = f.instance().family;
  const auto idem = idempotents(r, opts.element_budget);
  // literal mode tests e = 1 first so its unsatisfiability is always the reported reason
  std::vector<RingElement> order = idem;
  if (literal) std::stable_partition(order.begin(), order.end(), [&](RingElement e) { return e == r.one(); });
  for (auto e : order)
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto target = literal ? r.zero() : e;
      if (fam[i](e) != target) {
        const std::string why = literal && e == r.one()
                                    ? "hypothesis unsatisfiable: sigma_i(1) = 1 != 0"
                                    : "hypothesis not met: sigma_" + std::to_string(i + 1) + "(" + r.format(e) + ") != " +
                                          r.format(target);
        detail::vacuous(rep, why);
        return rep;
      }
    }
  if (!f.abelian()) {
    detail::vacuous(rep, "hypotheses not met: not abelian");
    return rep;
  }
  const bool whole = f.weak_rigid().holds();
  rep.details.emplace_back("weak_sigma_rigid", detail::yes_no(whole));
  for (auto e : idem) {
    const auto eR = principal_right_ideal(r, e, opts.element_budget);
    const auto fR = principal_right_ideal(r, r.sub(r.one(), e), opts.element_budget);
    const bool parts = is_weak_sigma_rigid_ideal(r, fam, eR, opts.jobs, opts.element_budget).holds() &&
                       is_weak_sigma_rigid_ideal(r, fam, fR, opts.jobs, opts.element_budget).holds();
    rep.details.emplace_back("e=" + r.format(e), detail::yes_no(parts));
    if (parts != whole) {
      rep.status = InstanceStatus::Fail;
      rep.note = "equivalence violated at e = " + r.format(e);
      return rep;
    }
  }
  return rep;
}

/// NI, weak Sigma-rigid, endomorphism type, central invertible c_ij =>
/// weak Sigma-skew Armendariz (searched up to the degree bound).
inline TheoremReport check_ni_weakrigid_implies_weak_armendariz(InstanceFacts& f, const SuiteOptions& opts) {
  auto rep = detail::start(theorem::kWeakArmendariz, f);
  const auto& sys = f.instance().system;
  std::string missing = detail::ni_weak_gate(f);
  auto add = [&](bool ok, const char* what) {
    if (!ok) missing += std::string(missing.empty() ? "" : ", ") + what;
  };
  add(sys.endomorphism_type(), "not endomorphism type");
  add(sys.c_central(), "c_ij not central");
  add(sys.c_invertible(), "c_ij not invertible");
  if (!missing.empty()) {
    if (!f.ni()) {
      const auto v = find_ni_violation(f.ring(), opts.element_budget);
      rep.details.emplace_back("ni_violation", v->law + " of " + f.ring().format(v->a) + " and " + f.ring().format(v->b));
    }
    detail::vacuous(rep, "hypotheses not met: " + missing);
    return rep;
  }
  SearchBudget budget;
  budget.degree_bound = opts.degree_bound;
  budget.seed = opts.seed;
  budget.jobs = opts.jobs;
  budget.candidate_cap = opts.candidate_cap;
  budget.element_budget = opts.element_budget;
  try {
    rep.verdict = is_weak_sigma_skew_armendariz(sys, budget);
  } catch (const ResourceError& e) {
    rep.status = InstanceStatus::Skipped;
    rep.note = e.what();
    return rep;
  }
  if (rep.verdict->fails()) {
    rep.status = InstanceStatus::Fail;
    rep.note = "witness on a gated instance";
  }
  return rep;
}

/// R3: weak rigid but not rigid. S: weak rigid but not weak skew Armendariz.
inline std::optional<TheoremReport> check_counterexample(InstanceFacts& f, const SuiteOptions& opts) {
  const std::string& name = f.instance().name;
  const FiniteRing& r = f.ring();
  if (name == "R3(Z2)") {
    auto rep = detail::start(theorem::kCounterexampleR3, f);
    const bool weak = f.weak_rigid().holds();
    const auto& rigid = f.rigid();
    rep.details.emplace_back("weak_sigma_rigid", detail::yes_no(weak));
    rep.details.emplace_back("sigma_rigid", detail::yes_no(rigid.holds()));
    bool ok = weak && rigid.fails();
    if (rigid.fails()) {
      const auto& w = rigid.element_witness();
      const auto a = w.elements.at(0);
      ok = ok && !r.is_zero(a) && r.is_zero(r.mul(a, sigma_power(f.instance().family, *w.theta)(a)));
      rep.details.emplace_back("witness", r.format(a));
    }
    rep.verdict = rigid;
    if (!ok) {
      rep.status = InstanceStatus::Fail;
      rep.note = "expected weak rigid and not rigid";
    }
    return rep;
  }
  if (name == "S(Z3)") {
    auto rep = detail::start(theorem::kCounterexampleS, f);
    const bool weak = f.weak_rigid().holds();
    SearchBudget budget;
    budget.degree_bound = 1;
    budget.coefficients = CoefficientMode::BlockElementary;
    budget.seed = opts.seed;
    budget.jobs = opts.jobs;
    budget.candidate_cap = opts.candidate_cap;
    budget.element_budget = opts.element_budget;
    auto v = is_weak_sigma_skew_armendariz(f.instance().system, budget);
    rep.details.emplace_back("weak_sigma_rigid", detail::yes_no(weak));
    rep.details.emplace_back("weak_sigma_skew_armendariz", to_string(v.status));
    bool ok = weak && v.fails();
    if (v.fails()) {
      const auto& w = v.poly_witness();
      const bool zero = mul(w.f, w.g).is_zero();
      const bool never_zero = !r.is_zero(r.pow(*w.value, r.size()));
      rep.details.emplace_back("f", w.f.to_string());
      rep.details.emplace_back("g", w.g.to_string());
      rep.details.emplace_back("value", r.format(*w.value));
      rep.details.emplace_back("value_power_|S|_nonzero", detail::yes_no(never_zero));
      ok = ok && zero && never_zero;
    }
    rep.verdict = std::move(v);
    if (!ok) {
      rep.status = InstanceStatus::Fail;
      rep.note = "expected weak rigid and not weak skew Armendariz";
    }
    return rep;
  }
  return std::nullopt;
}

/// All theorem checks on one catalog entry, in fixed order.
inline std::vector<TheoremReport> verify_entry(const CatalogEntry& entry, const SuiteOptions& opts, Builtins& builtins) {
  using clock = std::chrono::steady_clock;
  static const char* const kAll[] = {theorem::kExpectedFlags,   theorem::kRigidIff,
                                     theorem::kNilTransfer,     theorem::kIdempotentFixed,
                                     theorem::kIdealDecomposition, theorem::kIdealDecompositionLiteral,
                                     theorem::kWeakArmendariz};
  const FiniteRing probe = builtins.ring(entry.ring_expr);
  if (probe.size() > opts.element_budget) {
    std::vector<TheoremReport> out;
    for (const char* id : kAll)
      out.push_back(TheoremReport{id, entry.name, InstanceStatus::Skipped,
                                  "|R| = " + std::to_string(probe.size()) + " exceeds element budget " +
                                      std::to_string(opts.element_budget),
                                  {}, {}, 0, std::nullopt});
    // the literal hypothesis fails at e = 1 without enumerating R
    const Instance inst = entry.build(builtins);
    for (std::size_t i = 0; i < inst.family.size(); ++i)
      if (inst.family[i](probe.one()) != probe.zero()) {
        auto& lit = out[5];
        lit.status = InstanceStatus::Vacuous;
        lit.note = "hypothesis unsatisfiable: sigma_i(1) = 1 != 0";
        break;
      }
    return out;
  }
  InstanceFacts facts(entry.build(builtins), opts);
  std::vector<TheoremReport> out;
  auto timed = [&](auto&& fn) {
    const auto t0 = clock::now();
    TheoremReport rep = fn();
    rep.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    out.push_back(std::move(rep));
  };
  timed([&] {
    if (entry.expected) return check_expected_flags(facts, *entry.expected);
    auto rep = detail::start(theorem::kExpectedFlags, facts);
    rep.status = InstanceStatus::Skipped;
    rep.note = "no recorded expectations";
    return rep;
  });
  timed([&] { return check_rigid_iff_weakrigid_reduced(facts); });
  timed([&] { return check_nil_transfer(facts, opts); });
  timed([&] { return check_idempotent_fixed(facts, opts); });
  timed([&] { return check_ideal_decomposition(facts, opts, false); });
  timed([&] { return check_ideal_decomposition(facts, opts, true); });
  timed([&] { return check_ni_weakrigid_implies_weak_armendariz(facts, opts); });
  const auto t0 = clock::now();
  if (auto rep = check_counterexample(facts, opts)) {
    rep->wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    out.push_back(std::move(*rep));
  }
  return out;
}

/// Runs the suite over the catalog (or one named entry), in catalog order.
inline std::vector<TheoremReport> verify_theorems(const SuiteOptions& opts = {},
                                                  const std::optional<std::string>& only = std::nullopt) {
  Builtins builtins;
  std::vector<TheoremReport> out;
  std::vector<CatalogEntry> entries;
  if (only) {
    auto e = find_catalog_entry(*only);
    if (!e) throw std::invalid_argument("unknown catalog instance '" + *only + "'");
    entries.push_back(*e);
  } else {
    entries = catalog();
  }
  for (const auto& e : entries) {
    auto reps = verify_entry(e, opts, builtins);
    out.insert(out.end(), std::make_move_iterator(reps.begin()), std::make_move_iterator(reps.end()));
  }
  return out;
}

inline bool suite_passed(const std::vector<TheoremReport>& reports) {
  for (const auto& r : reports)
    if (r.status == InstanceStatus::Fail) return false;
  return true;
}

}  // namespace skewpbw
