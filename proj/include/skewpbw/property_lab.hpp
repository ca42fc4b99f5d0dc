#pragma once

// Deciders for rigidity and Armendariz-type properties of concrete
// instances. Rigidity quantifies over the finite orbit closure and is
// decided exactly. Armendariz properties quantify over all polynomials and
// are searched up to a degree bound over a coefficient subset.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "skewpbw/classify.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/exponent.hpp"
#include "skewpbw/morphisms.hpp"
#include "skewpbw/parallel.hpp"
#include "skewpbw/pbw.hpp"
#include "skewpbw/ring.hpp"

namespace skewpbw {

struct ElementWitness {
  std::vector<RingElement> elements;
  std::optional<ExponentVector> theta;
  std::string description;
};

struct PolyWitness {
  SkewPoly f;
  SkewPoly g;
  std::size_t i = 0;  // index into e_set order of f (ascending monomial list position)
  std::size_t j = 0;
  ExponentVector alpha;  // exp(X_i)
  ExponentVector beta;   // exp(Y_j)
  RingElement a{};
  RingElement b{};
  SkewPoly product;                      // fg
  std::optional<RingElement> value;      // offending ring element, when the conclusion is about one
  std::optional<SkewPoly> term_product;  // a_i X_i b_j Y_j, for the (Sigma, Delta) condition
  std::optional<unsigned> nil_power;     // k with (fg)^k = 0, for the skew-Pi condition
  std::string description;
};

struct BoundDescriptor {
  unsigned degree = 0;
  std::optional<unsigned> power_bound;
  std::string coefficients;
  std::uint64_t coefficient_count = 0;
  std::uint64_t pairs = 0;  // size of the searched (f, g) space
  std::uint64_t seed = 0;
};

struct PropertyVerdict {
  enum class Status { Holds, Fails, HoldsUpToBound };

  Status status = Status::Holds;
  std::optional<std::variant<ElementWitness, PolyWitness>> witness;
  std::optional<BoundDescriptor> bound;

  bool fails() const { return status == Status::Fails; }
  bool holds() const { return status == Status::Holds; }
  const ElementWitness& element_witness() const { return std::get<ElementWitness>(*witness); }
  const PolyWitness& poly_witness() const { return std::get<PolyWitness>(*witness); }
};

inline std::string to_string(PropertyVerdict::Status s) {
  switch (s) {
    case PropertyVerdict::Status::Holds:
      return "holds";
    case PropertyVerdict::Status::Fails:
      return "fails";
    case PropertyVerdict::Status::HoldsUpToBound:
      return "holds-up-to-bound";
  }
  return "?";
}

inline std::optional<PropertyVerdict::Status> parse_status(const std::string& s) {
  if (s == "holds") return PropertyVerdict::Status::Holds;
  if (s == "fails") return PropertyVerdict::Status::Fails;
  if (s == "holds-up-to-bound") return PropertyVerdict::Status::HoldsUpToBound;
  return std::nullopt;
}

enum class CoefficientMode {
  Auto,             // Full when it fits the candidate cap, else BlockElementary
  Full,             // every ring element
  BlockElementary,  // zero plus one nonzero structural parameter (pattern rings)
  Sampled,          // zero plus sample_size seeded random elements
  Explicit          // zero plus explicit_coefficients
};

struct SearchBudget {
  unsigned degree_bound = 3;
  CoefficientMode coefficients = CoefficientMode::Auto;
  std::vector<RingElement> explicit_coefficients;
  std::uint64_t sample_size = 16;
  std::uint64_t candidate_cap = std::uint64_t{1} << 26;
  std::uint64_t seed = 0x5eed;
  unsigned power_bound = 4;
  unsigned jobs = 1;
  std::uint64_t element_budget = kDefaultElementBudget;
};

// ---------------------------------------------------------------------------
// Rigidity

namespace detail {

inline ElementWitness rigid_witness(RingElement a, const OrbitMap& m, std::string description) {
  return ElementWitness{{a, m.map(a)}, m.theta, std::move(description)};
}

}  // namespace detail

/// Sigma-rigid: r * sigma^theta(r) = 0 implies r = 0, for all theta.
/// Witness: the least r (canonical order), with the least theta for it.
inline PropertyVerdict is_sigma_rigid(const FiniteRing& r, const SigmaFamily& fam, unsigned jobs = 1,
                                      std::uint64_t budget = kDefaultElementBudget) {
  if (r.size() > budget) throw ResourceError("rigidity of " + r.name() + " exceeds element budget");
  const auto orbit = orbit_closure(fam);
  auto bad = [&](RingElement a, const OrbitMap& m) { return !r.is_zero(a) && r.is_zero(r.mul(a, m.map(a))); };
  const auto hit = detail::parallel_find_first(r.size(), jobs, [&](std::uint64_t o) {
    const auto a = r.element(o);
    return std::any_of(orbit.begin(), orbit.end(), [&](const OrbitMap& m) { return bad(a, m); });
  });
  PropertyVerdict v;
  if (!hit) return v;
  const auto a = r.element(*hit);
  for (const auto& m : orbit)
    if (bad(a, m)) {
      v.status = PropertyVerdict::Status::Fails;
      v.witness = detail::rigid_witness(a, m, "r*sigma^theta(r) = 0 with r != 0");
      break;
    }
  if (!v.fails()) throw std::logic_error("rigidity witness did not re-check");
  return v;
}

namespace detail {

inline PropertyVerdict weak_rigid_over(const FiniteRing& r, const SigmaFamily& fam, std::uint64_t count,
                                       const std::function<RingElement(std::uint64_t)>& at, unsigned jobs) {
  const auto orbit = orbit_closure(fam);
  const NilOracle nil(r);
  auto bad = [&](RingElement a, bool a_nil, const OrbitMap& m) { return nil(r.mul(a, m.map(a))) != a_nil; };
  const auto hit = parallel_find_first(count, jobs, [&](std::uint64_t o) {
    const auto a = at(o);
    const bool a_nil = nil(a);
    return std::any_of(orbit.begin(), orbit.end(), [&](const OrbitMap& m) { return bad(a, a_nil, m); });
  });
  PropertyVerdict v;
  if (!hit) return v;
  const auto a = at(*hit);
  const bool a_nil = is_nilpotent(r, a);
  for (const auto& m : orbit)
    if (bad(a, a_nil, m)) {
      v.status = PropertyVerdict::Status::Fails;
      v.witness = rigid_witness(a, m,
                                a_nil ? "a is nilpotent but a*sigma^theta(a) is not"
                                      : "a*sigma^theta(a) is nilpotent but a is not");
      break;
    }
  if (!v.fails()) throw std::logic_error("weak rigidity witness did not re-check");
  return v;
}

}  // namespace detail

/// Weak Sigma-rigid: a * sigma^theta(a) in nil(R) iff a in nil(R).
inline PropertyVerdict is_weak_sigma_rigid(const FiniteRing& r, const SigmaFamily& fam, unsigned jobs = 1,
                                           std::uint64_t budget = kDefaultElementBudget) {
  if (r.size() > budget) throw ResourceError("weak rigidity of " + r.name() + " exceeds element budget");
  return detail::weak_rigid_over(r, fam, r.size(), [&](std::uint64_t o) { return r.element(o); }, jobs);
}

/// The same biconditional restricted to a in I. I must be a two-sided ideal.
inline PropertyVerdict is_weak_sigma_rigid_ideal(const FiniteRing& r, const SigmaFamily& fam, const SubsetIdeal& ideal,
                                                 unsigned jobs = 1, std::uint64_t budget = kDefaultElementBudget) {
  if (!(ideal.ring() == r)) throw NotAnIdeal("subset belongs to another ring");
  if (!ideal.is_ideal() && !is_ideal(r, ideal, budget)) throw NotAnIdeal("subset is not a two-sided ideal of " + r.name());
  const auto& elems = ideal.elements();
  return detail::weak_rigid_over(r, fam, elems.size(), [&](std::uint64_t o) { return elems[o]; }, jobs);
}

// ---------------------------------------------------------------------------
// Armendariz searches

/// sigma^alpha(r) = sigma_1^a1(...(sigma_n^an(r))).
inline RingElement apply_sigma_power(const SigmaFamily& fam, const ExponentVector& alpha, RingElement r) {
  for (std::size_t i = alpha.size(); i-- > 0;)
    for (std::uint32_t k = 0; k < alpha[i]; ++k) r = fam[i](r);
  return r;
}

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

struct CoefficientSet {
  std::vector<RingElement> values;  // zero first, then canonical order
  std::string name;
};

inline CoefficientSet resolve_coefficients(const FiniteRing& r, const SearchBudget& budget, std::size_t monomials) {
  auto pairs_for = [&](std::uint64_t c) { return saturating_pow(c, 2 * monomials); };
  auto finish = [&](std::vector<RingElement> vals, std::string name) {
    std::vector<RingElement> nonzero;
    for (auto v : vals) {
      if (!r.contains(v)) throw std::invalid_argument("coefficient outside " + r.name());
      if (!r.is_zero(v)) nonzero.push_back(v);
    }
    std::sort(nonzero.begin(), nonzero.end(), [&](RingElement a, RingElement b) { return r.ordinal(a) < r.ordinal(b); });
    nonzero.erase(std::unique(nonzero.begin(), nonzero.end()), nonzero.end());
    CoefficientSet out{{r.zero()}, std::move(name)};
    out.values.insert(out.values.end(), nonzero.begin(), nonzero.end());
    return out;
  };
  auto block = [&] {
    const auto codes = r.impl().elementary_codes();
    if (!codes) throw ResourceError(r.name() + " has no block-elementary generating set");
    std::vector<RingElement> vals;
    for (auto c : *codes) vals.push_back(RingElement{c});
    return finish(std::move(vals), "block-elementary");
  };
  CoefficientMode mode = budget.coefficients;
  if (mode == CoefficientMode::Auto) {
    const bool full_fits = r.size() <= budget.element_budget && pairs_for(r.size()) <= budget.candidate_cap;
    mode = full_fits || !r.impl().elementary_codes() ? CoefficientMode::Full : CoefficientMode::BlockElementary;
  }
  CoefficientSet out;
  switch (mode) {
    case CoefficientMode::Full:
      out = finish(r.elements(budget.element_budget), "full");
      break;
    case CoefficientMode::BlockElementary:
      out = block();
      break;
    case CoefficientMode::Sampled: {
      std::mt19937_64 rng(budget.seed);
      std::uniform_int_distribution<std::uint64_t> pick(0, r.size() - 1);
      std::vector<RingElement> vals;
      for (std::uint64_t s = 0; s < budget.sample_size; ++s) vals.push_back(r.element(pick(rng)));
      out = finish(std::move(vals), "sampled(" + std::to_string(budget.sample_size) + ")");
      break;
    }
    case CoefficientMode::Explicit:
      out = finish(budget.explicit_coefficients, "explicit(" + std::to_string(budget.explicit_coefficients.size()) + ")");
      break;
    case CoefficientMode::Auto:
      break;
  }
  if (pairs_for(out.values.size()) > budget.candidate_cap)
    throw ResourceError("search over " + std::to_string(out.values.size()) + " coefficients and " +
                        std::to_string(monomials) + " monomials exceeds the candidate cap");
  return out;
}

/// Which conclusion a search tests.
enum class Conclusion {
  WeakSigmaSkew,  // a_i sigma^alpha_i(b_j) in nil(R)
  SigmaSkew,      // a_i sigma^alpha_i(b_j) = 0
  Skew,           // a_0 b_k = 0
  SigmaDelta,     // a_i X_i b_j Y_j = 0 in A
  SkewPi,         // fg in nil(A) implies a_i b_j in nil(R)
  WeakCommutative // a_i b_j in nil(R)
};

class ArmendarizSearch {
 public:
  ArmendarizSearch(const CommutationSystem& sys, const SearchBudget& budget, Conclusion conclusion)
      : sys_(sys),
        r_(sys.ring()),
        budget_(budget),
        conclusion_(conclusion),
        nil_(sys.ring()),
        mons_(monomials_up_to(sys.n(), budget.degree_bound)),
        wide_(monomials_up_to(sys.n(), 2 * budget.degree_bound)) {
    coeffs_ = resolve_coefficients(r_, budget_, mons_.size());
    for (std::size_t k = 0; k < wide_.size(); ++k) wide_index_.emplace(wide_[k], k);
    for (unsigned d = 0; d <= budget_.degree_bound; ++d) {
      std::size_t c = 0;
      while (c < mons_.size() && mons_[c].degree() <= d) ++c;
      upto_.push_back(c);
    }
    // sigma^alpha(c) for every monomial alpha and coefficient c
    sig_.resize(mons_.size());
    for (std::size_t j = 0; j < mons_.size(); ++j)
      for (auto c : coeffs_.values) sig_[j].push_back(apply_sigma_power(sys_.sigma(), mons_[j], c));
  }

  PropertyVerdict run() {
    const std::uint64_t space = saturating_pow(saturating_pow(coeffs_.values.size(), mons_.size()), 2);
    BoundDescriptor bound{budget_.degree_bound, std::nullopt, coeffs_.name, coeffs_.values.size(), space, budget_.seed};
    if (conclusion_ == Conclusion::SkewPi) bound.power_bound = budget_.power_bound;

    for (unsigned df = 0; df <= budget_.degree_bound; ++df) {
      const auto fs = vectors_of_degree(df);
      std::atomic<unsigned> best_dg{budget_.degree_bound};
      const auto key = parallel_min<Key>(fs.size(), budget_.jobs, [&](std::uint64_t fi) -> std::optional<Key> {
        auto g = search_f(fs[fi], best_dg);
        if (!g) return std::nullopt;
        unsigned cur = best_dg.load();
        while (g->first < cur && !best_dg.compare_exchange_weak(cur, g->first)) {
        }
        return Key{g->first, fi, std::move(g->second)};
      });
      if (key) {
        PropertyVerdict v;
        v.status = PropertyVerdict::Status::Fails;
        v.witness = build_witness(fs[std::get<1>(*key)], std::get<2>(*key));
        v.bound = bound;
        return v;
      }
    }
    PropertyVerdict v;
    v.status = PropertyVerdict::Status::HoldsUpToBound;
    v.bound = bound;
    return v;
  }

 private:
  using Digits = std::vector<std::uint32_t>;
  using Dense = std::vector<RingElement>;
  using Key = std::tuple<unsigned, std::uint64_t, Digits>;

  /// Digit vectors over mons_ (lexicographic, first monomial most
  /// significant) of polynomials of degree exactly d.
  std::vector<Digits> vectors_of_degree(unsigned d) const {
    std::vector<Digits> out;
    const std::size_t len = upto_[d];
    const std::size_t low = d == 0 ? 0 : upto_[d - 1];
    const auto base = static_cast<std::uint32_t>(coeffs_.values.size());
    Digits cur(len, 0);
    for (;;) {
      bool top = d == 0;
      for (std::size_t k = low; k < len && !top; ++k) top = cur[k] != 0;
      if (top) {
        Digits full(mons_.size(), 0);
        std::copy(cur.begin(), cur.end(), full.begin());
        out.push_back(std::move(full));
      }
      std::size_t k = len;
      while (k > 0 && cur[k - 1] + 1 == base) cur[--k] = 0;
      if (k == 0) break;
      ++cur[k - 1];
    }
    return out;
  }

  SkewPoly poly_of(const Digits& d) const {
    SkewPoly p(sys_);
    for (std::size_t k = 0; k < d.size(); ++k) p.add_term(mons_[k], coeffs_.values[d[k]]);
    return p;
  }

  Dense dense_of(const SkewPoly& p) const {
    Dense out(wide_.size(), r_.zero());
    for (const auto& [alpha, c] : p.terms()) {
      auto it = wide_index_.find(alpha);
      if (it == wide_index_.end()) throw std::logic_error("product left the degree window");
      out[it->second] = c;
    }
    return out;
  }

  void add_into(Dense& acc, const Dense& a, const Dense& b) const {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = r_.add(a[k], b[k]);
  }

  /// True when the pair (a X_i, b Y_j) violates the conclusion. Zero
  /// coefficients never violate.
  bool violates(std::size_t i, std::uint32_t ai, std::size_t j, std::uint32_t bj) const {
    if (ai == 0 || bj == 0) return false;
    const auto a = coeffs_.values[ai];
    const auto b = coeffs_.values[bj];
    switch (conclusion_) {
      case Conclusion::WeakSigmaSkew:
        return !nil_(r_.mul(a, sig_[i][bj]));
      case Conclusion::SigmaSkew:
        return !r_.is_zero(r_.mul(a, sig_[i][bj]));
      case Conclusion::Skew:
        return i == 0 && !r_.is_zero(r_.mul(a, b));
      case Conclusion::SigmaDelta:
        return !mul(SkewPoly::monomial(sys_, mons_[i], a), SkewPoly::monomial(sys_, mons_[j], b)).is_zero();
      case Conclusion::SkewPi:
      case Conclusion::WeakCommutative:
        return !nil_(r_.mul(a, b));
    }
    return false;
  }

  std::optional<std::pair<std::size_t, std::size_t>> first_violation(const Digits& f, const Digits& g) const {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (violates(i, f[i], j, g[j])) return std::pair{i, j};
    return std::nullopt;
  }

  /// Least k <= power_bound with h^k = 0.
  std::optional<unsigned> nil_power(const SkewPoly& h) const {
    if (h.is_zero()) return 1u;
    SkewPoly p = h;
    for (unsigned k = 2; k <= budget_.power_bound; ++k) {
      p = mul(p, h);
      if (p.is_zero()) return k;
    }
    return std::nullopt;
  }

  /// Least (deg g, g) failing together with f, searching degrees <= best.
  std::optional<std::pair<unsigned, Digits>> search_f(const Digits& f, const std::atomic<unsigned>& best) const {
    const SkewPoly fp = poly_of(f);
    const std::size_t m = mons_.size();
    const std::size_t nc = coeffs_.values.size();
    // table[j][c] = f * (c Y_j), dense
    std::vector<std::vector<Dense>> table(m, std::vector<Dense>(nc));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t c = 0; c < nc; ++c)
        table[j][c] = dense_of(mul(fp, SkewPoly::monomial(sys_, mons_[j], coeffs_.values[c])));
    const bool pi = conclusion_ == Conclusion::SkewPi;
    std::vector<std::vector<std::uint8_t>> bad;
    if (pi) {
      bad.assign(m, std::vector<std::uint8_t>(nc, 0));
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < nc; ++c)
          for (std::size_t i = 0; i < m && !bad[j][c]; ++i) bad[j][c] = violates(i, f[i], j, static_cast<std::uint32_t>(c));
    }
    for (unsigned dg = 0; dg <= budget_.degree_bound && dg <= best.load(); ++dg) {
      const std::size_t len = upto_[dg];
      const std::size_t low = dg == 0 ? 0 : upto_[dg - 1];
      Digits g(m, 0);
      std::vector<Dense> prefix(len + 1, Dense(wide_.size(), r_.zero()));
      for (std::size_t k = 0; k < len; ++k) add_into(prefix[k + 1], prefix[k], table[k][0]);
      for (;;) {
        bool top = dg == 0;
        for (std::size_t k = low; k < len && !top; ++k) top = g[k] != 0;
        if (top) {
          const Dense& h = prefix[len];
          if (pi) {
            bool any_bad = false;
            for (std::size_t k = 0; k < len && !any_bad; ++k) any_bad = bad[k][g[k]] != 0;
            if (any_bad) {
              SkewPoly hp(sys_);
              for (std::size_t k = 0; k < h.size(); ++k) hp.add_term(wide_[k], h[k]);
              if (nil_power(hp)) return std::pair{dg, g};
            }
          } else if (std::all_of(h.begin(), h.end(), [&](RingElement e) { return r_.is_zero(e); })) {
            if (first_violation(f, g)) return std::pair{dg, g};
          }
        }
        std::size_t k = len;
        while (k > 0 && g[k - 1] + 1 == nc) g[--k] = 0;
        if (k == 0) break;
        ++g[k - 1];
        for (std::size_t t = k - 1; t < len; ++t) add_into(prefix[t + 1], prefix[t], table[t][g[t]]);
      }
    }
    return std::nullopt;
  }

  /// Re-evaluates the pair from scratch and packages it.
  PolyWitness build_witness(const Digits& fd, const Digits& gd) const {
    const SkewPoly f = poly_of(fd);
    const SkewPoly g = poly_of(gd);
    const SkewPoly h = mul(f, g);
    std::optional<unsigned> power;
    if (conclusion_ == Conclusion::SkewPi) {
      power = nil_power(h);
      if (!power) throw std::logic_error("skew-Pi witness product is not nilpotent on re-check");
    } else if (!h.is_zero()) {
      throw std::logic_error("Armendariz witness product is nonzero on re-check");
    }
    const auto ij = first_violation(fd, gd);
    if (!ij) throw std::logic_error("Armendariz witness does not violate the conclusion on re-check");
    const auto [i, j] = *ij;
    PolyWitness w{f, g, i, j, mons_[i], mons_[j], coeffs_.values[fd[i]], coeffs_.values[gd[j]], h, {}, {}, power, {}};
    switch (conclusion_) {
      case Conclusion::WeakSigmaSkew:
        w.value = r_.mul(w.a, apply_sigma_power(sys_.sigma(), w.alpha, w.b));
        w.description = "fg = 0 but a_i*sigma^alpha_i(b_j) is not nilpotent";
        break;
      case Conclusion::SigmaSkew:
        w.value = r_.mul(w.a, apply_sigma_power(sys_.sigma(), w.alpha, w.b));
        w.description = "fg = 0 but a_i*sigma^alpha_i(b_j) != 0";
        break;
      case Conclusion::Skew:
        w.value = r_.mul(w.a, w.b);
        w.description = "fg = 0 but a_0*b_k != 0";
        break;
      case Conclusion::SigmaDelta:
        w.term_product = mul(SkewPoly::monomial(sys_, w.alpha, w.a), SkewPoly::monomial(sys_, w.beta, w.b));
        w.description = "fg = 0 but a_i*X_i*b_j*Y_j != 0";
        break;
      case Conclusion::SkewPi:
        w.value = r_.mul(w.a, w.b);
        w.description = "fg is nilpotent but a_i*b_j is not";
        break;
      case Conclusion::WeakCommutative:
        w.value = r_.mul(w.a, w.b);
        w.description = "fg = 0 but a_i*b_j is not nilpotent";
        break;
    }
    return w;
  }

  CommutationSystem sys_;
  FiniteRing r_;
  SearchBudget budget_;
  Conclusion conclusion_;
  NilOracle nil_;
  std::vector<ExponentVector> mons_;
  std::vector<ExponentVector> wide_;
  std::map<ExponentVector, std::size_t> wide_index_;
  std::vector<std::size_t> upto_;  // upto_[d] = number of monomials of degree <= d
  CoefficientSet coeffs_;
  std::vector<std::vector<RingElement>> sig_;
};

inline void require_endomorphism_type(const CommutationSystem& sys, const char* what) {
  if (!sys.endomorphism_type())
    throw NotEndomorphismType(std::string(what) + " needs an extension of endomorphism type (all delta_i = 0)");
}

}  // namespace detail

inline PropertyVerdict is_weak_sigma_skew_armendariz(const CommutationSystem& sys, const SearchBudget& budget = {}) {
  detail::require_endomorphism_type(sys, "weak Sigma-skew Armendariz");
  return detail::ArmendarizSearch(sys, budget, detail::Conclusion::WeakSigmaSkew).run();
}

inline PropertyVerdict is_sigma_skew_armendariz(const CommutationSystem& sys, const SearchBudget& budget = {}) {
  detail::require_endomorphism_type(sys, "Sigma-skew Armendariz");
  return detail::ArmendarizSearch(sys, budget, detail::Conclusion::SigmaSkew).run();
}

inline PropertyVerdict is_skew_armendariz(const CommutationSystem& sys, const SearchBudget& budget = {}) {
  return detail::ArmendarizSearch(sys, budget, detail::Conclusion::Skew).run();
}

inline PropertyVerdict is_sigma_delta_skew_armendariz(const CommutationSystem& sys, const SearchBudget& budget = {}) {
  return detail::ArmendarizSearch(sys, budget, detail::Conclusion::SigmaDelta).run();
}

/// nil(A) membership of fg is decided by h^k = 0 for some k <= power_bound.
inline PropertyVerdict is_skew_pi_armendariz(const CommutationSystem& sys, const SearchBudget& budget = {}) {
  return detail::ArmendarizSearch(sys, budget, detail::Conclusion::SkewPi).run();
}

/// Weak Armendariz in R[x]: pq = 0 implies a_i b_j nilpotent.
inline PropertyVerdict is_weak_armendariz_commutative(const FiniteRing& r, const SearchBudget& budget = {}) {
  return detail::ArmendarizSearch(untwisted(r), budget, detail::Conclusion::WeakCommutative).run();
}

}  // namespace skewpbw
