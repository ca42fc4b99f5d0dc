#pragma once

// Exact arithmetic in a skew PBW extension A = sigma(R)<x1,...,xn>.
//
// Elements are kept in left normal form sum a_alpha x^alpha. Products are
// computed by rewriting words over variables and coefficients with
//   x_i r   -> sigma_i(r) x_i + delta_i(r)
//   x_j x_i -> c_ij x_i x_j + sum_k l_ijk x_k + d_ij      (i < j)
// and coefficient merging. mono_times_coeff_closed evaluates x^alpha r by
// the explicit sigma/delta expansion instead and serves as an independent
// check of the rewriting engine.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewpbw/classify.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/exponent.hpp"
#include "skewpbw/morphisms.hpp"
#include "skewpbw/ring.hpp"

namespace skewpbw {

/// Data of x_j x_i = c x_i x_j + sum_k lin[k] x_k + constant (i < j).
struct Relation {
  RingElement c;
  RingElement constant;
  std::vector<RingElement> lin;
};

class CommutationSystem {
 public:
  /// Relations not listed default to c = 1 with no lower-order terms.
  /// Throws AxiomViolation when some c_ij is zero.
  static CommutationSystem make(std::string name, SigmaFamily sigma, std::vector<SigmaDerivation> delta,
                                std::map<std::pair<std::size_t, std::size_t>, Relation> relations = {},
                                std::uint64_t budget = kDefaultElementBudget);

  const std::string& name() const { return core_->name; }
  const FiniteRing& ring() const { return core_->sigma.ring(); }
  std::size_t n() const { return core_->sigma.size(); }
  const SigmaFamily& sigma() const { return core_->sigma; }
  const RingMap& sigma(std::size_t i) const { return core_->sigma[i]; }
  const SigmaDerivation& delta(std::size_t i) const { return core_->delta.at(i); }
  /// Relation for x_j x_i with i < j (0-based).
  const Relation& relation(std::size_t i, std::size_t j) const { return core_->relations.at(index(i, j)); }

  bool endomorphism_type() const { return core_->endomorphism_type; }
  bool quasi_commutative() const { return core_->quasi_commutative; }
  bool c_central() const { return core_->c_central; }
  bool c_invertible() const { return core_->c_invertible; }

  friend bool operator==(const CommutationSystem& a, const CommutationSystem& b) { return a.core_ == b.core_; }

 private:
  struct Core {
    std::string name;
    SigmaFamily sigma;
    std::vector<SigmaDerivation> delta;
    std::vector<Relation> relations;  // flattened over i < j
    bool endomorphism_type = true;
    bool quasi_commutative = true;
    bool c_central = true;
    bool c_invertible = true;
  };

  std::size_t index(std::size_t i, std::size_t j) const {
    if (!(i < j && j < n())) throw std::out_of_range("relation index requires i < j < n");
    return j * (j - 1) / 2 + i;
  }

  explicit CommutationSystem(std::shared_ptr<const Core> core) : core_(std::move(core)) {}

  std::shared_ptr<const Core> core_;
};

inline CommutationSystem CommutationSystem::make(std::string name, SigmaFamily sigma, std::vector<SigmaDerivation> delta,
                                                 std::map<std::pair<std::size_t, std::size_t>, Relation> relations,
                                                 std::uint64_t budget) {
  const std::size_t n = sigma.size();
  const FiniteRing r = sigma.ring();
  if (delta.size() != n) throw AxiomViolation("expected " + std::to_string(n) + " derivations, got " + std::to_string(delta.size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(delta[i].ring() == r)) throw AxiomViolation("delta_" + std::to_string(i + 1) + " lives on another ring");
    if (!delta[i].sigma().same_as(sigma[i]))
      throw AxiomViolation("delta_" + std::to_string(i + 1) + " is not a sigma_" + std::to_string(i + 1) + "-derivation");
  }
  auto core = std::make_shared<Core>(Core{std::move(name), std::move(sigma), std::move(delta), {}});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Relation rel{r.one(), r.zero(), std::vector<RingElement>(n, r.zero())};
      if (auto it = relations.find({i, j}); it != relations.end()) {
        rel = it->second;
        if (rel.lin.empty()) rel.lin.assign(n, r.zero());
        relations.erase(it);
      }
      const std::string tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
      if (rel.lin.size() != n) throw AxiomViolation("lower-order coefficients of x" + std::to_string(j + 1) + "x" +
                                                    std::to_string(i + 1) + " need " + std::to_string(n) + " entries");
      for (auto v : rel.lin)
        if (!r.contains(v)) throw AxiomViolation("relation coefficient outside " + r.name());
      if (!r.contains(rel.c) || !r.contains(rel.constant)) throw AxiomViolation("relation coefficient outside " + r.name());
      if (r.is_zero(rel.c)) throw AxiomViolation("c_{" + tag + "} must be nonzero", "c_{" + tag + "} = 0");
      core->relations.push_back(rel);
    }
  if (!relations.empty()) throw AxiomViolation("relation given for a pair that is not i < j < n");
  for (const auto& d : core->delta)
    if (!d.is_zero()) core->endomorphism_type = false;
  core->quasi_commutative = core->endomorphism_type;
  for (const auto& rel : core->relations) {
    if (!r.is_zero(rel.constant)) core->quasi_commutative = false;
    for (auto v : rel.lin)
      if (!r.is_zero(v)) core->quasi_commutative = false;
  }
  if (!core->relations.empty()) {
    const auto all = r.elements(budget);
    for (const auto& rel : core->relations) {
      bool central = true;
      for (auto x : all)
        if (r.mul(rel.c, x) != r.mul(x, rel.c)) {
          central = false;
          break;
        }
      bool invertible = false;
      for (auto x : all)
        if (r.mul(rel.c, x) == r.one() && r.mul(x, rel.c) == r.one()) {
          invertible = true;
          break;
        }
      core->c_central = core->c_central && central;
      core->c_invertible = core->c_invertible && invertible;
    }
  }
  return CommutationSystem(std::move(core));
}

/// Ore extension R[x; sigma, delta] as a one-variable system.
inline CommutationSystem ore_extension(const RingMap& sigma, const SigmaDerivation& delta, std::string name = {}) {
  if (name.empty()) name = sigma.ring().name() + "[x;" + sigma.name() + "," + delta.name() + "]";
  return CommutationSystem::make(std::move(name), SigmaFamily({sigma}), {delta});
}

/// Ordinary polynomial ring R[x].
inline CommutationSystem untwisted(const FiniteRing& r) {
  const auto id = RingMap::identity(r);
  return ore_extension(id, zero_derivation(id), r.name() + "[x]");
}

/// Element of A in left normal form.
class SkewPoly {
 public:
  using Terms = std::map<ExponentVector, RingElement>;

  explicit SkewPoly(CommutationSystem sys) : sys_(std::move(sys)) {}
  SkewPoly(CommutationSystem sys, Terms terms) : sys_(std::move(sys)) {
    for (auto& [alpha, c] : terms) add_term(alpha, c);
  }

  static SkewPoly constant(const CommutationSystem& sys, RingElement r) {
    return monomial(sys, ExponentVector(sys.n()), r);
  }
  static SkewPoly monomial(const CommutationSystem& sys, const ExponentVector& alpha, RingElement r) {
    SkewPoly p(sys);
    p.add_term(alpha, r);
    return p;
  }
  static SkewPoly monomial(const CommutationSystem& sys, const ExponentVector& alpha) {
    return monomial(sys, alpha, sys.ring().one());
  }
  static SkewPoly variable(const CommutationSystem& sys, std::size_t i) {
    return monomial(sys, ExponentVector::unit(sys.n(), i));
  }

  const CommutationSystem& system() const { return sys_; }
  const FiniteRing& ring() const { return sys_.ring(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  RingElement coefficient(const ExponentVector& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? ring().zero() : it->second;
  }

  /// this += r x^alpha, keeping the term map free of zeros.
  void add_term(const ExponentVector& alpha, RingElement r) {
    if (alpha.size() != sys_.n()) throw std::invalid_argument("exponent length does not match the extension");
    if (ring().is_zero(r)) return;
    auto [it, inserted] = terms_.try_emplace(alpha, r);
    if (!inserted) {
      it->second = ring().add(it->second, r);
      if (ring().is_zero(it->second)) terms_.erase(it);
    }
  }

  SkewPoly& operator+=(const SkewPoly& o) {
    same_system(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
  }
  SkewPoly operator-() const {
    SkewPoly out(sys_);
    for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha, ring().neg(c));
    return out;
  }
  friend SkewPoly operator+(SkewPoly a, const SkewPoly& b) { return a += b; }
  friend SkewPoly operator-(SkewPoly a, const SkewPoly& b) { return a += -b; }

  /// r * this (coefficients multiplied on the left).
  SkewPoly scaled_left(RingElement r) const {
    SkewPoly out(sys_);
    for (const auto& [alpha, c] : terms_) out.add_term(alpha, ring().mul(r, c));
    return out;
  }

  friend bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.sys_ == b.sys_ && a.terms_ == b.terms_; }

  /// Terms by descending deg-lex order, e.g. "x1^2 + 2*x1*x2 + 3".
  std::string to_string() const;

  void same_system(const SkewPoly& o) const {
    if (!(sys_ == o.sys_)) throw std::invalid_argument("polynomials from different extensions");
  }

 private:
  CommutationSystem sys_;
  Terms terms_;
};

namespace detail {

struct Letter {
  bool is_var = false;
  std::uint32_t var = 0;
  RingElement coef{};
};
using Word = std::vector<Letter>;

enum class Strategy { Leftmost, Rightmost };

inline Word variables_of(const ExponentVector& alpha) {
  Word w;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::uint32_t k = 0; k < alpha[i]; ++k) w.push_back({true, static_cast<std::uint32_t>(i), {}});
  return w;
}

inline bool reducible(const Letter& a, const Letter& b) {
  if (!a.is_var) return !b.is_var;   // coefficient . coefficient
  if (!b.is_var) return true;        // x_i . r
  return a.var > b.var;              // x_j . x_i, j > i
}

/// Rewrites lead * word to left normal form, reducing at the leftmost (or
/// rightmost) reducible adjacent pair at every step.
inline SkewPoly normalize(const CommutationSystem& sys, RingElement lead, Word word, Strategy strategy) {
  const FiniteRing& r = sys.ring();
  SkewPoly out(sys);
  std::vector<std::pair<RingElement, Word>> stack;
  stack.emplace_back(lead, std::move(word));
  std::uint64_t steps = 0;
  while (!stack.empty()) {
    auto [coef, w] = std::move(stack.back());
    stack.pop_back();
    if (++steps > 50'000'000) throw std::runtime_error("rewriting did not terminate");
    std::size_t head = 0;
    while (head < w.size() && !w[head].is_var) coef = r.mul(coef, w[head++].coef);
    if (r.is_zero(coef)) continue;
    if (head != 0) w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(head));

    std::optional<std::size_t> pos;
    if (w.size() >= 2) {
      if (strategy == Strategy::Leftmost) {
        for (std::size_t p = 0; p + 1 < w.size(); ++p)
          if (reducible(w[p], w[p + 1])) {
            pos = p;
            break;
          }
      } else {
        for (std::size_t p = w.size() - 1; p-- > 0;)
          if (reducible(w[p], w[p + 1])) {
            pos = p;
            break;
          }
      }
    }
    if (!pos) {
      ExponentVector alpha(sys.n());
      for (const auto& l : w) ++alpha[l.var];
      out.add_term(alpha, coef);
      continue;
    }
    const std::size_t p = *pos;
    const Letter a = w[p];
    const Letter b = w[p + 1];
    auto splice = [&](const Word& middle) {
      Word next;
      next.reserve(w.size() + middle.size());
      next.insert(next.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      next.insert(next.end(), middle.begin(), middle.end());
      next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(p + 2), w.end());
      stack.emplace_back(coef, std::move(next));
    };
    if (!a.is_var) {
      const auto prod = r.mul(a.coef, b.coef);
      if (!r.is_zero(prod)) splice({{false, 0, prod}});
    } else if (!b.is_var) {
      const auto i = a.var;
      const auto s = sys.sigma(i)(b.coef);
      const auto d = sys.delta(i)(b.coef);
      if (!r.is_zero(d)) splice({{false, 0, d}});
      if (!r.is_zero(s)) splice({{false, 0, s}, a});
    } else {
      const auto j = a.var;
      const auto i = b.var;
      const Relation& rel = sys.relation(i, j);
      if (!r.is_zero(rel.constant)) splice({{false, 0, rel.constant}});
      for (std::uint32_t k = 0; k < rel.lin.size(); ++k)
        if (!r.is_zero(rel.lin[k])) splice({{false, 0, rel.lin[k]}, {true, k, {}}});
      splice({{false, 0, rel.c}, b, a});
    }
  }
  return out;
}

}  // namespace detail

/// x_i r = sigma_i(r) x_i + delta_i(r). Variables are 0-based.
inline SkewPoly mul_var_coeff(const CommutationSystem& sys, std::size_t i, RingElement r) {
  if (i >= sys.n()) throw std::out_of_range("variable index out of range");
  return detail::normalize(sys, sys.ring().one(), {{true, static_cast<std::uint32_t>(i), {}}, {false, 0, r}},
                           detail::Strategy::Leftmost);
}

/// x_j x_i for i < j.
inline SkewPoly mul_var_var(const CommutationSystem& sys, std::size_t j, std::size_t i) {
  if (!(i < j && j < sys.n())) throw std::invalid_argument("mul_var_var requires i < j < n");
  return detail::normalize(sys, sys.ring().one(),
                           {{true, static_cast<std::uint32_t>(j), {}}, {true, static_cast<std::uint32_t>(i), {}}},
                           detail::Strategy::Leftmost);
}

/// Normal form of f * g.
inline SkewPoly mul(const SkewPoly& f, const SkewPoly& g) {
  f.same_system(g);
  const auto& sys = f.system();
  SkewPoly out(sys);
  for (const auto& [alpha, a] : f.terms())
    for (const auto& [beta, b] : g.terms()) {
      detail::Word w = detail::variables_of(alpha);
      w.push_back({false, 0, b});
      const auto tail = detail::variables_of(beta);
      w.insert(w.end(), tail.begin(), tail.end());
      out += detail::normalize(sys, a, std::move(w), detail::Strategy::Leftmost);
    }
  return out;
}

inline SkewPoly operator*(const SkewPoly& f, const SkewPoly& g) { return mul(f, g); }

/// x^alpha r by the explicit expansion
///   x^alpha r = sigma^alpha(r) x^alpha
///     + sum_k x_1^a1..x_{k-1}^a{k-1} (sum_{j=1..a_k} x_k^{a_k-j} delta_k(sigma_k^{j-1}(s_k)) x_k^{j-1})
///             x_{k+1}^a{k+1}..x_n^an,
/// s_k = sigma_{k+1}^a{k+1}(...sigma_n^an(r)), each inner x^gamma t expanded
/// recursively. Uses no variable-variable relation.
inline SkewPoly mono_times_coeff_closed(const CommutationSystem& sys, const ExponentVector& alpha, RingElement r) {
  const FiniteRing& ring = sys.ring();
  const std::size_t n = sys.n();
  if (alpha.size() != n) throw std::invalid_argument("exponent length does not match the extension");
  SkewPoly out(sys);
  if (ring.is_zero(r)) return out;
  if (alpha.is_zero()) return SkewPoly::constant(sys, r);

  auto power_apply = [&](std::size_t i, std::uint32_t k, RingElement v) {
    for (std::uint32_t t = 0; t < k; ++t) v = sys.sigma(i)(v);
    return v;
  };
  // inner[k] = sigma_{k+1}^a{k+1}(...(sigma_n^an(r))), inner[n] = r... stored per k.
  std::vector<RingElement> inner(n + 1);
  inner[n] = r;
  for (std::size_t k = n; k-- > 0;) inner[k] = power_apply(k, alpha[k], inner[k + 1]);
  out.add_term(alpha, inner[0]);

  for (std::size_t k = n; k-- > 0;) {
    const RingElement s = inner[k + 1];
    for (std::uint32_t j = 1; j <= alpha[k]; ++j) {
      const RingElement t = sys.delta(k)(power_apply(k, j - 1, s));
      if (ring.is_zero(t)) continue;
      ExponentVector gamma(n);
      for (std::size_t m = 0; m < k; ++m) gamma[m] = alpha[m];
      gamma[k] = alpha[k] - j;
      ExponentVector eps(n);
      eps[k] = j - 1;
      for (std::size_t m = k + 1; m < n; ++m) eps[m] = alpha[m];
      const SkewPoly left = mono_times_coeff_closed(sys, gamma, t);
      for (const auto& [mu, c] : left.terms()) out.add_term(mu + eps, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Leading data

inline std::optional<ExponentVector> lm(const SkewPoly& f, MonomialOrder order = MonomialOrder::DegLex) {
  std::optional<ExponentVector> best;
  for (const auto& [alpha, c] : f.terms())
    if (!best || compare(order, alpha, *best) > 0) best = alpha;
  return best;
}

/// exp(f): exponent of the leading monomial; nullopt stands for lm(0) = 0.
inline std::optional<ExponentVector> exp_of(const SkewPoly& f, MonomialOrder order = MonomialOrder::DegLex) {
  return lm(f, order);
}

inline RingElement lc(const SkewPoly& f, MonomialOrder order = MonomialOrder::DegLex) {
  auto m = lm(f, order);
  return m ? f.coefficient(*m) : f.ring().zero();
}

inline SkewPoly lt(const SkewPoly& f, MonomialOrder order = MonomialOrder::DegLex) {
  auto m = lm(f, order);
  if (!m) return SkewPoly(f.system());
  return SkewPoly::monomial(f.system(), *m, f.coefficient(*m));
}

/// Maximal total degree over the support; 0 for the zero polynomial.
inline std::uint64_t deg(const SkewPoly& f) {
  std::uint64_t d = 0;
  for (const auto& [alpha, c] : f.terms()) d = std::max(d, alpha.degree());
  return d;
}

inline std::vector<ExponentVector> e_set(const SkewPoly& f) {
  std::vector<ExponentVector> out;
  for (const auto& [alpha, c] : f.terms()) out.push_back(alpha);
  return out;
}

/// f in nil(R)A: every coefficient is nilpotent.
inline bool is_in_nil_ra(const SkewPoly& f) {
  for (const auto& [alpha, c] : f.terms())
    if (!is_nilpotent(f.ring(), c)) return false;
  return true;
}

inline std::string SkewPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<ExponentVector> order;
  for (const auto& [alpha, c] : terms_) order.push_back(alpha);
  std::sort(order.begin(), order.end(), [](const ExponentVector& a, const ExponentVector& b) {
    return compare(MonomialOrder::DegLex, a, b) > 0;
  });
  std::string out;
  for (const auto& alpha : order) {
    if (!out.empty()) out += " + ";
    const auto c = terms_.at(alpha);
    if (alpha.is_zero()) {
      out += ring().format(c);
    } else if (c == ring().one()) {
      out += alpha.monomial_string();
    } else {
      out += ring().format(c) + "*" + alpha.monomial_string();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axiom verification

struct PbwOptions {
  std::uint64_t pair_budget = std::uint64_t{1} << 20;  // coefficient pairs checked exhaustively up to this many
  std::uint64_t samples = 4096;
  std::uint64_t seed = 0x5eed;
  std::uint64_t element_budget = kDefaultElementBudget;
};

struct PbwReport {
  bool quasi_commutative = false;
  bool bijective = false;
  bool endomorphism_type = false;
  bool automorphism_type = false;
  std::uint64_t overlaps_checked = 0;
  Coverage coverage = Coverage::Exhaustive;
};

namespace detail {

inline std::string word_string(const FiniteRing& r, const Word& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += "*";
    out += l.is_var ? "x" + std::to_string(l.var + 1) : r.format(l.coef);
  }
  return out;
}

inline void check_overlap(const CommutationSystem& sys, const Word& w) {
  const auto left = normalize(sys, sys.ring().one(), w, Strategy::Leftmost);
  const auto right = normalize(sys, sys.ring().one(), w, Strategy::Rightmost);
  if (!(left == right))
    throw AxiomViolation("overlap " + word_string(sys.ring(), w) + " does not resolve",
                         word_string(sys.ring(), w) + ": " + left.to_string() + " vs " + right.to_string());
}

}  // namespace detail

/// Checks that sys defines a skew PBW extension: nonzero c_ij, injective
/// sigma_i, and local confluence of every overlap x_i r s, x_j x_i r and
/// x_k x_j x_i (i < j < k). Throws AxiomViolation with the failing overlap.
inline PbwReport verify_pbw_axioms(const CommutationSystem& sys, const PbwOptions& opts = {}) {
  using detail::Letter;
  const FiniteRing& r = sys.ring();
  const std::size_t n = sys.n();
  PbwReport report;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (r.is_zero(sys.relation(i, j).c)) {
        const std::string tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
        throw AxiomViolation("c_{" + tag + "} must be nonzero", "c_{" + tag + "} = 0");
      }
  for (std::size_t i = 0; i < n; ++i)
    if (!sys.sigma(i).injective())
      throw AxiomViolation("sigma_" + std::to_string(i + 1) + " is not injective", sys.sigma(i).name());

  auto var = [](std::size_t i) { return Letter{true, static_cast<std::uint32_t>(i), {}}; };
  auto coef = [](RingElement a) { return Letter{false, 0, a}; };

  // x_i r s
  VerifyOptions pair_opts;
  pair_opts.pair_budget = opts.pair_budget;
  pair_opts.samples = opts.samples;
  pair_opts.seed = opts.seed;
  for (std::size_t i = 0; i < n; ++i) {
    const auto cov = detail::for_each_pair(r, pair_opts, [&](RingElement a, RingElement b) {
      detail::check_overlap(sys, {var(i), coef(a), coef(b)});
      ++report.overlaps_checked;
      return true;
    });
    if (cov == Coverage::Sampled) report.coverage = Coverage::Sampled;
  }
  // x_j x_i r
  if (n >= 2) {
    std::vector<RingElement> coeffs;
    if (r.size() <= opts.element_budget) {
      coeffs = r.elements(opts.element_budget);
    } else {
      report.coverage = Coverage::Sampled;
      std::mt19937_64 rng(opts.seed);
      std::uniform_int_distribution<std::uint64_t> pick(0, r.size() - 1);
      for (std::uint64_t s = 0; s < opts.samples; ++s) coeffs.push_back(r.element(pick(rng)));
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (auto a : coeffs) {
          detail::check_overlap(sys, {var(j), var(i), coef(a)});
          ++report.overlaps_checked;
        }
  }
  // x_k x_j x_i
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        detail::check_overlap(sys, {var(k), var(j), var(i)});
        ++report.overlaps_checked;
      }

  report.endomorphism_type = sys.endomorphism_type();
  report.quasi_commutative = sys.quasi_commutative();
  bool all_bijective = true;
  for (std::size_t i = 0; i < n; ++i) all_bijective = all_bijective && sys.sigma(i).injective();
  report.bijective = all_bijective && sys.c_invertible();
  report.automorphism_type = report.endomorphism_type && all_bijective;
  return report;
}

// ---------------------------------------------------------------------------
// Text syntax
//
//   poly   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := 'x' k ['^' e] | coefficient | '(' poly ')'
// A coefficient is anything the ring parses: digits, #ordinal, e<k>,
// [[..]] matrices or (a,b) pairs. Products are evaluated in A, so x1*2 is
// the normal form of x1 * 2.

class PolySyntaxError : public std::invalid_argument {
 public:
  PolySyntaxError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const CommutationSystem& sys, std::string_view text) : sys_(sys), text_(text) {}

  SkewPoly parse() {
    SkewPoly p = poly();
    skip();
    if (pos_ != text_.size()) throw PolySyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SkewPoly poly() {
    SkewPoly out(sys_);
    bool negate = eat('-');
    for (;;) {
      SkewPoly t = term();
      out += negate ? -t : t;
      if (eat('+')) {
        negate = false;
      } else if (eat('-')) {
        negate = true;
      } else {
        return out;
      }
    }
  }

  SkewPoly term() {
    SkewPoly out = factor();
    while (eat('*')) out = mul(out, factor());
    return out;
  }

  std::uint64_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::uint64_t{1} << 32)) throw PolySyntaxError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw PolySyntaxError("expected a number", start);
    return v;
  }

  /// Extent of a bracketed group starting at pos_.
  std::size_t group_end(char open, char close) const {
    int depth = 0;
    for (std::size_t i = pos_; i < text_.size(); ++i) {
      if (text_[i] == open) ++depth;
      if (text_[i] == close && --depth == 0) return i + 1;
    }
    throw PolySyntaxError("unbalanced '" + std::string(1, open) + "'", pos_);
  }

  SkewPoly coefficient(std::size_t start, std::size_t end) {
    const auto token = text_.substr(start, end - start);
    auto v = sys_.ring().parse(token);
    if (!v) throw PolySyntaxError("'" + std::string(token) + "' is not an element of " + sys_.ring().name(), start);
    pos_ = end;
    return SkewPoly::constant(sys_, *v);
  }

  SkewPoly factor() {
    skip();
    if (pos_ >= text_.size()) throw PolySyntaxError("expected a factor", pos_);
    const char c = text_[pos_];
    const std::size_t start = pos_;
    if (c == 'x') {
      ++pos_;
      const auto i = number();
      if (i == 0 || i > sys_.n()) throw PolySyntaxError("no variable x" + std::to_string(i), start);
      std::uint64_t e = 1;
      if (eat('^')) {
        skip();
        e = number();
      }
      ExponentVector alpha(sys_.n());
      alpha[i - 1] = static_cast<std::uint32_t>(e);
      return SkewPoly::monomial(sys_, alpha);
    }
    if (c == '[') return coefficient(start, group_end('[', ']'));
    if (c == '(') {
      const std::size_t end = group_end('(', ')');
      const auto inner = text_.substr(start + 1, end - start - 2);
      int depth = 0;
      bool pair = false;
      for (char ch : inner) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == ',' && depth == 0) pair = true;
      }
      if (pair) return coefficient(start, end);
      ++pos_;
      SkewPoly p = poly();
      if (!eat(')')) throw PolySyntaxError("expected ')'", pos_);
      return p;
    }
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '#')) ++end;
    if (end == pos_) throw PolySyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
    return coefficient(start, end);
  }

  const CommutationSystem& sys_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the text syntax above; throws PolySyntaxError.
inline SkewPoly parse_poly(const CommutationSystem& sys, std::string_view text) {
  return detail::PolyParser(sys, text).parse();
}

}  // namespace skewpbw
