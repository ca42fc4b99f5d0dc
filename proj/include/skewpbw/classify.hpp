#pragma once

// Nilpotents, idempotents and the reduced / NI / abelian classification.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewpbw/parallel.hpp"
#include "skewpbw/ring.hpp"

namespace skewpbw {

/// a is nilpotent iff a^m = 0 for m = nilpotency_bound() <= |R|. The power
/// sequence of a in a finite ring either reaches 0 within |R| steps or
/// never does.
inline bool is_nilpotent(const FiniteRing& r, RingElement a) {
  if (r.is_zero(a)) return true;
  return r.is_zero(r.pow(a, r.nilpotency_bound()));
}

/// A subset of a ring with canonical (ordinal) order and a membership index.
class SubsetIdeal {
 public:
  SubsetIdeal(FiniteRing ring, std::vector<RingElement> elements, bool is_ideal = false)
      : ring_(std::move(ring)), elements_(std::move(elements)), is_ideal_(is_ideal) {
    std::sort(elements_.begin(), elements_.end(),
              [&](RingElement a, RingElement b) { return ring_.ordinal(a) < ring_.ordinal(b); });
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    codes_.reserve(elements_.size());
    for (auto e : elements_) codes_.push_back(e.code);
    std::sort(codes_.begin(), codes_.end());
  }

  const FiniteRing& ring() const { return ring_; }
  const std::vector<RingElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_ideal() const { return is_ideal_; }
  bool contains(RingElement a) const { return std::binary_search(codes_.begin(), codes_.end(), a.code); }

  friend bool operator==(const SubsetIdeal& a, const SubsetIdeal& b) {
    return a.ring_ == b.ring_ && a.elements_ == b.elements_;
  }

 private:
  FiniteRing ring_;
  std::vector<RingElement> elements_;
  std::vector<std::uint64_t> codes_;
  bool is_ideal_ = false;
};

/// Membership in nil(R); precomputed over the carrier for small rings.
class NilOracle {
 public:
  explicit NilOracle(FiniteRing r, std::uint64_t precompute_cap = std::uint64_t{1} << 16) : ring_(std::move(r)) {
    if (ring_.size() <= precompute_cap) {
      table_.assign(ring_.size(), 0);
      for (std::uint64_t o = 0; o < ring_.size(); ++o) table_[o] = is_nilpotent(ring_, ring_.element(o)) ? 1 : 0;
    }
  }

  bool operator()(RingElement a) const {
    if (!table_.empty()) return table_[ring_.ordinal(a)] != 0;
    return is_nilpotent(ring_, a);
  }

  const FiniteRing& ring() const { return ring_; }

 private:
  FiniteRing ring_;
  std::vector<std::uint8_t> table_;
};

inline SubsetIdeal nil_set(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  std::vector<RingElement> out;
  for (auto a : r.elements(budget))
    if (is_nilpotent(r, a)) out.push_back(a);
  return SubsetIdeal(r, std::move(out));
}

/// First nonzero nilpotent element in canonical order.
inline std::optional<RingElement> find_nonzero_nilpotent(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget,
                                                         unsigned jobs = 1) {
  if (r.size() > budget) throw ResourceError("reducedness of " + r.name() + " exceeds element budget");
  auto hit = detail::parallel_find_first(r.size(), jobs, [&](std::uint64_t o) {
    const auto a = r.element(o);
    return !r.is_zero(a) && is_nilpotent(r, a);
  });
  if (!hit) return std::nullopt;
  return r.element(*hit);
}

inline bool is_reduced(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget, unsigned jobs = 1) {
  return !find_nonzero_nilpotent(r, budget, jobs).has_value();
}

/// A set whose additive span is R: the elementary codes when the backend
/// provides them, otherwise every element. ax = xa holds for all x iff it
/// holds on such a set.
inline std::vector<RingElement> additive_generators(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  if (auto codes = r.impl().elementary_codes()) {
    std::vector<RingElement> out;
    for (auto c : *codes) out.push_back(RingElement{c});
    return out;
  }
  return r.elements(budget);
}

/// Why a subset fails to be a two-sided ideal.
struct IdealViolation {
  std::string law;  // "addition", "negation", "left multiplication", "right multiplication"
  RingElement a;
  RingElement b;
};

inline std::optional<IdealViolation> find_ideal_violation(const FiniteRing& r, const SubsetIdeal& s,
                                                          std::uint64_t budget = kDefaultElementBudget) {
  if (!s.contains(r.zero())) return IdealViolation{"zero", r.zero(), r.zero()};
  for (auto a : s.elements()) {
    if (!s.contains(r.neg(a))) return IdealViolation{"negation", a, a};
    for (auto b : s.elements())
      if (!s.contains(r.add(a, b))) return IdealViolation{"addition", a, b};
  }
  // s is additively closed here, so multiplication by additive generators suffices
  const auto gens = additive_generators(r, budget);
  for (auto a : s.elements())
    for (auto x : gens) {
      if (!s.contains(r.mul(x, a))) return IdealViolation{"left multiplication", x, a};
      if (!s.contains(r.mul(a, x))) return IdealViolation{"right multiplication", a, x};
    }
  return std::nullopt;
}

inline bool is_ideal(const FiniteRing& r, const SubsetIdeal& s, std::uint64_t budget = kDefaultElementBudget) {
  return !find_ideal_violation(r, s, budget).has_value();
}

/// NI: nil(R) is a two-sided ideal. Returns the first violation, if any.
inline std::optional<IdealViolation> find_ni_violation(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  return find_ideal_violation(r, nil_set(r, budget), budget);
}

inline bool is_ni(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  return !find_ni_violation(r, budget).has_value();
}

inline std::vector<RingElement> idempotents(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  std::vector<RingElement> out;
  for (auto e : r.elements(budget))
    if (r.mul(e, e) == e) out.push_back(e);
  return out;
}

inline bool is_central(const FiniteRing& r, RingElement a, std::uint64_t budget = kDefaultElementBudget) {
  for (auto x : additive_generators(r, budget))
    if (r.mul(a, x) != r.mul(x, a)) return false;
  return true;
}

/// First (idempotent e, element x) with ex != xe; x is drawn from
/// additive_generators.
inline std::optional<std::pair<RingElement, RingElement>> find_noncentral_idempotent(
    const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  const auto gens = additive_generators(r, budget);
  for (auto e : r.elements(budget)) {
    if (r.mul(e, e) != e) continue;
    for (auto x : gens)
      if (r.mul(e, x) != r.mul(x, e)) return std::pair{e, x};
  }
  return std::nullopt;
}

inline bool is_abelian(const FiniteRing& r, std::uint64_t budget = kDefaultElementBudget) {
  return !find_noncentral_idempotent(r, budget).has_value();
}

/// The right principal set aR = {a*x}; flagged as an ideal when it is one.
inline SubsetIdeal principal_right_ideal(const FiniteRing& r, RingElement a, std::uint64_t budget = kDefaultElementBudget) {
  std::vector<RingElement> out;
  for (auto x : r.elements(budget)) out.push_back(r.mul(a, x));
  SubsetIdeal unflagged(r, std::move(out));
  const bool ideal = is_ideal(r, unflagged, budget);
  return SubsetIdeal(r, unflagged.elements(), ideal);
}

}  // namespace skewpbw
