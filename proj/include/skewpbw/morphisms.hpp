#pragma once

// Ring endomorphisms, sigma-derivations, and the finite set of composites
// sigma^theta generated by a family on a finite carrier.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "skewpbw/errors.hpp"
#include "skewpbw/exponent.hpp"
#include "skewpbw/ring.hpp"

namespace skewpbw {

enum class Coverage { Exhaustive, Sampled };

struct VerifyOptions {
  std::uint64_t pair_budget = std::uint64_t{1} << 22;  // exhaustive over pairs when |R|^2 <= budget
  std::uint64_t samples = 20000;                       // sampled pairs otherwise
  std::uint64_t seed = 0x5eed;
  std::uint64_t table_cap = std::uint64_t{1} << 22;    // tabulate images up to this carrier size
};

using ElementFn = std::function<RingElement(RingElement)>;

namespace detail {

inline std::shared_ptr<const std::vector<std::uint64_t>> tabulate(const FiniteRing& r, const ElementFn& fn,
                                                                  std::uint64_t cap) {
  if (r.size() > cap) return nullptr;
  auto table = std::make_shared<std::vector<std::uint64_t>>(r.size());
  for (std::uint64_t o = 0; o < r.size(); ++o) {
    const auto img = fn(r.element(o));
    if (!r.contains(img)) throw MorphismError(MorphismError::Kind::WrongRing, "map image outside " + r.name());
    (*table)[o] = img.code;
  }
  return table;
}

/// Visits pairs (a, b): all of them when |R|^2 <= budget, else seeded
/// samples. Stops when visit returns false. Returns the coverage used.
template <class Visit>
Coverage for_each_pair(const FiniteRing& r, const VerifyOptions& opts, Visit&& visit) {
  const auto n = r.size();
  if (n <= opts.pair_budget / n) {
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        if (!visit(r.element(i), r.element(j))) return Coverage::Exhaustive;
    return Coverage::Exhaustive;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  for (std::uint64_t s = 0; s < opts.samples; ++s)
    if (!visit(r.element(pick(rng)), r.element(pick(rng)))) break;
  return Coverage::Sampled;
}

}  // namespace detail

/// A map R -> R. Values produced by verify_endomorphism (or composition of
/// verified maps) are ring endomorphisms.
class RingMap {
 public:
  static RingMap identity(const FiniteRing& r) {
    RingMap m(r, "id");
    m.fn_ = [](RingElement a) { return a; };
    m.identity_ = true;
    m.injective_ = true;
    return m;
  }

  const FiniteRing& ring() const { return ring_; }
  const std::string& name() const { return name_; }
  bool injective() const { return injective_; }
  bool is_identity() const { return identity_; }
  Coverage coverage() const { return coverage_; }

  RingElement operator()(RingElement a) const {
    if (identity_) return a;
    if (image_) return RingElement{(*image_)[ring_.ordinal(a)]};
    return fn_(a);
  }

  /// Pointwise equality over the whole carrier.
  bool same_as(const RingMap& other, std::uint64_t budget = std::uint64_t{1} << 26) const {
    if (!(ring_ == other.ring_)) return false;
    if (identity_ && other.identity_) return true;
    if (image_ && other.image_) return *image_ == *other.image_;
    if (ring_.size() > budget) throw ResourceError("comparing maps on " + ring_.name() + " exceeds budget");
    for (std::uint64_t o = 0; o < ring_.size(); ++o) {
      const auto a = ring_.element(o);
      if ((*this)(a) != other(a)) return false;
    }
    return true;
  }

  /// Hash of the images of (up to) the first 4096 elements.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    const auto n = std::min<std::uint64_t>(ring_.size(), 4096);
    for (std::uint64_t o = 0; o < n; ++o) {
      h ^= (*this)(ring_.element(o)).code + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }

  /// (*this) o inner: apply inner first.
  RingMap after(const RingMap& inner, const VerifyOptions& opts = {}) const {
    if (!(ring_ == inner.ring_)) throw MorphismError(MorphismError::Kind::WrongRing, "composing maps on different rings");
    if (identity_) return inner;
    if (inner.identity_) return *this;
    RingMap m(ring_, name_ + "∘" + inner.name_);
    const RingMap outer = *this;
    m.fn_ = [outer, inner](RingElement a) { return outer(inner(a)); };
    m.image_ = detail::tabulate(ring_, m.fn_, opts.table_cap);
    m.injective_ = injective_ && inner.injective_;
    m.coverage_ = (coverage_ == Coverage::Exhaustive && inner.coverage_ == Coverage::Exhaustive) ? Coverage::Exhaustive
                                                                                                 : Coverage::Sampled;
    m.identity_ = false;
    return m;
  }

  RingMap power(std::uint64_t k, const VerifyOptions& opts = {}) const {
    RingMap result = identity(ring_);
    for (std::uint64_t i = 0; i < k; ++i) result = after(result, opts);
    return result;
  }

  friend RingMap verify_endomorphism(const FiniteRing&, ElementFn, std::string, const VerifyOptions&);

 private:
  RingMap(FiniteRing r, std::string name) : ring_(std::move(r)), name_(std::move(name)) {}

  FiniteRing ring_;
  std::string name_;
  ElementFn fn_;
  std::shared_ptr<const std::vector<std::uint64_t>> image_;
  bool injective_ = false;
  bool identity_ = false;
  Coverage coverage_ = Coverage::Exhaustive;
};

/// Checks f(1) = 1, additivity and multiplicativity (pairs exhaustive or
/// sampled per opts) and computes injectivity exhaustively.
inline RingMap verify_endomorphism(const FiniteRing& r, ElementFn f, std::string name, const VerifyOptions& opts = {}) {
  RingMap m(r, std::move(name));
  m.fn_ = std::move(f);
  m.image_ = detail::tabulate(r, m.fn_, opts.table_cap);
  if (m(r.one()) != r.one())
    throw MorphismError(MorphismError::Kind::UnitNotFixed, m.name() + " does not fix 1",
                        "f(1) = " + r.format(m(r.one())));
  std::optional<MorphismError> failure;
  m.coverage_ = detail::for_each_pair(r, opts, [&](RingElement a, RingElement b) {
    const std::string pair = "a=" + r.format(a) + ", b=" + r.format(b);
    if (m(r.add(a, b)) != r.add(m(a), m(b))) {
      failure.emplace(MorphismError::Kind::NotAdditive, m.name() + " is not additive", pair);
      return false;
    }
    if (m(r.mul(a, b)) != r.mul(m(a), m(b))) {
      failure.emplace(MorphismError::Kind::NotMultiplicative, m.name() + " is not multiplicative", pair);
      return false;
    }
    return true;
  });
  if (failure) throw *failure;
  if (r.size() > (std::uint64_t{1} << 26)) throw ResourceError("injectivity check on " + r.name() + " exceeds budget");
  std::vector<bool> hit(r.size(), false);
  m.injective_ = true;
  for (std::uint64_t o = 0; o < r.size(); ++o) {
    const auto img = m(r.element(o));
    if (!r.contains(img)) throw MorphismError(MorphismError::Kind::WrongRing, "map image outside " + r.name());
    const auto o_img = r.ordinal(img);
    if (hit[o_img]) {
      m.injective_ = false;
      break;
    }
    hit[o_img] = true;
  }
  m.identity_ = false;
  return m;
}

/// delta with delta(a+b) = delta(a)+delta(b) and
/// delta(ab) = sigma(a) delta(b) + delta(a) b.
class SigmaDerivation {
 public:
  const FiniteRing& ring() const { return sigma_.ring(); }
  const RingMap& sigma() const { return sigma_; }
  const std::string& name() const { return name_; }
  bool is_zero() const { return zero_; }
  Coverage coverage() const { return coverage_; }

  RingElement operator()(RingElement a) const {
    if (zero_) return ring().zero();
    if (image_) return RingElement{(*image_)[ring().ordinal(a)]};
    return fn_(a);
  }

  friend SigmaDerivation verify_sigma_derivation(const FiniteRing&, const RingMap&, ElementFn, std::string,
                                                 const VerifyOptions&);
  friend SigmaDerivation zero_derivation(const RingMap&);

 private:
  SigmaDerivation(RingMap sigma, std::string name) : sigma_(std::move(sigma)), name_(std::move(name)) {}

  RingMap sigma_;
  std::string name_;
  ElementFn fn_;
  std::shared_ptr<const std::vector<std::uint64_t>> image_;
  bool zero_ = false;
  Coverage coverage_ = Coverage::Exhaustive;
};

inline SigmaDerivation verify_sigma_derivation(const FiniteRing& r, const RingMap& sigma, ElementFn d, std::string name,
                                               const VerifyOptions& opts = {}) {
  if (!(sigma.ring() == r)) throw MorphismError(MorphismError::Kind::WrongRing, "sigma is defined on another ring");
  SigmaDerivation delta(sigma, std::move(name));
  delta.fn_ = std::move(d);
  delta.image_ = detail::tabulate(r, delta.fn_, opts.table_cap);
  std::optional<MorphismError> failure;
  delta.coverage_ = detail::for_each_pair(r, opts, [&](RingElement a, RingElement b) {
    const std::string pair = "a=" + r.format(a) + ", b=" + r.format(b);
    if (delta(r.add(a, b)) != r.add(delta(a), delta(b))) {
      failure.emplace(MorphismError::Kind::NotAdditive, delta.name() + " is not additive", pair);
      return false;
    }
    if (delta(r.mul(a, b)) != r.add(r.mul(sigma(a), delta(b)), r.mul(delta(a), b))) {
      failure.emplace(MorphismError::Kind::LeibnizViolation, delta.name() + " violates the twisted Leibniz rule", pair);
      return false;
    }
    return true;
  });
  if (failure) throw *failure;
  bool all_zero = true;
  if (delta.image_) {
    for (auto c : *delta.image_)
      if (c != r.zero().code) {
        all_zero = false;
        break;
      }
  } else {
    all_zero = false;
  }
  delta.zero_ = all_zero;
  return delta;
}

inline SigmaDerivation zero_derivation(const RingMap& sigma) {
  SigmaDerivation d(sigma, "zero");
  d.zero_ = true;
  return d;
}

/// delta(r) = r - sigma(r).
inline SigmaDerivation id_minus_derivation(const RingMap& sigma, const VerifyOptions& opts = {}) {
  const FiniteRing r = sigma.ring();
  return verify_sigma_derivation(
      r, sigma, [r, sigma](RingElement a) { return r.sub(a, sigma(a)); }, "id-minus(" + sigma.name() + ")", opts);
}

/// delta(r) = c r - sigma(r) c.
inline SigmaDerivation inner_derivation(const RingMap& sigma, RingElement c, const VerifyOptions& opts = {}) {
  const FiniteRing r = sigma.ring();
  return verify_sigma_derivation(
      r, sigma, [r, sigma, c](RingElement a) { return r.sub(r.mul(c, a), r.mul(sigma(a), c)); },
      "inner(" + r.format(c) + "," + sigma.name() + ")", opts);
}

/// Sigma = (sigma_1, ..., sigma_n) over one ring.
class SigmaFamily {
 public:
  explicit SigmaFamily(std::vector<RingMap> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw std::invalid_argument("a sigma family needs at least one map");
    for (const auto& m : maps_)
      if (!(m.ring() == maps_.front().ring()))
        throw MorphismError(MorphismError::Kind::WrongRing, "family maps live on different rings");
  }

  const FiniteRing& ring() const { return maps_.front().ring(); }
  std::size_t size() const { return maps_.size(); }
  const RingMap& operator[](std::size_t i) const { return maps_.at(i); }
  const std::vector<RingMap>& maps() const { return maps_; }

 private:
  std::vector<RingMap> maps_;
};

/// sigma^theta = sigma_1^theta1 o sigma_2^theta2 o ... o sigma_n^thetan:
/// sigma_n is applied first, sigma_1 last.
inline RingMap sigma_power(const SigmaFamily& fam, const ExponentVector& theta, const VerifyOptions& opts = {}) {
  if (theta.size() != fam.size())
    throw MorphismError(MorphismError::Kind::WrongLength, "exponent vector length " + std::to_string(theta.size()) +
                                                              " does not match family size " + std::to_string(fam.size()));
  RingMap result = RingMap::identity(fam.ring());
  for (std::size_t i = 0; i < fam.size(); ++i) result = result.after(fam[i].power(theta[i], opts), opts);
  return result;
}

struct OrbitMap {
  ExponentVector theta;  // a least (degree, storage order) exponent realising the map
  RingMap map;
};

inline constexpr std::size_t kDefaultOrbitCap = 4096;

/// The finite set {sigma^theta : theta in N^n}, each with a representative
/// exponent. Per-variable powers are computed until they cycle; composites
/// are then enumerated over the product of the power ranges.
inline std::vector<OrbitMap> orbit_closure(const SigmaFamily& fam, std::size_t cap = kDefaultOrbitCap,
                                           const VerifyOptions& opts = {}) {
  const std::size_t n = fam.size();
  std::vector<std::vector<RingMap>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = powers[i];
    p.push_back(RingMap::identity(fam.ring()));
    for (;;) {
      RingMap next = fam[i].after(p.back(), opts);
      bool seen = false;
      for (const auto& q : p)
        if (q.fingerprint() == next.fingerprint() && q.same_as(next)) {
          seen = true;
          break;
        }
      if (seen) break;
      if (p.size() >= cap) throw ResourceError("orbit of " + fam[i].name() + " exceeds cap " + std::to_string(cap));
      p.push_back(std::move(next));
    }
  }
  std::uint64_t combos = 1;
  for (const auto& p : powers) {
    combos *= p.size();
    if (combos > std::uint64_t{1} << 20) throw ResourceError("orbit closure enumeration exceeds budget");
  }
  std::vector<ExponentVector> thetas;
  {
    ExponentVector cur(n);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == n) {
        thetas.push_back(cur);
        return;
      }
      for (std::uint32_t k = 0; k < powers[i].size(); ++k) {
        cur[i] = k;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  std::stable_sort(thetas.begin(), thetas.end(), [](const ExponentVector& a, const ExponentVector& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  std::vector<OrbitMap> out;
  std::vector<std::uint64_t> prints;
  for (const auto& theta : thetas) {
    RingMap m = RingMap::identity(fam.ring());
    for (std::size_t i = 0; i < n; ++i) m = m.after(powers[i][theta[i]], opts);
    const auto fp = m.fingerprint();
    bool seen = false;
    for (std::size_t k = 0; k < out.size(); ++k)
      if (prints[k] == fp && out[k].map.same_as(m)) {
        seen = true;
        break;
      }
    if (seen) continue;
    if (out.size() >= cap) throw ResourceError("orbit closure exceeds cap " + std::to_string(cap));
    out.push_back({theta, std::move(m)});
    prints.push_back(fp);
  }
  return out;
}

}  // namespace skewpbw
