#pragma once

// Finite unital rings with packed element codes.
//
// Every ring hands out RingElement values carrying an opaque code. Small
// rings (code space <= 256) get flat operation tables at construction;
// larger rings (matrix and block-triangular rings over a small base) keep
// their elements structurally and compute products entry by entry, so a
// ring such as S(Z3) with 3^12 elements never needs a table.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewpbw/errors.hpp"

namespace skewpbw {

struct RingElement {
  std::uint64_t code = 0;

  friend constexpr bool operator==(RingElement, RingElement) = default;
  friend constexpr auto operator<=>(RingElement, RingElement) = default;
};

/// Default cap on operations that enumerate a whole carrier.
inline constexpr std::uint64_t kDefaultElementBudget = std::uint64_t{1} << 20;
/// Default cap on the size of a ring a constructor will represent.
inline constexpr std::uint64_t kDefaultConstructionCap = std::uint64_t{1} << 32;

/// Backend of a FiniteRing. Codes are opaque; ordinals 0..size()-1 give the
/// canonical enumeration order.
class RingImpl {
 public:
  virtual ~RingImpl() = default;

  virtual std::string name() const = 0;
  virtual std::uint64_t size() const = 0;
  /// Every valid code is < 2^code_bits().
  virtual unsigned code_bits() const = 0;
  virtual bool is_valid_code(std::uint64_t code) const = 0;
  virtual std::uint64_t code_at(std::uint64_t ordinal) const = 0;
  virtual std::uint64_t ordinal_of(std::uint64_t code) const = 0;

  virtual std::uint64_t zero() const = 0;
  virtual std::uint64_t one() const = 0;
  virtual std::uint64_t add(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::uint64_t neg(std::uint64_t a) const = 0;
  virtual std::uint64_t mul(std::uint64_t a, std::uint64_t b) const = 0;

  virtual std::string format(std::uint64_t code) const = 0;
  virtual std::optional<std::uint64_t> parse(std::string_view) const { return std::nullopt; }

  /// An exponent m <= size() with a^m = 0 for every nilpotent a; for a
  /// commutative ring additionally nil(R)^m = 0.
  virtual std::uint64_t nilpotency_bound() const { return size(); }

  /// Elements with exactly one nonzero structural entry, when the ring has
  /// entries (matrix-pattern rings). Empty optional otherwise.
  virtual std::optional<std::vector<std::uint64_t>> elementary_codes() const { return std::nullopt; }
};

namespace detail {

struct FastTables {
  unsigned bits = 0;
  std::vector<std::uint16_t> add;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> neg;
  std::vector<std::uint32_t> ordinal;
};

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap, const std::string& what) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (result > cap / base) throw ResourceError(what + ": carrier size exceeds construction cap " + std::to_string(cap));
    result *= base;
  }
  return result;
}

/// Splits text at top-level occurrences of sep (outside () and []).
inline std::vector<std::string_view> split_top(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth == 0 && ch == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(text.substr(start));
  return out;
}

inline std::optional<std::string_view> unwrap(std::string_view text, char open, char close) {
  if (text.size() < 2 || text.front() != open || text.back() != close) return std::nullopt;
  return text.substr(1, text.size() - 2);
}

}  // namespace detail

struct LawCheckOptions {
  std::uint64_t exhaustive_cap = 100;  // exhaustive over all triples when |R| <= cap
  std::uint64_t samples = 100000;      // sampled triples otherwise
  std::uint64_t seed = 0x5eed;
};

struct LawReport {
  bool exhaustive = false;
  std::uint64_t triples = 0;
  std::optional<std::string> violation;
};

/// Immutable handle to a finite unital ring. Copies share the backend;
/// equality is identity of the constructed object.
class FiniteRing {
 public:
  explicit FiniteRing(std::shared_ptr<const RingImpl> impl, bool validate = true);

  const std::string& name() const { return name_; }
  std::uint64_t size() const { return size_; }
  unsigned code_bits() const { return impl_->code_bits(); }
  const RingImpl& impl() const { return *impl_; }
  const detail::FastTables* fast_tables() const { return fast_.get(); }

  RingElement zero() const { return zero_; }
  RingElement one() const { return one_; }

  RingElement add(RingElement a, RingElement b) const {
    if (fast_) return RingElement{fast_->add[(a.code << fast_->bits) | b.code]};
    return RingElement{impl_->add(a.code, b.code)};
  }
  RingElement neg(RingElement a) const {
    if (fast_) return RingElement{fast_->neg[a.code]};
    return RingElement{impl_->neg(a.code)};
  }
  RingElement sub(RingElement a, RingElement b) const { return add(a, neg(b)); }
  RingElement mul(RingElement a, RingElement b) const {
    if (fast_) return RingElement{fast_->mul[(a.code << fast_->bits) | b.code]};
    return RingElement{impl_->mul(a.code, b.code)};
  }
  /// a^k by repeated squaring; a^0 = 1.
  RingElement pow(RingElement a, std::uint64_t k) const {
    RingElement result = one_;
    while (k != 0) {
      if (k & 1U) result = mul(result, a);
      k >>= 1U;
      if (k != 0) a = mul(a, a);
    }
    return result;
  }

  bool is_zero(RingElement a) const { return a == zero_; }
  bool contains(RingElement a) const { return impl_->is_valid_code(a.code); }

  RingElement element(std::uint64_t ordinal) const;
  std::uint64_t ordinal(RingElement a) const {
    if (fast_) return fast_->ordinal[a.code];
    return impl_->ordinal_of(a.code);
  }

  /// The whole carrier in canonical order; throws ResourceError above budget.
  std::vector<RingElement> elements(std::uint64_t budget = kDefaultElementBudget) const;

  std::string format(RingElement a) const { return impl_->format(a.code); }
  /// Parses a display name, or "#k" for the k-th element in canonical order.
  std::optional<RingElement> parse(std::string_view text, std::uint64_t budget = kDefaultElementBudget) const;

  std::uint64_t nilpotency_bound() const { return std::min(impl_->nilpotency_bound(), size_); }
  bool commutative(std::uint64_t budget = kDefaultElementBudget) const;

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) { return a.impl_ == b.impl_; }

 private:
  std::shared_ptr<const RingImpl> impl_;
  std::shared_ptr<const detail::FastTables> fast_;
  std::string name_;
  std::uint64_t size_ = 0;
  RingElement zero_;
  RingElement one_;
};

/// Checks the abelian-group, associativity, distributivity and identity
/// laws. Exhaustive for |R| <= options.exhaustive_cap, otherwise sampled
/// with a fixed seed.
inline LawReport verify_ring_laws(const FiniteRing& r, const LawCheckOptions& options = {}) {
  LawReport report;
  auto fmt = [&](RingElement x) { return r.format(x); };
  if (r.zero() == r.one()) {
    report.violation = "zero equals one";
    return report;
  }
  auto check_element = [&](RingElement a) -> std::optional<std::string> {
    if (r.add(a, r.zero()) != a) return "0 is not an additive identity at " + fmt(a);
    if (r.add(a, r.neg(a)) != r.zero()) return "negation fails at " + fmt(a);
    if (r.mul(r.one(), a) != a || r.mul(a, r.one()) != a) return "1 is not a two-sided identity at " + fmt(a);
    return std::nullopt;
  };
  auto check_triple = [&](RingElement a, RingElement b, RingElement c) -> std::optional<std::string> {
    const std::string where = " at (" + fmt(a) + ", " + fmt(b) + ", " + fmt(c) + ")";
    if (r.add(a, b) != r.add(b, a)) return "addition not commutative" + where;
    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c))) return "addition not associative" + where;
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) return "multiplication not associative" + where;
    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) return "left distributivity fails" + where;
    if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c))) return "right distributivity fails" + where;
    return std::nullopt;
  };

  if (r.size() <= options.exhaustive_cap) {
    report.exhaustive = true;
    const auto all = r.elements(options.exhaustive_cap);
    for (auto a : all) {
      if (auto v = check_element(a)) {
        report.violation = v;
        return report;
      }
    }
    for (auto a : all)
      for (auto b : all)
        for (auto c : all) {
          ++report.triples;
          if (auto v = check_triple(a, b, c)) {
            report.violation = v;
            return report;
          }
        }
    return report;
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, r.size() - 1);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const auto a = r.element(pick(rng));
    const auto b = r.element(pick(rng));
    const auto c = r.element(pick(rng));
    ++report.triples;
    if (auto v = check_element(a)) {
      report.violation = v;
      return report;
    }
    if (auto v = check_triple(a, b, c)) {
      report.violation = v;
      return report;
    }
  }
  return report;
}

inline FiniteRing::FiniteRing(std::shared_ptr<const RingImpl> impl, bool validate)
    : impl_(std::move(impl)) {
  if (!impl_) throw RingError("null ring implementation");
  name_ = impl_->name();
  size_ = impl_->size();
  zero_ = RingElement{impl_->zero()};
  one_ = RingElement{impl_->one()};
  const unsigned bits = impl_->code_bits();
  if (bits <= 8) {
    auto t = std::make_shared<detail::FastTables>();
    t->bits = bits;
    const std::uint64_t space = std::uint64_t{1} << bits;
    t->add.assign(space * space, 0);
    t->mul.assign(space * space, 0);
    t->neg.assign(space, 0);
    t->ordinal.assign(space, 0);
    std::vector<std::uint64_t> codes;
    codes.reserve(size_);
    for (std::uint64_t o = 0; o < size_; ++o) codes.push_back(impl_->code_at(o));
    for (std::uint64_t o = 0; o < size_; ++o) {
      const auto a = codes[o];
      t->ordinal[a] = static_cast<std::uint32_t>(o);
      t->neg[a] = static_cast<std::uint16_t>(impl_->neg(a));
      for (auto b : codes) {
        t->add[(a << bits) | b] = static_cast<std::uint16_t>(impl_->add(a, b));
        t->mul[(a << bits) | b] = static_cast<std::uint16_t>(impl_->mul(a, b));
      }
    }
    fast_ = std::move(t);
  }
  if (validate) {
    LawCheckOptions opts;
    opts.exhaustive_cap = 64;
    opts.samples = 2048;
    const auto report = verify_ring_laws(*this, opts);
    if (report.violation) throw RingError(name_ + ": " + *report.violation);
  }
}

inline RingElement FiniteRing::element(std::uint64_t ordinal) const {
  if (ordinal >= size_) throw std::out_of_range("element ordinal " + std::to_string(ordinal) + " outside " + name_);
  return RingElement{impl_->code_at(ordinal)};
}

inline std::vector<RingElement> FiniteRing::elements(std::uint64_t budget) const {
  if (size_ > budget)
    throw ResourceError("enumerating " + name_ + " (" + std::to_string(size_) + " elements) exceeds element budget " +
                        std::to_string(budget));
  std::vector<RingElement> out;
  out.reserve(size_);
  for (std::uint64_t o = 0; o < size_; ++o) out.push_back(RingElement{impl_->code_at(o)});
  return out;
}

inline std::optional<RingElement> FiniteRing::parse(std::string_view raw, std::uint64_t budget) const {
  std::string text;
  for (char ch : raw)
    if (ch != ' ' && ch != '\t') text.push_back(ch);
  if (text.size() > 1 && text.front() == '#') {
    std::uint64_t ord = 0;
    for (char ch : text.substr(1)) {
      if (ch < '0' || ch > '9' || ord > size_) return std::nullopt;
      ord = ord * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    if (ord >= size_) return std::nullopt;
    return element(ord);
  }
  if (auto code = impl_->parse(text)) {
    if (impl_->is_valid_code(*code)) return RingElement{*code};
    return std::nullopt;
  }
  if (size_ > budget) return std::nullopt;
  for (auto a : elements(budget))
    if (format(a) == text) return a;
  return std::nullopt;
}

inline bool FiniteRing::commutative(std::uint64_t budget) const {
  const auto all = elements(budget);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (mul(all[i], all[j]) != mul(all[j], all[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Backends

/// Z/nZ computed arithmetically.
class ModularRingImpl final : public RingImpl {
 public:
  explicit ModularRingImpl(std::uint64_t n) : n_(n) {
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      std::uint64_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      nil_bound_ = std::max(nil_bound_, e);
    }
    nil_bound_ = std::max<std::uint64_t>(nil_bound_, 1);
  }

  std::string name() const override { return "Z" + std::to_string(n_); }
  std::uint64_t size() const override { return n_; }
  unsigned code_bits() const override { return static_cast<unsigned>(std::bit_width(n_ - 1)); }
  bool is_valid_code(std::uint64_t c) const override { return c < n_; }
  std::uint64_t code_at(std::uint64_t o) const override { return o; }
  std::uint64_t ordinal_of(std::uint64_t c) const override { return c; }
  std::uint64_t zero() const override { return 0; }
  std::uint64_t one() const override { return 1; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const override { return (a + b) % n_; }
  std::uint64_t neg(std::uint64_t a) const override { return a == 0 ? 0 : n_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override { return (a * b) % n_; }
  std::string format(std::uint64_t c) const override { return std::to_string(c); }
  std::optional<std::uint64_t> parse(std::string_view text) const override {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-') {
      negative = true;
      text.remove_prefix(1);
    }
    if (text.empty() || text.size() > 18) return std::nullopt;
    std::uint64_t v = 0;
    for (char ch : text) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    v %= n_;
    return negative ? neg(v) : v;
  }
  std::uint64_t nilpotency_bound() const override { return nil_bound_; }

 private:
  std::uint64_t n_;
  std::uint64_t nil_bound_ = 0;
};

/// A ring given by explicit operation tables over indices 0..size-1.
class TableRingImpl final : public RingImpl {
 public:
  TableRingImpl(std::string name, std::uint64_t size, std::vector<std::uint32_t> add, std::vector<std::uint32_t> mul,
                std::uint64_t zero, std::uint64_t one)
      : name_(std::move(name)), size_(size), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one) {
    if (size_ < 2) throw RingError(name_ + ": a ring needs at least two elements");
    if (size_ > 4096) throw ResourceError(name_ + ": explicit tables limited to 4096 elements");
    if (add_.size() != size_ * size_ || mul_.size() != size_ * size_)
      throw RingError(name_ + ": operation tables must have size*size entries");
    if (zero_ >= size_ || one_ >= size_) throw RingError(name_ + ": zero/one index out of range");
    for (auto v : add_)
      if (v >= size_) throw RingError(name_ + ": addition table entry out of range");
    for (auto v : mul_)
      if (v >= size_) throw RingError(name_ + ": multiplication table entry out of range");
    neg_.assign(size_, size_);
    for (std::uint64_t a = 0; a < size_; ++a)
      for (std::uint64_t b = 0; b < size_; ++b)
        if (add_[a * size_ + b] == zero_) {
          neg_[a] = b;
          break;
        }
    for (std::uint64_t a = 0; a < size_; ++a)
      if (neg_[a] == size_) throw RingError(name_ + ": element " + std::to_string(a) + " has no additive inverse");
  }

  std::string name() const override { return name_; }
  std::uint64_t size() const override { return size_; }
  unsigned code_bits() const override { return static_cast<unsigned>(std::bit_width(size_ - 1)); }
  bool is_valid_code(std::uint64_t c) const override { return c < size_; }
  std::uint64_t code_at(std::uint64_t o) const override { return o; }
  std::uint64_t ordinal_of(std::uint64_t c) const override { return c; }
  std::uint64_t zero() const override { return zero_; }
  std::uint64_t one() const override { return one_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const override { return add_[a * size_ + b]; }
  std::uint64_t neg(std::uint64_t a) const override { return neg_[a]; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override { return mul_[a * size_ + b]; }
  std::string format(std::uint64_t c) const override { return "e" + std::to_string(c); }
  std::optional<std::uint64_t> parse(std::string_view text) const override {
    if (text.size() < 2 || text.front() != 'e') return std::nullopt;
    std::uint64_t v = 0;
    for (char ch : text.substr(1)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return v;
  }

 private:
  std::string name_;
  std::uint64_t size_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint64_t> neg_;
  std::uint64_t zero_;
  std::uint64_t one_;
};

/// Componentwise product R1 x R2; code = (c1 << bits(R2)) | c2.
class ProductRingImpl final : public RingImpl {
 public:
  ProductRingImpl(FiniteRing left, FiniteRing right) : left_(std::move(left)), right_(std::move(right)) {
    shift_ = right_.code_bits();
    if (left_.code_bits() + shift_ > 63) throw ResourceError("product ring codes exceed 64 bits");
    mask_ = (std::uint64_t{1} << shift_) - 1;
  }

  const FiniteRing& left() const { return left_; }
  const FiniteRing& right() const { return right_; }

  std::string name() const override { return left_.name() + "x" + right_.name(); }
  std::uint64_t size() const override { return left_.size() * right_.size(); }
  unsigned code_bits() const override { return left_.code_bits() + shift_; }
  bool is_valid_code(std::uint64_t c) const override {
    return (c >> code_bits()) == 0 && left_.contains(RingElement{c >> shift_}) && right_.contains(RingElement{c & mask_});
  }
  std::uint64_t code_at(std::uint64_t o) const override {
    return pack(left_.element(o / right_.size()), right_.element(o % right_.size()));
  }
  std::uint64_t ordinal_of(std::uint64_t c) const override {
    return left_.ordinal(first(c)) * right_.size() + right_.ordinal(second(c));
  }
  std::uint64_t zero() const override { return pack(left_.zero(), right_.zero()); }
  std::uint64_t one() const override { return pack(left_.one(), right_.one()); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const override {
    return pack(left_.add(first(a), first(b)), right_.add(second(a), second(b)));
  }
  std::uint64_t neg(std::uint64_t a) const override { return pack(left_.neg(first(a)), right_.neg(second(a))); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    return pack(left_.mul(first(a), first(b)), right_.mul(second(a), second(b)));
  }
  std::string format(std::uint64_t c) const override {
    return "(" + left_.format(first(c)) + "," + right_.format(second(c)) + ")";
  }
  std::optional<std::uint64_t> parse(std::string_view text) const override {
    auto body = detail::unwrap(text, '(', ')');
    if (!body) return std::nullopt;
    const auto parts = detail::split_top(*body, ',');
    if (parts.size() != 2) return std::nullopt;
    auto a = left_.parse(parts[0]);
    auto b = right_.parse(parts[1]);
    if (!a || !b) return std::nullopt;
    return pack(*a, *b);
  }
  std::uint64_t nilpotency_bound() const override {
    return std::max(left_.nilpotency_bound(), right_.nilpotency_bound());
  }

  std::uint64_t pack(RingElement a, RingElement b) const { return (a.code << shift_) | b.code; }
  RingElement first(std::uint64_t c) const { return RingElement{c >> shift_}; }
  RingElement second(std::uint64_t c) const { return RingElement{c & mask_}; }

 private:
  FiniteRing left_;
  FiniteRing right_;
  unsigned shift_ = 0;
  std::uint64_t mask_ = 0;
};

/// A subring of k x k matrices over a small base ring, described by free
/// parameters: each parameter fills a fixed set of positions; all other
/// positions are zero. Full matrix rings, R3 and the block ring S are
/// instances. Code layout: parameter p occupies bits [p*w, (p+1)*w) with
/// w = code_bits(base); ordinals treat parameter 0 as least significant.
class PatternMatrixRingImpl final : public RingImpl {
 public:
  struct Parameter {
    std::string label;
    char block = 'M';
    std::vector<std::pair<unsigned, unsigned>> positions;
  };

  static constexpr unsigned kMaxDim = 8;

  PatternMatrixRingImpl(std::string name, FiniteRing base, unsigned k, std::vector<Parameter> params,
                        std::uint64_t construction_cap)
      : name_(std::move(name)), base_(std::move(base)), k_(k), params_(std::move(params)) {
    if (k_ == 0 || k_ > kMaxDim) throw RingError(name_ + ": matrix dimension must be in 1..8");
    fast_ = base_.fast_tables();
    if (fast_ == nullptr) throw ResourceError(name_ + ": base ring must have at most 256 element codes");
    w_ = fast_->bits == 0 ? 1 : fast_->bits;
    if (params_.size() * w_ > 63) throw ResourceError(name_ + ": element codes exceed 64 bits");
    size_ = detail::checked_pow(base_.size(), params_.size(), construction_cap, name_);
    digit_mask_ = (std::uint64_t{1} << w_) - 1;
    slot_.fill(-1);
    for (std::size_t p = 0; p < params_.size(); ++p)
      for (auto [i, j] : params_[p].positions) {
        if (i >= k_ || j >= k_) throw RingError(name_ + ": parameter position outside the matrix");
        auto& s = slot_[i * kMaxDim + j];
        if (s != -1) throw RingError(name_ + ": two parameters share a position");
        s = static_cast<int>(p);
      }
    zero_ = 0;
    for (std::size_t p = 0; p < params_.size(); ++p) zero_ |= base_.zero().code << (p * w_);
    one_ = 0;
    for (std::size_t p = 0; p < params_.size(); ++p) {
      std::size_t diag = 0;
      for (auto [i, j] : params_[p].positions) diag += (i == j) ? 1 : 0;
      if (diag != 0 && diag != params_[p].positions.size())
        throw RingError(name_ + ": parameter mixes diagonal and off-diagonal positions");
      const auto digit = diag != 0 ? base_.one() : base_.zero();
      one_ |= digit.code << (p * w_);
    }
    for (unsigned i = 0; i < k_; ++i)
      if (slot_[i * kMaxDim + i] == -1) throw RingError(name_ + ": pattern cannot represent the identity");
    base_commutative_ = base_.commutative();
  }

  const FiniteRing& base() const { return base_; }
  unsigned dim() const { return k_; }
  const std::vector<Parameter>& parameters() const { return params_; }
  RingElement digit(std::uint64_t code, std::size_t p) const { return RingElement{(code >> (p * w_)) & digit_mask_}; }
  std::uint64_t with_digit(std::uint64_t code, std::size_t p, RingElement v) const {
    return (code & ~(digit_mask_ << (p * w_))) | (v.code << (p * w_));
  }

  std::string name() const override { return name_; }
  std::uint64_t size() const override { return size_; }
  unsigned code_bits() const override { return static_cast<unsigned>(params_.size() * w_); }
  bool is_valid_code(std::uint64_t c) const override {
    if (code_bits() < 64 && (c >> code_bits()) != 0) return false;
    for (std::size_t p = 0; p < params_.size(); ++p)
      if (!base_.contains(digit(c, p))) return false;
    return true;
  }
  std::uint64_t code_at(std::uint64_t o) const override {
    std::uint64_t c = 0;
    const auto b = base_.size();
    for (std::size_t p = 0; p < params_.size(); ++p) {
      c |= base_.element(o % b).code << (p * w_);
      o /= b;
    }
    return c;
  }
  std::uint64_t ordinal_of(std::uint64_t c) const override {
    std::uint64_t o = 0;
    const auto b = base_.size();
    for (std::size_t p = params_.size(); p-- > 0;) o = o * b + fast_->ordinal[digit(c, p).code];
    return o;
  }
  std::uint64_t zero() const override { return zero_; }
  std::uint64_t one() const override { return one_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const override {
    std::uint64_t c = 0;
    for (std::size_t p = 0; p < params_.size(); ++p) {
      const auto s = p * w_;
      c |= std::uint64_t{fast_->add[(((a >> s) & digit_mask_) << fast_->bits) | ((b >> s) & digit_mask_)]} << s;
    }
    return c;
  }
  std::uint64_t neg(std::uint64_t a) const override {
    std::uint64_t c = 0;
    for (std::size_t p = 0; p < params_.size(); ++p) {
      const auto s = p * w_;
      c |= std::uint64_t{fast_->neg[(a >> s) & digit_mask_]} << s;
    }
    return c;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    Matrix x{}, y{};
    expand(a, x);
    expand(b, y);
    const auto zero_digit = static_cast<std::uint16_t>(base_.zero().code);
    const unsigned bits = fast_->bits;
    Matrix z{};
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) {
        std::uint16_t acc = zero_digit;
        for (unsigned l = 0; l < k_; ++l) {
          const std::uint16_t prod = fast_->mul[(std::uint32_t{x[i * kMaxDim + l]} << bits) | y[l * kMaxDim + j]];
          acc = fast_->add[(std::uint32_t{acc} << bits) | prod];
        }
        z[i * kMaxDim + j] = acc;
      }
    return compress(z);
  }
  std::string format(std::uint64_t c) const override {
    Matrix m{};
    expand(c, m);
    std::string out = "[";
    for (unsigned i = 0; i < k_; ++i) {
      out += i == 0 ? "[" : ",[";
      for (unsigned j = 0; j < k_; ++j) {
        if (j != 0) out += ",";
        out += base_.format(RingElement{m[i * kMaxDim + j]});
      }
      out += "]";
    }
    return out + "]";
  }
  /// Accepts the format() layout; entries outside the pattern must be zero
  /// and entries of one parameter must agree.
  std::optional<std::uint64_t> parse(std::string_view text) const override {
    auto body = detail::unwrap(text, '[', ']');
    if (!body) return std::nullopt;
    const auto rows = detail::split_top(*body, ',');
    if (rows.size() != k_) return std::nullopt;
    Matrix m{};
    for (unsigned i = 0; i < k_; ++i) {
      auto row = detail::unwrap(rows[i], '[', ']');
      if (!row) return std::nullopt;
      const auto cells = detail::split_top(*row, ',');
      if (cells.size() != k_) return std::nullopt;
      for (unsigned j = 0; j < k_; ++j) {
        auto v = base_.parse(cells[j]);
        if (!v) return std::nullopt;
        m[i * kMaxDim + j] = static_cast<std::uint16_t>(v->code);
      }
    }
    try {
      return compress(m);
    } catch (const RingError&) {
      return std::nullopt;
    }
  }
  std::uint64_t nilpotency_bound() const override {
    return base_commutative_ ? std::min<std::uint64_t>(size_, std::uint64_t{k_} * base_.nilpotency_bound()) : size_;
  }
  std::optional<std::vector<std::uint64_t>> elementary_codes() const override {
    std::vector<std::uint64_t> out;
    for (std::size_t p = 0; p < params_.size(); ++p)
      for (std::uint64_t o = 0; o < base_.size(); ++o) {
        const auto v = base_.element(o);
        if (v != base_.zero()) out.push_back(with_digit(zero_, p, v));
      }
    return out;
  }

 private:
  using Matrix = std::array<std::uint16_t, kMaxDim * kMaxDim>;

  void expand(std::uint64_t code, Matrix& m) const {
    const auto zero_digit = static_cast<std::uint16_t>(base_.zero().code);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) {
        const int s = slot_[i * kMaxDim + j];
        m[i * kMaxDim + j] = s < 0 ? zero_digit : static_cast<std::uint16_t>(digit(code, static_cast<std::size_t>(s)).code);
      }
  }

  std::uint64_t compress(const Matrix& m) const {
    const auto zero_digit = static_cast<std::uint16_t>(base_.zero().code);
    std::uint64_t c = 0;
    for (std::size_t p = 0; p < params_.size(); ++p) {
      const auto [i0, j0] = params_[p].positions.front();
      const auto v = m[i0 * kMaxDim + j0];
      for (auto [i, j] : params_[p].positions)
        if (m[i * kMaxDim + j] != v) throw RingError(name_ + ": pattern not closed under multiplication");
      c |= std::uint64_t{v} << (p * w_);
    }
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j)
        if (slot_[i * kMaxDim + j] < 0 && m[i * kMaxDim + j] != zero_digit)
          throw RingError(name_ + ": pattern not closed under multiplication");
    return c;
  }

  std::string name_;
  FiniteRing base_;
  unsigned k_;
  std::vector<Parameter> params_;
  const detail::FastTables* fast_ = nullptr;
  unsigned w_ = 1;
  std::uint64_t digit_mask_ = 1;
  std::uint64_t size_ = 0;
  std::array<int, kMaxDim * kMaxDim> slot_{};
  std::uint64_t zero_ = 0;
  std::uint64_t one_ = 0;
  bool base_commutative_ = false;
};

// ---------------------------------------------------------------------------
// Constructors

inline FiniteRing make_zn(std::uint64_t n) {
  if (n < 2) throw RingError("Z_n requires n >= 2, got " + std::to_string(n));
  if (n > (std::uint64_t{1} << 31)) throw ResourceError("Z_n limited to n <= 2^31");
  return FiniteRing(std::make_shared<ModularRingImpl>(n));
}

inline FiniteRing make_table_ring(std::string name, std::uint64_t size, std::vector<std::uint32_t> add,
                                  std::vector<std::uint32_t> mul, std::uint64_t zero, std::uint64_t one) {
  return FiniteRing(std::make_shared<TableRingImpl>(std::move(name), size, std::move(add), std::move(mul), zero, one));
}

inline FiniteRing make_product(const FiniteRing& left, const FiniteRing& right,
                               std::uint64_t construction_cap = kDefaultConstructionCap) {
  if (left.size() > construction_cap / right.size())
    throw ResourceError(left.name() + "x" + right.name() + ": carrier size exceeds construction cap");
  return FiniteRing(std::make_shared<ProductRingImpl>(left, right));
}

inline FiniteRing make_matrix_ring(const FiniteRing& base, unsigned k,
                                   std::uint64_t construction_cap = kDefaultConstructionCap) {
  std::vector<PatternMatrixRingImpl::Parameter> params;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j)
      params.push_back({"m" + std::to_string(i + 1) + std::to_string(j + 1), 'M', {{i, j}}});
  return FiniteRing(std::make_shared<PatternMatrixRingImpl>("M" + std::to_string(k) + "(" + base.name() + ")", base, k,
                                                            std::move(params), construction_cap));
}

/// 3x3 upper-triangular matrices with constant diagonal a and free upper
/// entries b (1,2), c (1,3), d (2,3).
inline FiniteRing make_r3(const FiniteRing& base, std::uint64_t construction_cap = kDefaultConstructionCap) {
  std::vector<PatternMatrixRingImpl::Parameter> params{
      {"a", 'D', {{0, 0}, {1, 1}, {2, 2}}},
      {"b", 'U', {{0, 1}}},
      {"c", 'U', {{0, 2}}},
      {"d", 'U', {{1, 2}}},
  };
  return FiniteRing(
      std::make_shared<PatternMatrixRingImpl>("R3(" + base.name() + ")", base, 3, std::move(params), construction_cap));
}

/// Block upper-triangular 4x4 matrices (A B; 0 C) with A, B, C in M2(base).
inline FiniteRing make_s_ring(const FiniteRing& base, std::uint64_t construction_cap = kDefaultConstructionCap) {
  std::vector<PatternMatrixRingImpl::Parameter> params;
  auto block = [&](char tag, unsigned row0, unsigned col0) {
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j)
        params.push_back({std::string(1, tag) + std::to_string(i + 1) + std::to_string(j + 1), tag, {{row0 + i, col0 + j}}});
  };
  block('A', 0, 0);
  block('B', 0, 2);
  block('C', 2, 2);
  return FiniteRing(
      std::make_shared<PatternMatrixRingImpl>("S(" + base.name() + ")", base, 4, std::move(params), construction_cap));
}

/// Pattern backend of r, or nullptr when r is not a matrix-pattern ring.
inline const PatternMatrixRingImpl* pattern_of(const FiniteRing& r) {
  return dynamic_cast<const PatternMatrixRingImpl*>(&r.impl());
}

inline const ProductRingImpl* product_of(const FiniteRing& r) { return dynamic_cast<const ProductRingImpl*>(&r.impl()); }

}  // namespace skewpbw
