#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewpbw {

/// alpha in N^n; x^alpha = x1^alpha1 ... xn^alphan.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<std::uint32_t> e) : e_(e) {}
  explicit ExponentVector(std::vector<std::uint32_t> e) : e_(std::move(e)) {}

  static ExponentVector unit(std::size_t n, std::size_t i) {
    ExponentVector v(n);
    v.e_.at(i) = 1;
    return v;
  }

  std::size_t size() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::uint32_t>& values() const { return e_; }

  std::uint64_t degree() const { return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0}); }
  bool is_zero() const { return degree() == 0; }

  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent vectors of different length");
    ExponentVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
    return out;
  }

  /// Componentwise comparison in storage order; used only for canonical
  /// container ordering, not as a monomial order.
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

  /// "x1^2*x2", or "1" for the zero vector.
  std::string monomial_string() const {
    std::string out;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i + 1);
      if (e_[i] > 1) out += "^" + std::to_string(e_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::vector<std::uint32_t> e_;
};

/// Monomial orders over x1 < x2 < ... < xn.
enum class MonomialOrder { Lex, DegLex, DegRevLex };

/// Strong comparison of x^a and x^b under `order`.
inline std::strong_ordering compare(MonomialOrder order, const ExponentVector& a, const ExponentVector& b) {
  if (order != MonomialOrder::Lex) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  }
  const std::size_t n = a.size();
  if (order == MonomialOrder::DegRevLex) {
    // Ties broken at the smallest variable: less of it is larger.
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
  }
  // Lex with xn the largest variable.
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

/// All alpha in N^n with |alpha| <= max_degree, ordered by degree and then
/// by storage order (x1 exponent most significant, descending); the zero
/// vector comes first.
inline std::vector<ExponentVector> monomials_up_to(std::size_t n, unsigned max_degree) {
  std::vector<ExponentVector> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    ExponentVector cur(n);
    auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
      if (i + 1 == n) {
        cur[i] = remaining;
        out.push_back(cur);
        return;
      }
      for (unsigned v = remaining + 1; v-- > 0;) {
        cur[i] = v;
        self(self, i + 1, remaining - v);
      }
    };
    if (n == 0) {
      if (d == 0) out.emplace_back();
      continue;
    }
    rec(rec, 0, d);
  }
  return out;
}

}  // namespace skewpbw
