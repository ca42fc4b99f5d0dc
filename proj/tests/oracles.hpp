#pragma once

// Reference computations that share no code with the library beyond the
// element handles: plain integer matrices, dense Ore-polynomial products,
// cycle-detection nilpotency, direct quantum-plane monomial products.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skewpbw/skewpbw.hpp"

namespace oracle {

using skewpbw::FiniteRing;
using skewpbw::RingElement;

using IntMatrix = std::vector<std::vector<long>>;

/// Parses "[[a,b],[c,d]]" into integers.
inline IntMatrix parse_matrix(const std::string& s) {
  IntMatrix m;
  std::vector<long> row;
  std::string num;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') {
      ++depth;
    } else if (ch == ']') {
      if (!num.empty()) row.push_back(std::stol(num)), num.clear();
      if (depth == 2) m.push_back(row), row.clear();
      --depth;
    } else if (ch == ',') {
      if (!num.empty()) row.push_back(std::stol(num)), num.clear();
    } else if (ch != ' ') {
      num += ch;
    }
  }
  return m;
}

inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) out << (j ? "," : "") << m[i][j];
    out << "]";
  }
  out << "]";
  return out.str();
}

inline IntMatrix matmul_mod(const IntMatrix& a, const IntMatrix& b, long n) {
  const std::size_t k = a.size();
  IntMatrix c(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      long s = 0;
      for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      c[i][j] = ((s % n) + n) % n;
    }
  return c;
}

/// Nilpotency by walking a, a^2, ... until zero or a repeat.
inline bool nilpotent_by_cycle(const FiniteRing& r, RingElement a) {
  std::set<std::uint64_t> seen;
  RingElement p = a;
  for (;;) {
    if (r.is_zero(p)) return true;
    if (!seen.insert(p.code).second) return false;
    p = r.mul(p, a);
  }
}

inline std::vector<RingElement> nil_by_cycle(const FiniteRing& r) {
  std::vector<RingElement> out;
  for (auto a : r.elements())
    if (nilpotent_by_cycle(r, a)) out.push_back(a);
  return out;
}

inline std::vector<RingElement> nil_by_power(const FiniteRing& r) {
  std::vector<RingElement> out;
  for (auto a : r.elements())
    if (r.is_zero(r.pow(a, r.size()))) out.push_back(a);
  return out;
}

/// One-variable Ore polynomials as dense coefficient lists, lowest degree first.
using Dense = std::vector<RingElement>;

struct Ore {
  FiniteRing r;
  std::function<RingElement(RingElement)> sigma;
  std::function<RingElement(RingElement)> delta;

  Dense trim(Dense p) const {
    while (!p.empty() && r.is_zero(p.back())) p.pop_back();
    return p;
  }

  /// x * p = sum sigma(c_k) x^{k+1} + delta(c_k) x^k.
  Dense times_x(const Dense& p) const {
    Dense out(p.size() + 1, r.zero());
    for (std::size_t k = 0; k < p.size(); ++k) {
      out[k + 1] = r.add(out[k + 1], sigma(p[k]));
      out[k] = r.add(out[k], delta(p[k]));
    }
    return trim(out);
  }

  Dense mul(const Dense& f, const Dense& g) const {
    Dense out;
    auto acc = [&](const Dense& t) {
      if (out.size() < t.size()) out.resize(t.size(), r.zero());
      for (std::size_t k = 0; k < t.size(); ++k) out[k] = r.add(out[k], t[k]);
    };
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (r.is_zero(f[i])) continue;
      // f_i x^i g: push g through x^i, then scale on the left
      Dense t = g;
      for (std::size_t s = 0; s < i; ++s) t = times_x(t);
      for (auto& c : t) c = r.mul(f[i], c);
      acc(t);
    }
    return trim(out);
  }
};

inline Dense dense_of(const skewpbw::SkewPoly& f) {
  Dense out;
  for (const auto& [alpha, c] : f.terms()) {
    if (out.size() <= alpha[0]) out.resize(alpha[0] + 1, f.ring().zero());
    out[alpha[0]] = c;
  }
  while (!out.empty() && f.ring().is_zero(out.back())) out.pop_back();
  return out;
}

/// Quantum plane over Z_p with sigma = id: (a x1^i x2^j)(b x1^k x2^l) = ab q^{jk} x1^{i+k} x2^{j+l}.
struct QuantumTerm {
  std::uint64_t coef;
  unsigned e1;
  unsigned e2;
};

inline QuantumTerm quantum_mul(const QuantumTerm& s, const QuantumTerm& t, std::uint64_t p, std::uint64_t q) {
  std::uint64_t qp = 1;
  for (unsigned k = 0; k < s.e2 * t.e1; ++k) qp = qp * q % p;
  return QuantumTerm{s.coef * t.coef % p * qp % p, s.e1 + t.e1, s.e2 + t.e2};
}

}  // namespace oracle
