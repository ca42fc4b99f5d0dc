#pragma once

// Builtin ring expressions, builtin maps, and the named instance catalog.
//
// Ring expressions: Zn, Mk(R), R3(R), S(R), and products "RxR" (top-level
// 'x' separates factors, e.g. Z2xZ2 or M2(Z2)xZ3; parentheses group).
// Parsed rings are cached per Builtins object so equal expressions yield
// the same ring.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewpbw/errors.hpp"
#include "skewpbw/morphisms.hpp"
#include "skewpbw/pbw.hpp"
#include "skewpbw/ring.hpp"

namespace skewpbw {

class Builtins {
 public:
  /// Parses a ring expression; throws RingError on malformed input.
  FiniteRing ring(const std::string& expr) {
    const std::string key = strip(expr);
    if (auto it = rings_.find(key); it != rings_.end()) return it->second;
    FiniteRing r = build(key);
    rings_.emplace(key, r);
    return r;
  }

  /// Builtin map names on r: id (or identity), swap, negate-<block>, entrywise(<map>).
  std::optional<RingMap> map(const FiniteRing& r, const std::string& name, const VerifyOptions& opts = {}) {
    const std::string n = strip(name);
    if (n == "id" || n == "identity") return RingMap::identity(r);
    if (n == "swap") {
      const auto* p = product_of(r);
      if (p == nullptr || !(p->left() == p->right())) throw MorphismError(MorphismError::Kind::WrongRing, "swap needs a ring RxR");
      return verify_endomorphism(r, [p](RingElement a) { return RingElement{p->pack(p->second(a.code), p->first(a.code))}; },
                                 "swap", opts);
    }
    if (n.rfind("negate-", 0) == 0 && n.size() == 8) {
      const auto* pat = pattern_of(r);
      if (pat == nullptr) throw MorphismError(MorphismError::Kind::WrongRing, n + " needs a block matrix ring");
      const char tag = n[7];
      std::vector<std::size_t> slots;
      for (std::size_t p = 0; p < pat->parameters().size(); ++p)
        if (pat->parameters()[p].block == tag) slots.push_back(p);
      if (slots.empty()) throw MorphismError(MorphismError::Kind::WrongRing, r.name() + " has no block " + std::string(1, tag));
      return verify_endomorphism(r,
                                 [pat, slots](RingElement a) {
                                   auto c = a.code;
                                   for (auto p : slots) c = pat->with_digit(c, p, pat->base().neg(pat->digit(c, p)));
                                   return RingElement{c};
                                 },
                                 n, opts);
    }
    if (n.rfind("entrywise(", 0) == 0 && n.back() == ')') {
      const auto* pat = pattern_of(r);
      if (pat == nullptr) throw MorphismError(MorphismError::Kind::WrongRing, n + " needs a matrix ring");
      auto inner = map(pat->base(), n.substr(10, n.size() - 11), opts);
      if (!inner) return std::nullopt;
      const auto m = *inner;
      const std::size_t count = pat->parameters().size();
      return verify_endomorphism(r,
                                 [pat, m, count](RingElement a) {
                                   auto c = a.code;
                                   for (std::size_t p = 0; p < count; ++p) c = pat->with_digit(c, p, m(pat->digit(c, p)));
                                   return RingElement{c};
                                 },
                                 n, opts);
    }
    return std::nullopt;
  }

  static std::string strip(const std::string& s) {
    std::string out;
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
  }

 private:
  FiniteRing build(const std::string& e) {
    if (e.empty()) throw RingError("empty ring expression");
    if (e.front() == '(' && e.back() == ')') {
      int d = 0;
      std::size_t close = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == '(') ++d;
        if (e[i] == ')' && --d == 0) {
          close = i;
          break;
        }
      }
      if (close + 1 == e.size()) return ring(e.substr(1, e.size() - 2));
    }
    // top-level product
    int depth = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == '(') ++depth;
      if (e[i] == ')') --depth;
      if (depth == 0 && e[i] == 'x') return make_product(ring(e.substr(0, i)), ring(e.substr(i + 1)));
    }
    auto inner_of = [&](std::size_t prefix) {
      if (e.size() < prefix + 2 || e[prefix] != '(' || e.back() != ')') throw RingError("malformed ring expression '" + e + "'");
      return e.substr(prefix + 1, e.size() - prefix - 2);
    };
    auto number = [&](const std::string& digits) {
      if (digits.empty() || digits.size() > 9 ||
          !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw RingError("malformed ring expression '" + e + "'");
      return std::stoull(digits);
    };
    if (e[0] == 'Z') return make_zn(number(e.substr(1)));
    if (e.rfind("R3(", 0) == 0) return make_r3(ring(inner_of(2)));
    if (e.rfind("S(", 0) == 0) return make_s_ring(ring(inner_of(1)));
    if (e[0] == 'M') {
      const auto open = e.find('(');
      if (open == std::string::npos) throw RingError("malformed ring expression '" + e + "'");
      return make_matrix_ring(ring(inner_of(open)), static_cast<unsigned>(number(e.substr(1, open - 1))));
    }
    throw RingError("unknown ring '" + e + "'");
  }

  std::map<std::string, FiniteRing> rings_;
};

/// Classification flags recorded with a catalog entry.
struct ExpectedFlags {
  bool reduced = false;
  bool ni = false;
  bool abelian = false;
  bool sigma_rigid = false;
  bool weak_sigma_rigid = false;
};

/// A concrete (ring, family, extension) instance.
struct Instance {
  std::string name;
  FiniteRing ring;
  SigmaFamily family;
  CommutationSystem system;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string ring_expr;
  std::vector<std::string> maps;  // family, by builtin map name
  std::optional<ExpectedFlags> expected;
  std::function<Instance(Builtins&)> build;
};

namespace detail {

inline Instance ore_instance(Builtins& b, const std::string& name, const std::string& ring_expr,
                             const std::vector<std::string>& maps) {
  const FiniteRing r = b.ring(ring_expr);
  std::vector<RingMap> fam;
  for (const auto& m : maps) fam.push_back(*b.map(r, m));
  SigmaFamily family(fam);
  std::vector<SigmaDerivation> delta;
  for (const auto& m : fam) delta.push_back(zero_derivation(m));
  return Instance{name, r, family, CommutationSystem::make(name, family, delta)};
}

inline std::optional<std::pair<std::uint64_t, std::uint64_t>> quantum_plane_params(const std::string& name) {
  const std::string prefix = "quantum-plane(Z";
  if (name.rfind(prefix, 0) != 0 || name.back() != ')') return std::nullopt;
  const auto body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  const auto comma = body.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto p = std::stoull(body.substr(0, comma), &used);
    if (used != comma) return std::nullopt;
    const auto q_text = body.substr(comma + 1);
    const auto q = std::stoull(q_text, &used);
    if (used != q_text.size()) return std::nullopt;
    return std::pair{p, q};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// k[x1, x2] with x2 x1 = q x1 x2 over Zp (q reduced mod p).
inline Instance quantum_plane(Builtins& b, std::uint64_t p, std::uint64_t q) {
  const std::string name = "quantum-plane(Z" + std::to_string(p) + "," + std::to_string(q) + ")";
  const FiniteRing r = b.ring("Z" + std::to_string(p));
  const auto id = RingMap::identity(r);
  SigmaFamily family({id, id});
  std::map<std::pair<std::size_t, std::size_t>, Relation> rel;
  rel[{0, 1}] = Relation{RingElement{q % p}, r.zero(), {}};
  return Instance{name, r, family, CommutationSystem::make(name, family, {zero_derivation(id), zero_derivation(id)}, rel)};
}

}  // namespace detail

/// The builtin instances, in report order.
inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    auto ore = [&](std::string name, std::string ring_expr, std::string map, ExpectedFlags flags, std::string desc) {
      CatalogEntry e{name, std::move(desc), ring_expr, {map}, flags, {}};
      e.build = [name, ring_expr, map](Builtins& b) { return detail::ore_instance(b, name, ring_expr, {map}); };
      out.push_back(std::move(e));
    };
    ore("Z2", "Z2", "id", {true, true, true, true, true}, "field of two elements, R[x]");
    ore("Z3", "Z3", "id", {true, true, true, true, true}, "field of three elements, R[x]");
    ore("Z4", "Z4", "id", {false, true, true, false, true}, "integers mod 4, R[x]");
    ore("Z6", "Z6", "id", {true, true, true, true, true}, "integers mod 6, R[x]");
    ore("Z2xZ2", "Z2xZ2", "id", {true, true, true, true, true}, "product ring, R[x]");
    ore("Z2xZ2/swap", "Z2xZ2", "swap", {true, true, true, false, false}, "product ring, R[x; swap]");
    ore("M2(Z2)", "M2(Z2)", "id", {false, false, false, false, true}, "2x2 matrices over Z2, R[x]");
    ore("R3(Z2)", "R3(Z2)", "id", {false, true, true, false, true},
        "upper triangular 3x3 with constant diagonal over Z2, R[x]");
    ore("S(Z3)", "S(Z3)", "negate-B", {false, false, false, false, true},
        "block triangular (A B; 0 C) over M2(Z3), R[x; negate-B]");
    ore("S(Z4)", "S(Z4)", "negate-B", {false, false, false, false, true},
        "block triangular (A B; 0 C) over M2(Z4), R[x; negate-B]");
    {
      CatalogEntry e{"quantum-plane(Z3,2)", "x2 x1 = 2 x1 x2 over Z3", "Z3", {"id", "id"}, ExpectedFlags{true, true, true, true, true}, {}};
      e.build = [](Builtins& b) { return detail::quantum_plane(b, 3, 2); };
      out.push_back(std::move(e));
    }
    {
      CatalogEntry e{"swap-ore", "R[x; swap, id - swap] over Z2xZ2", "Z2xZ2", {"swap"}, ExpectedFlags{true, true, true, false, false}, {}};
      e.build = [](Builtins& b) {
        const FiniteRing r = b.ring("Z2xZ2");
        const RingMap s = *b.map(r, "swap");
        SigmaFamily family({s});
        return Instance{"swap-ore", r, family, CommutationSystem::make("swap-ore", family, {id_minus_derivation(s)})};
      };
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

/// Catalog lookup; also accepts any quantum-plane(Zp,q).
inline std::optional<CatalogEntry> find_catalog_entry(const std::string& raw) {
  const std::string name = Builtins::strip(raw);
  for (const auto& e : catalog())
    if (e.name == name) return e;
  if (auto pq = detail::quantum_plane_params(name)) {
    const auto [p, q] = *pq;
    CatalogEntry e{name, "x2 x1 = q x1 x2 over Zp", "Z" + std::to_string(p), {"id", "id"}, {}, {}};
    e.build = [p, q](Builtins& b) { return detail::quantum_plane(b, p, q); };
    return e;
  }
  return std::nullopt;
}

}  // namespace skewpbw
