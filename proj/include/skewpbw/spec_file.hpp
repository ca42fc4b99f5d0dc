#pragma once

// Instance specification files.
//
// One statement per line (or separated by ';'); '#' followed by a blank
// starts a comment. Statements:
//
//   name <text>
//   ring <expr> | ring catalog:<NAME>
//   ring table <name> zero=<i> one=<i> add=<i,...> mul=<i,...>
//   map <name> = <builtin> | map <name> = [<image of #0>, <image of #1>, ...]
//   derivation <name> = zero(<map>) | id-minus(<map>) | inner(<map>, <c>)
//   derivation <name> = images(<map>) [<image of #0>, ...]
//   maps <map>, <map>, ...
//   extension [sigma=<map>,...] [delta=<derivation|zero>,...]
//   relation <i> <j> [c=<r>] [const=<r>] [lin=<r>,...]
//   poly <name> = <polynomial>
//   ideal <name> = principal(<r>)
//   checks <check>[:<arg>], ...
//   expect[:] <check>[:<arg>]=<holds|fails|holds-up-to-bound> ...
//   degree-bound <D> | power-bound <K> | seed <N>
//   coefficients auto | full | block-elementary | sampled(<k>) | explicit[<r>, ...]

#include <cctype>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewpbw/catalog.hpp"
#include "skewpbw/classify.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/pbw.hpp"
#include "skewpbw/property_lab.hpp"
#include "skewpbw/report.hpp"

namespace skewpbw {

class SpecError : public std::runtime_error {
 public:
  SpecError(int line, int column, const std::string& message, std::string witness = {})
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message),
        witness_(std::move(witness)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::string witness_;
};

/// Source position; ignored by equality so that reformatted files compare equal.
struct Where {
  int line = 0;
  int column = 0;
  friend bool operator==(const Where&, const Where&) { return true; }
};

/// A piece of source text with its position.
struct Piece {
  std::string text;
  Where at;
  friend bool operator==(const Piece& a, const Piece& b) { return a.text == b.text; }
};

struct RingDecl {
  enum class Kind { Expr, Catalog, Table };
  Kind kind = Kind::Expr;
  std::string expr;  // expression, catalog name, or table name
  std::uint64_t zero = 0;
  std::uint64_t one = 1;
  std::vector<std::uint32_t> add;
  std::vector<std::uint32_t> mul;
  Where at;
  friend bool operator==(const RingDecl&, const RingDecl&) = default;
};

struct MapDecl {
  std::string name;
  std::optional<Piece> builtin;
  std::vector<Piece> images;
  Where at;
  friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct DerivationDecl {
  std::string name;
  std::string kind;  // zero | id-minus | inner | images
  Piece sigma;
  std::optional<Piece> arg;
  std::vector<Piece> images;
  Where at;
  friend bool operator==(const DerivationDecl&, const DerivationDecl&) = default;
};

struct ExtensionDecl {
  std::vector<Piece> sigma;
  std::vector<Piece> delta;
  Where at;
  friend bool operator==(const ExtensionDecl&, const ExtensionDecl&) = default;
};

struct RelationDecl {
  unsigned i = 0;  // 1-based, i < j
  unsigned j = 0;
  std::optional<Piece> c;
  std::optional<Piece> constant;
  std::vector<Piece> lin;
  Where at;
  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct NamedText {
  std::string name;
  Piece text;
  Where at;
  friend bool operator==(const NamedText&, const NamedText&) = default;
};

struct CheckDecl {
  std::string name;
  std::string arg;
  Where at;
  std::string key() const { return arg.empty() ? name : name + ":" + arg; }
  friend bool operator==(const CheckDecl&, const CheckDecl&) = default;
};

struct Expectation {
  CheckDecl check;
  PropertyVerdict::Status status = PropertyVerdict::Status::Holds;
  Where at;
  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct ResolvedSpec;

struct SpecFile {
  std::optional<std::string> name;
  std::optional<RingDecl> ring;
  std::vector<MapDecl> maps;
  std::vector<DerivationDecl> derivations;
  std::optional<std::vector<Piece>> family;
  Where family_at;
  std::optional<ExtensionDecl> extension;
  std::vector<RelationDecl> relations;
  std::vector<NamedText> polys;
  std::vector<NamedText> ideals;
  std::vector<CheckDecl> checks;
  std::vector<Expectation> expectations;
  std::optional<unsigned> degree_bound;
  std::optional<unsigned> power_bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> coefficients;

  /// Built instance, present after validation. Not part of equality.
  std::shared_ptr<const ResolvedSpec> resolved;

  friend bool operator==(const SpecFile& a, const SpecFile& b) {
    return a.name == b.name && a.ring == b.ring && a.maps == b.maps && a.derivations == b.derivations &&
           a.family == b.family && a.extension == b.extension && a.relations == b.relations && a.polys == b.polys &&
           a.ideals == b.ideals && a.checks == b.checks && a.expectations == b.expectations &&
           a.degree_bound == b.degree_bound && a.power_bound == b.power_bound && a.seed == b.seed &&
           a.coefficients == b.coefficients;
  }

  /// Canonical text; parse_spec(to_text()) == *this.
  std::string to_text(bool instance_only = false) const;
  std::string instance_name() const;
};

struct ResolvedSpec {
  std::string name;
  FiniteRing ring;
  SigmaFamily family;
  CommutationSystem system;
  PbwReport pbw;
  std::map<std::string, RingMap> maps;
  std::map<std::string, SigmaDerivation> derivations;
  std::map<std::string, SkewPoly> polys;
  std::map<std::string, SubsetIdeal> ideals;
};

namespace detail {

inline std::string join(const std::vector<Piece>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].text;
  return out;
}

inline std::string join_ints(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline Piece trim(const Piece& p) {
  std::size_t b = 0;
  std::size_t e = p.text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(p.text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(p.text[e - 1]))) --e;
  return Piece{p.text.substr(b, e - b), Where{p.at.line, p.at.column + static_cast<int>(b)}};
}

/// Splits at top-level `sep` (outside brackets and parentheses).
inline std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    const char ch = i < p.text.size() ? p.text[i] : sep;
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if ((depth == 0 && ch == sep) || i == p.text.size()) {
      out.push_back(trim(Piece{p.text.substr(start, i - start), Where{p.at.line, p.at.column + static_cast<int>(start)}}));
      start = i + 1;
    }
  }
  return out;
}

/// Whitespace-separated words at top level.
inline std::vector<Piece> words(const Piece& p) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = std::string::npos;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    const char ch = i < p.text.size() ? p.text[i] : ' ';
    const bool blank = depth == 0 && std::isspace(static_cast<unsigned char>(ch));
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (!blank && start == std::string::npos) start = i;
    if (blank && start != std::string::npos) {
      out.push_back(Piece{p.text.substr(start, i - start), Where{p.at.line, p.at.column + static_cast<int>(start)}});
      start = std::string::npos;
    }
  }
  return out;
}

inline Piece after(const Piece& p, std::size_t n) {
  return trim(Piece{p.text.substr(std::min(n, p.text.size())), Where{p.at.line, p.at.column + static_cast<int>(n)}});
}

[[noreturn]] inline void fail(const Where& at, const std::string& msg) { throw SpecError(at.line, at.column, msg); }

inline std::uint64_t to_uint(const Piece& p) {
  if (p.text.empty() || p.text.size() > 18 ||
      !std::all_of(p.text.begin(), p.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(p.at, "expected a non-negative integer, got '" + p.text + "'");
  return std::stoull(p.text);
}

inline bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; });
}

/// "name = rest" with a valid name.
inline std::pair<Piece, Piece> binding(const Piece& body, const char* what) {
  const auto eq = body.text.find('=');
  if (eq == std::string::npos) fail(body.at, std::string("expected '") + what + " <name> = ...'");
  Piece name = trim(Piece{body.text.substr(0, eq), body.at});
  Piece rest = after(body, eq + 1);
  if (!valid_name(name.text)) fail(name.at, "invalid name '" + name.text + "'");
  if (rest.text.empty()) fail(rest.at, "missing value");
  return {name, rest};
}

inline std::optional<Piece> call_arg(const Piece& p, const std::string& fn) {
  if (p.text.rfind(fn + "(", 0) != 0 || p.text.back() != ')') return std::nullopt;
  return trim(Piece{p.text.substr(fn.size() + 1, p.text.size() - fn.size() - 2),
                    Where{p.at.line, p.at.column + static_cast<int>(fn.size()) + 1}});
}

inline std::vector<Piece> bracket_list(const Piece& p) {
  if (p.text.size() < 2 || p.text.front() != '[' || p.text.back() != ']') fail(p.at, "expected a list [..]");
  Piece inner{p.text.substr(1, p.text.size() - 2), Where{p.at.line, p.at.column + 1}};
  if (trim(inner).text.empty()) return {};
  return split(inner, ',');
}

inline std::vector<std::uint32_t> int_list(const Piece& p) {
  std::vector<std::uint32_t> out;
  for (const auto& x : split(p, ',')) out.push_back(static_cast<std::uint32_t>(to_uint(x)));
  return out;
}

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "reduced", "ni", "abelian", "sigma_rigid", "weak_sigma_rigid", "weak_sigma_rigid_ideal", "pbw_axioms",
      "weak_sigma_skew_armendariz", "sigma_skew_armendariz", "skew_armendariz", "sigma_delta_skew_armendariz",
      "skew_pi_armendariz", "weak_armendariz", "in_nil_ra"};
  return names;
}

inline CheckDecl parse_check(const Piece& p) {
  const auto colon = p.text.find(':');
  CheckDecl c{p.text.substr(0, colon), colon == std::string::npos ? "" : p.text.substr(colon + 1), p.at};
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), c.name) == names.end()) fail(p.at, "unknown check '" + c.name + "'");
  const bool wants_arg = c.name == "weak_sigma_rigid_ideal" || c.name == "in_nil_ra";
  if (wants_arg && c.arg.empty()) fail(p.at, "check '" + c.name + "' needs an argument, e.g. " + c.name + ":<name>");
  if (!wants_arg && !c.arg.empty()) fail(p.at, "check '" + c.name + "' takes no argument");
  return c;
}

/// Statements with their positions; comments removed.
inline std::vector<Piece> statements(std::string_view text) {
  std::vector<Piece> out;
  int line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string raw(text.substr(pos, eol - pos));
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (raw[i] == '#' && (i + 1 == raw.size() || std::isspace(static_cast<unsigned char>(raw[i + 1]))) &&
          (i == 0 || std::isspace(static_cast<unsigned char>(raw[i - 1])))) {
        raw.resize(i);
        break;
      }
    for (const auto& s : split(Piece{raw, Where{line, 1}}, ';'))
      if (!s.text.empty()) out.push_back(s);
    if (eol == text.size()) break;
    pos = eol + 1;
    ++line;
  }
  return out;
}

}  // namespace detail

/// Parses a spec file. With validate, also builds the instance (resolving
/// every name and checking the extension axioms) and stores it in
/// `resolved`; errors carry the line and column of the offending text.
SpecFile parse_spec(std::string_view text, bool validate = true, std::uint64_t element_budget = kDefaultElementBudget);

/// Builds the instance described by a parsed spec.
std::shared_ptr<const ResolvedSpec> resolve_spec(const SpecFile& spec, std::uint64_t element_budget = kDefaultElementBudget);

inline SpecFile parse_spec(std::string_view text, bool validate, std::uint64_t element_budget) {
  using namespace detail;
  SpecFile spec;
  for (const Piece& st : statements(text)) {
    const auto ws = words(st);
    std::string kw = ws.front().text;
    if (kw == "expect:") kw = "expect";
    const Piece body = after(st, ws.front().text.size());
    if (kw == "name") {
      if (body.text.empty()) fail(body.at, "missing name");
      spec.name = body.text;
    } else if (kw == "ring") {
      if (spec.ring) fail(st.at, "ring declared twice");
      if (body.text.empty()) fail(body.at, "missing ring");
      RingDecl r;
      r.at = body.at;
      if (body.text.rfind("catalog:", 0) == 0) {
        r.kind = RingDecl::Kind::Catalog;
        r.expr = Builtins::strip(body.text.substr(8));
        if (!find_catalog_entry(r.expr)) fail(after(body, 8).at, "unknown catalog instance '" + r.expr + "'");
      } else if (ws.size() > 1 && ws[1].text == "table") {
        r.kind = RingDecl::Kind::Table;
        if (ws.size() < 3) fail(body.at, "expected 'ring table <name> zero=.. one=.. add=.. mul=..'");
        r.expr = ws[2].text;
        bool have_add = false;
        bool have_mul = false;
        for (std::size_t k = 3; k < ws.size(); ++k) {
          const auto eq = ws[k].text.find('=');
          if (eq == std::string::npos) fail(ws[k].at, "expected key=value");
          const std::string key = ws[k].text.substr(0, eq);
          const Piece val = after(ws[k], eq + 1);
          if (key == "zero") {
            r.zero = to_uint(val);
          } else if (key == "one") {
            r.one = to_uint(val);
          } else if (key == "add") {
            r.add = int_list(val);
            have_add = true;
          } else if (key == "mul") {
            r.mul = int_list(val);
            have_mul = true;
          } else {
            fail(ws[k].at, "unknown table field '" + key + "'");
          }
        }
        if (!have_add || !have_mul) fail(body.at, "table ring needs add= and mul=");
      } else {
        r.expr = Builtins::strip(body.text);
      }
      spec.ring = r;
    } else if (kw == "map") {
      auto [name, value] = binding(body, "map");
      MapDecl m{name.text, std::nullopt, {}, name.at};
      if (!value.text.empty() && value.text.front() == '[') {
        m.images = bracket_list(value);
      } else {
        m.builtin = value;
      }
      spec.maps.push_back(std::move(m));
    } else if (kw == "derivation") {
      auto [name, value] = binding(body, "derivation");
      DerivationDecl d{name.text, "", {}, std::nullopt, {}, name.at};
      if (auto a = call_arg(value, "zero")) {
        d.kind = "zero";
        d.sigma = *a;
      } else if (auto a2 = call_arg(value, "id-minus")) {
        d.kind = "id-minus";
        d.sigma = *a2;
      } else if (auto a3 = call_arg(value, "inner")) {
        d.kind = "inner";
        const auto args = split(*a3, ',');
        if (args.size() != 2) fail(a3->at, "inner(<map>, <element>) takes two arguments");
        d.sigma = args[0];
        d.arg = args[1];
      } else if (value.text.rfind("images(", 0) == 0) {
        const auto close = value.text.find(')');
        if (close == std::string::npos) fail(value.at, "expected images(<map>) [..]");
        d.kind = "images";
        d.sigma = trim(Piece{value.text.substr(7, close - 7), Where{value.at.line, value.at.column + 7}});
        d.images = bracket_list(after(value, close + 1));
      } else {
        fail(value.at, "expected zero(..), id-minus(..), inner(.., ..) or images(..) [..]");
      }
      spec.derivations.push_back(std::move(d));
    } else if (kw == "maps") {
      if (spec.family) fail(st.at, "family declared twice");
      if (body.text.empty()) fail(body.at, "empty family");
      spec.family = split(body, ',');
      spec.family_at = body.at;
    } else if (kw == "extension") {
      if (spec.extension) fail(st.at, "extension declared twice");
      ExtensionDecl e;
      e.at = st.at;
      for (const auto& w : words(body)) {
        const auto eq = w.text.find('=');
        if (eq == std::string::npos) fail(w.at, "expected sigma=.. or delta=..");
        const std::string key = w.text.substr(0, eq);
        if (key == "sigma") {
          e.sigma = split(after(w, eq + 1), ',');
        } else if (key == "delta") {
          e.delta = split(after(w, eq + 1), ',');
        } else {
          fail(w.at, "unknown extension field '" + key + "'");
        }
      }
      spec.extension = e;
    } else if (kw == "relation") {
      const auto parts = words(body);
      if (parts.size() < 2) fail(body.at, "expected 'relation <i> <j> c=.. const=.. lin=..'");
      RelationDecl r;
      r.at = st.at;
      r.i = static_cast<unsigned>(to_uint(parts[0]));
      r.j = static_cast<unsigned>(to_uint(parts[1]));
      if (!(r.i >= 1 && r.i < r.j)) fail(parts[0].at, "relation needs 1 <= i < j");
      for (std::size_t k = 2; k < parts.size(); ++k) {
        const auto eq = parts[k].text.find('=');
        if (eq == std::string::npos) fail(parts[k].at, "expected key=value");
        const std::string key = parts[k].text.substr(0, eq);
        const Piece val = after(parts[k], eq + 1);
        if (key == "c") {
          r.c = val;
        } else if (key == "const") {
          r.constant = val;
        } else if (key == "lin") {
          r.lin = split(val, ',');
        } else {
          fail(parts[k].at, "unknown relation field '" + key + "'");
        }
      }
      spec.relations.push_back(std::move(r));
    } else if (kw == "poly" || kw == "ideal") {
      auto [name, value] = binding(body, kw.c_str());
      if (kw == "ideal" && !call_arg(value, "principal")) fail(value.at, "expected principal(<element>)");
      (kw == "poly" ? spec.polys : spec.ideals).push_back(NamedText{name.text, value, name.at});
    } else if (kw == "checks") {
      if (body.text.empty()) fail(body.at, "empty check list");
      for (const auto& c : split(body, ',')) spec.checks.push_back(parse_check(c));
    } else if (kw == "expect") {
      const auto items = words(Piece{body.text, body.at});
      if (items.empty()) fail(body.at, "empty expectation");
      for (const auto& raw : items)
        for (const auto& item : split(raw, ',')) {
          if (item.text.empty()) continue;
          const auto eq = item.text.rfind('=');
          if (eq == std::string::npos) fail(item.at, "expected <check>=<status>");
          const auto status = parse_status(item.text.substr(eq + 1));
          if (!status) fail(after(item, eq + 1).at, "unknown status '" + item.text.substr(eq + 1) + "'");
          spec.expectations.push_back(
              Expectation{parse_check(Piece{item.text.substr(0, eq), item.at}), *status, item.at});
        }
    } else if (kw == "degree-bound") {
      spec.degree_bound = static_cast<unsigned>(to_uint(body));
    } else if (kw == "power-bound") {
      spec.power_bound = static_cast<unsigned>(to_uint(body));
    } else if (kw == "seed") {
      spec.seed = to_uint(body);
    } else if (kw == "coefficients") {
      const std::string& c = body.text;
      const bool ok = c == "auto" || c == "full" || c == "block-elementary" || call_arg(body, "sampled") ||
                      (c.rfind("explicit[", 0) == 0 && c.back() == ']');
      if (!ok) fail(body.at, "expected auto, full, block-elementary, sampled(<k>) or explicit[..]");
      if (auto k = call_arg(body, "sampled")) to_uint(*k);
      spec.coefficients = c;
    } else {
      fail(st.at, "unknown statement '" + kw + "'");
    }
  }
  if (!spec.ring) throw SpecError(1, 1, "missing ring declaration");
  if (validate) spec.resolved = resolve_spec(spec, element_budget);
  return spec;
}

inline std::string SpecFile::instance_name() const {
  if (name) return *name;
  if (!ring) return "?";
  return ring->expr;
}

inline std::string SpecFile::to_text(bool instance_only) const {
  std::ostringstream out;
  if (name) out << "name " << *name << "\n";
  if (ring) {
    switch (ring->kind) {
      case RingDecl::Kind::Expr:
        out << "ring " << ring->expr << "\n";
        break;
      case RingDecl::Kind::Catalog:
        out << "ring catalog:" << ring->expr << "\n";
        break;
      case RingDecl::Kind::Table:
        out << "ring table " << ring->expr << " zero=" << ring->zero << " one=" << ring->one
            << " add=" << detail::join_ints(ring->add) << " mul=" << detail::join_ints(ring->mul) << "\n";
        break;
    }
  }
  for (const auto& m : maps) {
    out << "map " << m.name << " = ";
    if (m.builtin) {
      out << m.builtin->text << "\n";
    } else {
      out << "[" << detail::join(m.images) << "]\n";
    }
  }
  for (const auto& d : derivations) {
    out << "derivation " << d.name << " = ";
    if (d.kind == "inner") {
      out << "inner(" << d.sigma.text << ", " << d.arg->text << ")\n";
    } else if (d.kind == "images") {
      out << "images(" << d.sigma.text << ") [" << detail::join(d.images) << "]\n";
    } else {
      out << d.kind << "(" << d.sigma.text << ")\n";
    }
  }
  if (family) out << "maps " << detail::join(*family) << "\n";
  if (extension) {
    out << "extension";
    if (!extension->sigma.empty()) out << " sigma=" << detail::join(extension->sigma, ",");
    if (!extension->delta.empty()) out << " delta=" << detail::join(extension->delta, ",");
    out << "\n";
  }
  for (const auto& r : relations) {
    out << "relation " << r.i << " " << r.j;
    if (r.c) out << " c=" << r.c->text;
    if (r.constant) out << " const=" << r.constant->text;
    if (!r.lin.empty()) out << " lin=" << detail::join(r.lin, ",");
    out << "\n";
  }
  for (const auto& p : polys) out << "poly " << p.name << " = " << p.text.text << "\n";
  for (const auto& i : ideals) out << "ideal " << i.name << " = " << i.text.text << "\n";
  if (instance_only) return out.str();
  if (!checks.empty()) {
    out << "checks ";
    for (std::size_t k = 0; k < checks.size(); ++k) out << (k ? ", " : "") << checks[k].key();
    out << "\n";
  }
  for (const auto& e : expectations) out << "expect " << e.check.key() << "=" << skewpbw::to_string(e.status) << "\n";
  if (degree_bound) out << "degree-bound " << *degree_bound << "\n";
  if (power_bound) out << "power-bound " << *power_bound << "\n";
  if (seed) out << "seed " << *seed << "\n";
  if (coefficients) out << "coefficients " << *coefficients << "\n";
  return out.str();
}

namespace detail {

inline RingElement element_at(const FiniteRing& r, const Piece& p, std::uint64_t budget) {
  auto v = r.parse(p.text, budget);
  if (!v) fail(p.at, "'" + p.text + "' is not an element of " + r.name());
  return *v;
}

}  // namespace detail

inline std::shared_ptr<const ResolvedSpec> resolve_spec(const SpecFile& spec, std::uint64_t element_budget) {
  using namespace detail;
  if (!spec.ring) throw SpecError(1, 1, "missing ring declaration");
  const RingDecl& rd = *spec.ring;
  Builtins builtins;
  std::optional<Instance> catalog_instance;
  std::optional<FiniteRing> ring;
  try {
    switch (rd.kind) {
      case RingDecl::Kind::Expr:
        ring = builtins.ring(rd.expr);
        break;
      case RingDecl::Kind::Catalog: {
        auto entry = find_catalog_entry(rd.expr);
        if (!entry) fail(rd.at, "unknown catalog instance '" + rd.expr + "'");
        catalog_instance = entry->build(builtins);
        ring = catalog_instance->ring;
        break;
      }
      case RingDecl::Kind::Table:
        ring = make_table_ring(rd.expr, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rd.add.size()) + 0.5)),
                               rd.add, rd.mul, rd.zero, rd.one);
        break;
    }
  } catch (const SpecError&) {
    throw;
  } catch (const AxiomViolation& e) {
    throw SpecError(rd.at.line, rd.at.column, e.what(), e.witness());
  } catch (const std::exception& e) {
    fail(rd.at, e.what());
  }
  const FiniteRing r = *ring;

  std::map<std::string, RingMap> maps;
  std::map<std::string, SigmaDerivation> derivs;
  auto lookup_map = [&](const Piece& p) -> RingMap {
    if (auto it = maps.find(p.text); it != maps.end()) return it->second;
    try {
      if (auto m = builtins.map(r, p.text)) return *m;
    } catch (const std::exception& e) {
      fail(p.at, e.what());
    }
    fail(p.at, "undefined map '" + p.text + "'");
  };
  for (const auto& m : spec.maps) {
    if (maps.count(m.name)) fail(m.at, "map '" + m.name + "' defined twice");
    try {
      if (m.builtin) {
        maps.emplace(m.name, lookup_map(*m.builtin));
      } else {
        if (m.images.size() != r.size())
          fail(m.at, "map '" + m.name + "' lists " + std::to_string(m.images.size()) + " images, ring has " +
                         std::to_string(r.size()) + " elements");
        auto table = std::make_shared<std::vector<RingElement>>();
        for (const auto& p : m.images) table->push_back(element_at(r, p, element_budget));
        maps.emplace(m.name, verify_endomorphism(
                                 r, [table, r](RingElement a) { return (*table)[r.ordinal(a)]; }, m.name));
      }
    } catch (const MorphismError& e) {
      throw SpecError(m.at.line, m.at.column, "map '" + m.name + "': " + e.what(), e.witness());
    }
  }
  for (const auto& d : spec.derivations) {
    if (derivs.count(d.name)) fail(d.at, "derivation '" + d.name + "' defined twice");
    const RingMap s = lookup_map(d.sigma);
    try {
      if (d.kind == "zero") {
        derivs.emplace(d.name, zero_derivation(s));
      } else if (d.kind == "id-minus") {
        derivs.emplace(d.name, id_minus_derivation(s));
      } else if (d.kind == "inner") {
        derivs.emplace(d.name, inner_derivation(s, element_at(r, *d.arg, element_budget)));
      } else {
        if (d.images.size() != r.size()) fail(d.at, "derivation '" + d.name + "' needs one image per element");
        auto table = std::make_shared<std::vector<RingElement>>();
        for (const auto& p : d.images) table->push_back(element_at(r, p, element_budget));
        derivs.emplace(d.name, verify_sigma_derivation(
                                   r, s, [table, r](RingElement a) { return (*table)[r.ordinal(a)]; }, d.name));
      }
    } catch (const MorphismError& e) {
      throw SpecError(d.at.line, d.at.column, "derivation '" + d.name + "': " + e.what(), e.witness());
    }
  }

  // family: explicit, else the extension's sigma, else the catalog's, else {id}
  std::vector<RingMap> fam;
  if (spec.family) {
    for (const auto& p : *spec.family) fam.push_back(lookup_map(p));
  } else if (spec.extension && !spec.extension->sigma.empty()) {
    for (const auto& p : spec.extension->sigma) fam.push_back(lookup_map(p));
  } else if (catalog_instance) {
    fam = catalog_instance->family.maps();
  } else {
    fam.push_back(RingMap::identity(r));
  }
  SigmaFamily family(fam);

  std::optional<CommutationSystem> system;
  const bool custom = spec.extension || !spec.relations.empty() || spec.family || !catalog_instance;
  const Where ext_at = spec.extension ? spec.extension->at : (spec.relations.empty() ? rd.at : spec.relations.front().at);
  try {
    if (!custom) {
      system = catalog_instance->system;
    } else {
      std::vector<RingMap> sig = fam;
      if (spec.extension && !spec.extension->sigma.empty()) {
        sig.clear();
        for (const auto& p : spec.extension->sigma) sig.push_back(lookup_map(p));
      }
      std::vector<SigmaDerivation> delta;
      for (std::size_t i = 0; i < sig.size(); ++i) {
        if (spec.extension && i < spec.extension->delta.size() && spec.extension->delta[i].text != "zero") {
          const Piece& p = spec.extension->delta[i];
          auto it = derivs.find(p.text);
          if (it == derivs.end()) fail(p.at, "undefined derivation '" + p.text + "'");
          delta.push_back(it->second);
        } else {
          delta.push_back(zero_derivation(sig[i]));
        }
      }
      if (spec.extension && spec.extension->delta.size() > sig.size())
        fail(spec.extension->delta[sig.size()].at, "more derivations than variables");
      std::map<std::pair<std::size_t, std::size_t>, Relation> rels;
      for (const auto& rl : spec.relations) {
        if (rl.j > sig.size()) fail(rl.at, "relation refers to x" + std::to_string(rl.j) + " but n = " + std::to_string(sig.size()));
        Relation rel{r.one(), r.zero(), std::vector<RingElement>(sig.size(), r.zero())};
        if (rl.c) rel.c = element_at(r, *rl.c, element_budget);
        if (rl.constant) rel.constant = element_at(r, *rl.constant, element_budget);
        if (!rl.lin.empty()) {
          if (rl.lin.size() != sig.size()) fail(rl.at, "lin= needs " + std::to_string(sig.size()) + " entries");
          for (std::size_t k = 0; k < rl.lin.size(); ++k) rel.lin[k] = element_at(r, rl.lin[k], element_budget);
        }
        if (!rels.emplace(std::pair{rl.i - 1, rl.j - 1}, rel).second) fail(rl.at, "relation given twice");
      }
      const std::string name = spec.instance_name();
      system = CommutationSystem::make(name, SigmaFamily(sig), delta, rels);
    }
  } catch (const SpecError&) {
    throw;
  } catch (const AxiomViolation& e) {
    throw SpecError(ext_at.line, ext_at.column, e.what(), e.witness());
  }

  PbwReport pbw;
  try {
    pbw = verify_pbw_axioms(*system);
  } catch (const AxiomViolation& e) {
    throw SpecError(ext_at.line, ext_at.column, e.what(), e.witness());
  }

  auto out = std::make_shared<ResolvedSpec>(
      ResolvedSpec{spec.instance_name(), r, family, *system, pbw, std::move(maps), std::move(derivs), {}, {}});
  for (const auto& p : spec.polys) {
    if (out->polys.count(p.name)) fail(p.at, "poly '" + p.name + "' defined twice");
    try {
      out->polys.emplace(p.name, parse_poly(*system, p.text.text));
    } catch (const PolySyntaxError& e) {
      fail(Where{p.text.at.line, p.text.at.column + static_cast<int>(e.offset())}, e.what());
    }
  }
  for (const auto& i : spec.ideals) {
    if (out->ideals.count(i.name)) fail(i.at, "ideal '" + i.name + "' defined twice");
    const auto gen = element_at(r, *call_arg(i.text, "principal"), element_budget);
    auto ideal = principal_right_ideal(r, gen, element_budget);
    if (!ideal.is_ideal()) fail(i.text.at, "principal(" + r.format(gen) + ") is not a two-sided ideal");
    out->ideals.emplace(i.name, std::move(ideal));
  }
  auto check_refs = [&](const CheckDecl& c) {
    if (c.name == "in_nil_ra" && !out->polys.count(c.arg)) fail(c.at, "undefined poly '" + c.arg + "'");
    if (c.name == "weak_sigma_rigid_ideal" && !out->ideals.count(c.arg)) fail(c.at, "undefined ideal '" + c.arg + "'");
  };
  for (const auto& c : spec.checks) check_refs(c);
  for (const auto& e : spec.expectations) check_refs(e.check);
  if (spec.coefficients && spec.coefficients->rfind("explicit[", 0) == 0) {
    for (const auto& p : bracket_list(Piece{spec.coefficients->substr(8), rd.at})) element_at(r, p, element_budget);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Running checks

struct RunOptions {
  std::optional<unsigned> degree_bound;  // override the spec file
  std::optional<unsigned> power_bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> candidate_cap;
  std::uint64_t element_budget = kDefaultElementBudget;
  unsigned jobs = 1;
};

struct RunResult {
  std::vector<ReportRecord> records;
  int exit_code = 0;  // 0 expectations met, 1 mismatch or check error
};

inline SearchBudget search_budget(const SpecFile& spec, const ResolvedSpec& rs, const RunOptions& opts) {
  SearchBudget b;
  b.degree_bound = opts.degree_bound.value_or(spec.degree_bound.value_or(3));
  b.power_bound = opts.power_bound.value_or(spec.power_bound.value_or(4));
  b.seed = opts.seed.value_or(spec.seed.value_or(b.seed));
  if (opts.candidate_cap) b.candidate_cap = *opts.candidate_cap;
  b.jobs = opts.jobs;
  b.element_budget = opts.element_budget;
  if (spec.coefficients) {
    const std::string& c = *spec.coefficients;
    if (c == "full") {
      b.coefficients = CoefficientMode::Full;
    } else if (c == "block-elementary") {
      b.coefficients = CoefficientMode::BlockElementary;
    } else if (c.rfind("sampled(", 0) == 0) {
      b.coefficients = CoefficientMode::Sampled;
      b.sample_size = std::stoull(c.substr(8, c.size() - 9));
    } else if (c.rfind("explicit[", 0) == 0) {
      b.coefficients = CoefficientMode::Explicit;
      for (const auto& p : detail::bracket_list(Piece{c.substr(8), {}}))
        b.explicit_coefficients.push_back(*rs.ring.parse(p.text, opts.element_budget));
    }
  }
  return b;
}

namespace detail {

inline PropertyVerdict element_verdict(bool holds, std::vector<RingElement> elems, std::string description) {
  PropertyVerdict v;
  if (!holds) {
    v.status = PropertyVerdict::Status::Fails;
    v.witness = ElementWitness{std::move(elems), std::nullopt, std::move(description)};
  }
  return v;
}

}  // namespace detail

/// Runs one check on a resolved instance.
inline PropertyVerdict run_check(const CheckDecl& c, const SpecFile& spec, const ResolvedSpec& rs, const RunOptions& opts) {
  const FiniteRing& r = rs.ring;
  const auto budget = opts.element_budget;
  if (c.name == "reduced") {
    auto a = find_nonzero_nilpotent(r, budget, opts.jobs);
    return detail::element_verdict(!a, a ? std::vector{*a} : std::vector<RingElement>{}, "nonzero nilpotent");
  }
  if (c.name == "ni") {
    auto v = find_ni_violation(r, budget);
    return detail::element_verdict(!v, v ? std::vector{v->a, v->b} : std::vector<RingElement>{},
                                   v ? "nil(R) not closed under " + v->law : "");
  }
  if (c.name == "abelian") {
    auto v = find_noncentral_idempotent(r, budget);
    return detail::element_verdict(!v, v ? std::vector{v->first, v->second} : std::vector<RingElement>{},
                                   "idempotent e and x with ex != xe");
  }
  if (c.name == "sigma_rigid") return is_sigma_rigid(r, rs.family, opts.jobs, budget);
  if (c.name == "weak_sigma_rigid") return is_weak_sigma_rigid(r, rs.family, opts.jobs, budget);
  if (c.name == "weak_sigma_rigid_ideal") return is_weak_sigma_rigid_ideal(r, rs.family, rs.ideals.at(c.arg), opts.jobs, budget);
  if (c.name == "pbw_axioms") return PropertyVerdict{};  // verified while resolving
  if (c.name == "in_nil_ra") {
    const auto& f = rs.polys.at(c.arg);
    std::vector<RingElement> bad;
    for (const auto& [alpha, a] : f.terms())
      if (!is_nilpotent(r, a)) {
        bad.push_back(a);
        break;
      }
    return detail::element_verdict(bad.empty(), bad, "coefficient outside nil(R)");
  }
  const SearchBudget sb = search_budget(spec, rs, opts);
  if (c.name == "weak_sigma_skew_armendariz") return is_weak_sigma_skew_armendariz(rs.system, sb);
  if (c.name == "sigma_skew_armendariz") return is_sigma_skew_armendariz(rs.system, sb);
  if (c.name == "skew_armendariz") return is_skew_armendariz(rs.system, sb);
  if (c.name == "sigma_delta_skew_armendariz") return is_sigma_delta_skew_armendariz(rs.system, sb);
  if (c.name == "skew_pi_armendariz") return is_skew_pi_armendariz(rs.system, sb);
  if (c.name == "weak_armendariz") return is_weak_armendariz_commutative(r, sb);
  throw std::logic_error("unhandled check " + c.name);
}

/// Runs the listed checks, then any expected check not listed, in file order.
inline RunResult run_spec(const SpecFile& spec, const RunOptions& opts = {}) {
  using clock = std::chrono::steady_clock;
  auto rs = spec.resolved ? spec.resolved : resolve_spec(spec, opts.element_budget);
  std::vector<CheckDecl> todo = spec.checks;
  for (const auto& e : spec.expectations) {
    const bool listed = std::any_of(todo.begin(), todo.end(), [&](const CheckDecl& c) { return c.key() == e.check.key(); });
    if (!listed) todo.push_back(e.check);
  }
  const std::string instance_spec = spec.to_text(true);
  RunResult out;
  for (const auto& c : todo) {
    const auto t0 = clock::now();
    ReportRecord rec;
    try {
      const auto v = run_check(c, spec, *rs, opts);
      rec = verdict_record(c.key(), rs->name, rs->ring, v, c.name, instance_spec);
    } catch (const std::exception& e) {
      rec = ReportRecord{c.key(), rs->name, "error", e.what(), Json(), Json(), std::nullopt};
      out.exit_code = 1;
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    for (const auto& e : spec.expectations)
      if (e.check.key() == c.key() && rec.status != to_string(e.status)) {
        rec.note += std::string(rec.note.empty() ? "" : "; ") + "expected " + to_string(e.status);
        out.exit_code = 1;
      }
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace skewpbw
