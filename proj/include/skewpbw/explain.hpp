#pragma once

// Independent re-check of a stored witness. The instance is rebuilt from
// the witness's instance_spec text and every claimed fact is recomputed.

#include <string>
#include <vector>

#include "skewpbw/report.hpp"
#include "skewpbw/spec_file.hpp"

namespace skewpbw {

struct Explanation {
  bool confirmed = false;
  std::string property;
  std::vector<std::string> lines;  // one fact per line
};

namespace detail {

inline ExponentVector exponent_from_json(const Json& j) { return ExponentVector(j.get<std::vector<std::uint32_t>>()); }

class Explainer {
 public:
  Explainer(const ResolvedSpec& rs, std::uint64_t budget) : rs_(rs), r_(rs.ring), budget_(budget) {}

  Explanation run(const Json& w) {
    out_.property = w.value("property", "");
    const std::string kind = w.value("kind", "");
    if (kind == "elements") {
      elements(w);
    } else if (kind == "polynomials") {
      polynomials(w);
    } else {
      throw std::invalid_argument("witness has no 'kind' of elements or polynomials");
    }
    return out_;
  }

 private:
  RingElement element(const Json& text) const {
    auto v = r_.parse(text.get<std::string>(), budget_);
    if (!v) throw std::invalid_argument("'" + text.get<std::string>() + "' is not an element of " + r_.name());
    return *v;
  }

  bool fact(bool ok, const std::string& text) {
    out_.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + text);
    return ok;
  }

  bool nil(RingElement a) const { return is_nilpotent(r_, a); }

  void elements(const Json& w) {
    std::vector<RingElement> e;
    for (const auto& x : w.at("elements")) e.push_back(element(x));
    if (e.empty()) throw std::invalid_argument("witness lists no elements");
    const std::string& p = out_.property;
    const RingElement a = e[0];
    bool ok = true;
    if (p == "sigma_rigid" || p == "weak_sigma_rigid" || p == "weak_sigma_rigid_ideal") {
      const auto theta = exponent_from_json(w.at("theta"));
      const RingElement s = sigma_power(rs_.family, theta)(a);
      const RingElement prod = r_.mul(a, s);
      out_.lines.push_back("a = " + r_.format(a) + ", sigma^theta(a) = " + r_.format(s) + ", a*sigma^theta(a) = " +
                           r_.format(prod));
      if (p == "sigma_rigid") {
        ok = fact(!r_.is_zero(a), "a != 0") & fact(r_.is_zero(prod), "a*sigma^theta(a) = 0");
      } else {
        const bool np = nil(prod);
        const bool na = nil(a);
        out_.lines.push_back(std::string("a*sigma^theta(a) ") + (np ? "is" : "is not") + " nilpotent, a " +
                             (na ? "is" : "is not") + " nilpotent");
        ok = fact(np != na, "nilpotency of a*sigma^theta(a) and of a differ");
      }
    } else if (p == "reduced") {
      ok = fact(!r_.is_zero(a), "a != 0") & fact(nil(a), "a is nilpotent");
    } else if (p == "ni") {
      if (e.size() < 2) throw std::invalid_argument("ni witness needs two elements");
      const RingElement b = e[1];
      const bool sum = nil(b) && !nil(r_.add(a, b));
      const bool product = !nil(r_.mul(a, b)) || !nil(r_.mul(b, a));
      ok = fact(nil(a), "a is nilpotent") &
           fact(sum || product || !nil(r_.neg(a)), "a+b (b nilpotent), -a, ab or ba is not nilpotent");
    } else if (p == "abelian") {
      if (e.size() < 2) throw std::invalid_argument("abelian witness needs two elements");
      const RingElement x = e[1];
      ok = fact(r_.mul(a, a) == a, "e is idempotent") & fact(r_.mul(a, x) != r_.mul(x, a), "e*x != x*e");
    } else if (p == "in_nil_ra") {
      ok = fact(!nil(a), "coefficient " + r_.format(a) + " is not nilpotent");
    } else {
      throw std::invalid_argument("no re-check for property '" + p + "'");
    }
    out_.confirmed = ok;
  }

  void polynomials(const Json& w) {
    const std::string& p = out_.property;
    const CommutationSystem sys = p == "weak_armendariz" ? untwisted(r_) : rs_.system;
    const SkewPoly f = parse_poly(sys, w.at("f").get<std::string>());
    const SkewPoly g = parse_poly(sys, w.at("g").get<std::string>());
    const SkewPoly h = mul(f, g);
    out_.lines.push_back("f = " + f.to_string());
    out_.lines.push_back("g = " + g.to_string());
    out_.lines.push_back("fg = " + h.to_string());
    bool ok = true;
    if (p == "skew_pi_armendariz") {
      const unsigned k = w.at("nil_power").get<unsigned>();
      SkewPoly q = h;
      for (unsigned t = 1; t < k; ++t) q = mul(q, h);
      ok = fact(q.is_zero(), "(fg)^" + std::to_string(k) + " = 0");
    } else {
      ok = fact(h.is_zero(), "fg = 0");
    }
    const auto alpha = exponent_from_json(w.at("alpha"));
    const auto beta = exponent_from_json(w.at("beta"));
    const RingElement a = f.coefficient(alpha);
    const RingElement b = g.coefficient(beta);
    out_.lines.push_back("a = coefficient of " + alpha.monomial_string() + " in f = " + r_.format(a));
    out_.lines.push_back("b = coefficient of " + beta.monomial_string() + " in g = " + r_.format(b));
    if (p == "weak_sigma_skew_armendariz" || p == "sigma_skew_armendariz") {
      const RingElement v = r_.mul(a, apply_sigma_power(sys.sigma(), alpha, b));
      out_.lines.push_back("a*sigma^alpha(b) = " + r_.format(v));
      if (p == "sigma_skew_armendariz") {
        ok = fact(!r_.is_zero(v), "a*sigma^alpha(b) != 0") && ok;
      } else {
        bool never = true;
        RingElement pw = v;
        for (std::uint64_t k = 1; k <= r_.size() && never; ++k, pw = r_.mul(pw, v)) never = !r_.is_zero(pw);
        ok = fact(never, "(a*sigma^alpha(b))^k != 0 for k = 1..|R|") && ok;
      }
    } else if (p == "skew_armendariz") {
      ok = fact(alpha.degree() == 0, "a is the constant term of f") & fact(!r_.is_zero(r_.mul(a, b)), "a*b != 0") && ok;
    } else if (p == "sigma_delta_skew_armendariz") {
      const SkewPoly t = mul(SkewPoly::monomial(sys, alpha, a), SkewPoly::monomial(sys, beta, b));
      out_.lines.push_back("a*x^alpha*b*x^beta = " + t.to_string());
      ok = fact(!t.is_zero(), "a*x^alpha*b*x^beta != 0") && ok;
    } else if (p == "skew_pi_armendariz" || p == "weak_armendariz") {
      ok = fact(!nil(r_.mul(a, b)), "a*b = " + r_.format(r_.mul(a, b)) + " is not nilpotent") && ok;
    } else {
      throw std::invalid_argument("no re-check for property '" + p + "'");
    }
    out_.confirmed = ok;
  }

  const ResolvedSpec& rs_;
  const FiniteRing& r_;
  std::uint64_t budget_;
  Explanation out_;
};

}  // namespace detail

/// Accepts a report record (its "witness" field is used) or a bare witness.
inline Explanation explain_witness(const Json& input, std::uint64_t element_budget = kDefaultElementBudget) {
  const Json& w = input.contains("witness") && input.at("witness").is_object() ? input.at("witness") : input;
  if (!w.is_object() || !w.contains("instance_spec")) throw std::invalid_argument("input carries no witness with an instance_spec");
  const SpecFile spec = parse_spec(w.at("instance_spec").get<std::string>(), true, element_budget);
  return detail::Explainer(*spec.resolved, element_budget).run(w);
}

}  // namespace skewpbw
