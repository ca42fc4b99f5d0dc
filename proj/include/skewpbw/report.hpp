#pragma once

// Report records: one per (check, instance), serialized as one JSON object
// per line with a fixed field order.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewpbw/property_lab.hpp"
#include "skewpbw/theorem_suite.hpp"

namespace skewpbw {

using Json = nlohmann::ordered_json;

struct ReportRecord {
  std::string check;
  std::string instance;
  std::string status;
  std::string note;
  Json witness;  // null when absent
  Json bound;    // null when absent
  std::optional<double> wall_ms;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

inline Json to_json(const ReportRecord& r, bool with_timing = true) {
  Json j;
  j["check"] = r.check;
  j["instance"] = r.instance;
  j["status"] = r.status;
  j["note"] = r.note;
  j["witness"] = r.witness;
  j["bound"] = r.bound;
  if (with_timing && r.wall_ms) j["wall_ms"] = *r.wall_ms;
  return j;
}

inline ReportRecord record_from_json(const Json& j) {
  ReportRecord r;
  r.check = j.at("check").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.note = j.value("note", "");
  r.witness = j.contains("witness") ? j.at("witness") : Json();
  r.bound = j.contains("bound") ? j.at("bound") : Json();
  if (j.contains("wall_ms") && j.at("wall_ms").is_number()) r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

inline Json exponent_json(const ExponentVector& e) { return Json(e.values()); }

inline Json to_json(const BoundDescriptor& b) {
  Json j;
  j["degree"] = b.degree;
  j["power_bound"] = b.power_bound ? Json(*b.power_bound) : Json();
  j["coefficients"] = b.coefficients;
  j["coefficient_count"] = b.coefficient_count;
  j["pairs"] = b.pairs;
  j["seed"] = b.seed;
  return j;
}

inline Json to_json(const FiniteRing& r, const ElementWitness& w) {
  Json j;
  j["kind"] = "elements";
  Json elems = Json::array();
  for (auto e : w.elements) elems.push_back(r.format(e));
  j["elements"] = elems;
  j["theta"] = w.theta ? exponent_json(*w.theta) : Json();
  j["description"] = w.description;
  return j;
}

inline Json to_json(const PolyWitness& w) {
  const FiniteRing& r = w.f.ring();
  Json j;
  j["kind"] = "polynomials";
  j["f"] = w.f.to_string();
  j["g"] = w.g.to_string();
  j["i"] = w.i;
  j["j"] = w.j;
  j["alpha"] = exponent_json(w.alpha);
  j["beta"] = exponent_json(w.beta);
  j["a"] = r.format(w.a);
  j["b"] = r.format(w.b);
  j["product"] = w.product.to_string();
  j["value"] = w.value ? Json(r.format(*w.value)) : Json();
  j["term_product"] = w.term_product ? Json(w.term_product->to_string()) : Json();
  j["nil_power"] = w.nil_power ? Json(*w.nil_power) : Json();
  j["description"] = w.description;
  return j;
}

/// Witness object of a verdict; `property` names the decider and
/// `instance_spec` lets `explain` rebuild the instance.
inline Json witness_json(const FiniteRing& r, const PropertyVerdict& v, const std::string& property,
                         const std::string& instance_spec) {
  if (!v.witness) return Json();
  Json j = std::holds_alternative<ElementWitness>(*v.witness) ? to_json(r, std::get<ElementWitness>(*v.witness))
                                                              : to_json(std::get<PolyWitness>(*v.witness));
  j["property"] = property;
  j["instance_spec"] = instance_spec;
  return j;
}

inline ReportRecord verdict_record(const std::string& check, const std::string& instance, const FiniteRing& r,
                                   const PropertyVerdict& v, const std::string& property,
                                   const std::string& instance_spec) {
  ReportRecord rec{check, instance, to_string(v.status), "", witness_json(r, v, property, instance_spec),
                   v.bound ? to_json(*v.bound) : Json(), std::nullopt};
  return rec;
}

/// Property decided by the verdict attached to a theorem report.
inline std::string theorem_property(const std::string& theorem) {
  if (theorem == theorem::kRigidIff || theorem == theorem::kCounterexampleR3) return "sigma_rigid";
  if (theorem == theorem::kWeakArmendariz || theorem == theorem::kCounterexampleS) return "weak_sigma_skew_armendariz";
  return "";
}

inline ReportRecord theorem_record(const TheoremReport& t) {
  const FiniteRing* ring = t.ring ? &*t.ring : nullptr;
  ReportRecord rec{t.theorem, t.instance, to_string(t.status), t.note, Json(), Json(), t.wall_ms};
  Json w;
  if (!t.details.empty()) {
    Json d;
    for (const auto& [k, v] : t.details) d[k] = v;
    w["details"] = d;
  }
  if (t.verdict && ring != nullptr) {
    if (t.verdict->witness) {
      Json vw = witness_json(*ring, *t.verdict, theorem_property(t.theorem), "ring catalog:" + t.instance);
      for (auto it = vw.begin(); it != vw.end(); ++it) w[it.key()] = it.value();
    }
    if (t.verdict->bound) rec.bound = to_json(*t.verdict->bound);
  }
  if (!w.is_null()) rec.witness = w;
  return rec;
}

/// Human-readable single line.
inline std::string to_text(const ReportRecord& r) {
  std::string out = r.check + " [" + r.instance + "]: " + r.status;
  if (!r.note.empty()) out += " (" + r.note + ")";
  if (r.witness.is_object()) {
    if (r.witness.contains("kind") && r.witness["kind"] == "elements") {
      out += "; witness";
      for (const auto& e : r.witness["elements"]) out += " " + e.get<std::string>();
      if (!r.witness["theta"].is_null()) out += " theta=" + r.witness["theta"].dump();
    } else if (r.witness.contains("kind") && r.witness["kind"] == "polynomials") {
      out += "; f = " + r.witness["f"].get<std::string>() + ", g = " + r.witness["g"].get<std::string>();
    }
  }
  if (r.bound.is_object()) {
    out += "; bound D=" + std::to_string(r.bound["degree"].get<unsigned>()) + " over " +
           r.bound["coefficients"].get<std::string>();
    if (!r.bound["power_bound"].is_null()) out += " K=" + std::to_string(r.bound["power_bound"].get<unsigned>());
  }
  return out;
}

}  // namespace skewpbw
