#pragma once

#include <nlohmann/json.hpp>

#include <optional>

#include "x0n/autgroup.hpp"
#include "x0n/classifier.hpp"
#include "x0n/degrees.hpp"
#include "x0n/gamma0.hpp"

namespace x0n::io {

using json = nlohmann::json;

namespace detail {
template <class T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}
template <class T>
std::optional<T> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}
}  // namespace detail

inline json to_json(const gamma0::Gamma0Profile& p) {
  json orbits = json::array();
  for (const auto& o : p.cusp_orbits) orbits.push_back({{"denominator", o.denominator}, {"degree", o.degree}});
  return {{"level", p.level}, {"index", p.index}, {"nu2", p.nu2}, {"nu3", p.nu3}, {"genus", p.genus},
          {"cusp_orbits", orbits}};
}

inline gamma0::Gamma0Profile profile_from_json(const json& j) {
  gamma0::Gamma0Profile p;
  p.level = j.at("level").get<i64>();
  p.index = j.at("index").get<i64>();
  p.nu2 = j.at("nu2").get<i64>();
  p.nu3 = j.at("nu3").get<i64>();
  p.genus = j.at("genus").get<i64>();
  for (const auto& o : j.at("cusp_orbits"))
    p.cusp_orbits.push_back({o.at("denominator").get<i64>(), o.at("degree").get<i64>()});
  return p;
}

inline json to_json(const autgroup::AutGroupReport& r) {
  json invs = json::array();
  for (const auto& i : r.involutions) invs.push_back({{"label", i.label}, {"quotient_genus", i.quotient_genus}});
  return {{"level", r.level},
          {"group_order", r.group_order},
          {"involutions", invs},
          {"min_quotient_genus", detail::optional_to_json(r.min_quotient_genus)}};
}

/// Restores the serialized fields; homology matrices are not serialized.
inline autgroup::AutGroupReport aut_report_from_json(const json& j) {
  autgroup::AutGroupReport r;
  r.level = j.at("level").get<i64>();
  r.group_order = j.at("group_order").get<std::size_t>();
  for (const auto& i : j.at("involutions")) {
    const auto g = i.at("quotient_genus").get<std::size_t>();
    r.involutions.push_back({i.at("label").get<std::string>(), 2 * g, g});
  }
  r.min_quotient_genus = detail::optional_from_json<std::size_t>(j.at("min_quotient_genus"));
  return r;
}

inline json to_json(const classifier::Verdict& v) {
  json trace = json::array();
  for (const auto& s : v.trace) trace.push_back({{"rule", s.rule}, {"inputs", s.inputs}, {"citation", s.citation}});
  return {{"level", v.level},
          {"d_cm", detail::optional_to_json(v.d_cm)},
          {"delta_lower", detail::optional_to_json(v.delta_lower)},
          {"delta_upper", detail::optional_to_json(v.delta_upper)},
          {"sporadic_cm", v.sporadic_cm},
          {"sporadic_any", v.sporadic_any},
          {"trace", trace}};
}

inline classifier::Verdict verdict_from_json(const json& j) {
  classifier::Verdict v;
  v.level = j.at("level").get<i64>();
  v.d_cm = detail::optional_from_json<i64>(j.at("d_cm"));
  v.delta_lower = detail::optional_from_json<i64>(j.at("delta_lower"));
  v.delta_upper = detail::optional_from_json<i64>(j.at("delta_upper"));
  v.sporadic_cm = j.at("sporadic_cm").get<bool>();
  v.sporadic_any = j.at("sporadic_any").get<bool>();
  for (const auto& s : j.at("trace"))
    v.trace.push_back({s.at("rule").get<std::string>(), s.at("inputs"), s.at("citation").get<std::string>()});
  return v;
}

inline json to_json(const degrees::EllipticCurveRecord& r) {
  return {{"label", r.label}, {"conductor", r.conductor}, {"rank", r.rank}, {"modular_degree", r.modular_degree}};
}

inline json to_json(const degrees::DegreeMapEvidence& ev) {
  json recs = json::array(), forms = json::array();
  for (const auto& r : ev.records) recs.push_back(to_json(r));
  for (const auto& f : ev.forms) forms.push_back({{"curve_label", f.curve_label}, {"form", f.form}, {"admits", f.admits}});
  return {{"level", ev.level}, {"degree", ev.degree}, {"possible", ev.possible},
          {"curves", recs},    {"forms", forms},      {"reason", ev.reason}};
}

/// Membership table for one theorem: "1.1" compares S_CM, "1.2" the levels
/// without any sporadic point.
inline json to_json(const classifier::TheoremReport& rep, const std::string& theorem) {
  const bool cm = theorem == "1.1";
  const auto& computed = cm ? rep.computed_s_cm : rep.computed_no_sporadic;
  const auto& reference = cm ? rep.reference_s_cm : rep.reference_no_sporadic;
  const auto& mismatch = cm ? rep.s_cm_mismatch : rep.no_sporadic_mismatch;
  json levels = json::array();
  for (const auto& v : rep.verdicts)
    levels.push_back({{"level", v.level},
                      {"in_scope", rep.scope.count(v.level) != 0},
                      {"sporadic", cm ? v.sporadic_cm : v.sporadic_any},
                      {"in_set", computed.count(v.level) != 0}});
  return {{"theorem", theorem},
          {"agree", mismatch.empty()},
          {"computed", json(std::vector<i64>(computed.begin(), computed.end()))},
          {"reference", json(std::vector<i64>(reference.begin(), reference.end()))},
          {"mismatch", json(mismatch)},
          {"levels", levels}};
}

}  // namespace x0n::io
