#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/quadform.hpp"

namespace x0n::degrees {

struct EllipticCurveRecord {
  std::string label;
  i64 conductor = 0;
  i64 rank = 0;
  i64 modular_degree = 0;

  void validate() const {
    if (label.empty()) throw Error("invalid-fixture", "curve without label");
    if (conductor < 11) throw Error("invalid-fixture", label + ": conductor below 11");
    if (rank < 0) throw Error("invalid-fixture", label + ": negative rank");
    if (modular_degree < 1) throw Error("invalid-fixture", label + ": modular degree below 1");
  }

  friend bool operator==(const EllipticCurveRecord&, const EllipticCurveRecord&) = default;
};

enum class FactKind {
  GonQExact,          // gon_Q X0(N) = value
  GonQLower,          // gon_Q X0(N) >= value
  GonCLower,          // gon_C X0(N) >= value
  DeltaLower,         // delta(X0(N)) >= value
  DCM,                // least degree of a CM point = value
  NoLowDegreePoints,  // no non-cuspidal points of degree 1..value
  NoSporadicCM,       // value 1
  NoSporadicNonCM,    // value 1
  SporadicNonCM,      // a non-CM sporadic point of degree value exists
};

inline constexpr std::array<std::pair<FactKind, std::string_view>, 9> kFactKindNames{{
    {FactKind::GonQExact, "gonQ_exact"},
    {FactKind::GonQLower, "gonQ_lower"},
    {FactKind::GonCLower, "gonC_lower"},
    {FactKind::DeltaLower, "delta_lower"},
    {FactKind::DCM, "d_CM"},
    {FactKind::NoLowDegreePoints, "no_low_degree_points"},
    {FactKind::NoSporadicCM, "no_sporadic_cm"},
    {FactKind::NoSporadicNonCM, "no_sporadic_noncm"},
    {FactKind::SporadicNonCM, "sporadic_noncm"},
}};

inline std::string to_string(FactKind k) {
  for (auto [kind, name] : kFactKindNames)
    if (kind == k) return std::string(name);
  return "?";
}

inline FactKind parse_fact_kind(std::string_view s) {
  for (auto [kind, name] : kFactKindNames)
    if (name == s) return kind;
  throw Error("invalid-fixture", "unknown fact kind '" + std::string(s) + "'");
}

struct Fact {
  FactKind kind{};
  i64 level = 0;
  i64 value = 0;
  std::string source;

  std::string key() const { return to_string(kind) + "(" + std::to_string(level) + ")"; }
  friend bool operator==(const Fact&, const Fact&) = default;
};

/// A tabulated degree form: its values are the possible degrees of X0(level) -> curve.
struct TableForm {
  i64 level = 0;
  std::string curve_label;
  QuadraticForm form;
};

/// Records a completed search of positive-rank curves with conductor | level
/// and modular degree <= max_degree; the curve list is complete for it.
struct SearchRecord {
  i64 level = 0;
  i64 max_degree = 0;
  std::string source;
};

class KnowledgeBase {
 public:
  void add_fact(Fact f) {
    if (f.level < 1 || f.value < 1) throw Error("invalid-fixture", f.key() + ": level and value must be positive");
    if (f.source.empty()) throw Error("invalid-fixture", f.key() + ": missing source");
    if (auto old = fact(f.kind, f.level)) {
      if (old->value == f.value) return;
      contradiction(f, *old);
    }
    auto value_of = [&](FactKind k) -> std::optional<i64> {
      auto x = fact(k, f.level);
      return x ? std::optional<i64>(x->value) : std::nullopt;
    };
    auto reject_if = [&](bool bad, FactKind other) {
      if (bad) contradiction(f, *fact(other, f.level));
    };
    // gon_C <= gon_Q, delta <= gon_Q, gon_Q lower <= gon_Q exact.
    const auto gq = value_of(FactKind::GonQExact);
    switch (f.kind) {
      case FactKind::GonQExact:
        for (FactKind k : {FactKind::GonCLower, FactKind::GonQLower, FactKind::DeltaLower})
          if (auto lo = value_of(k)) reject_if(*lo > f.value, k);
        break;
      case FactKind::GonCLower:
      case FactKind::GonQLower:
      case FactKind::DeltaLower:
        if (gq) reject_if(f.value > *gq, FactKind::GonQExact);
        break;
      case FactKind::NoSporadicNonCM:
        if (value_of(FactKind::SporadicNonCM)) reject_if(true, FactKind::SporadicNonCM);
        break;
      case FactKind::SporadicNonCM:
        if (value_of(FactKind::NoSporadicNonCM)) reject_if(true, FactKind::NoSporadicNonCM);
        if (auto nl = value_of(FactKind::NoLowDegreePoints)) reject_if(*nl >= f.value, FactKind::NoLowDegreePoints);
        break;
      case FactKind::NoLowDegreePoints:
        if (auto sp = value_of(FactKind::SporadicNonCM)) reject_if(f.value >= *sp, FactKind::SporadicNonCM);
        break;
      default:
        break;
    }
    facts_[{f.kind, f.level}] = std::move(f);
  }

  bool remove_fact(FactKind kind, i64 level) { return facts_.erase({kind, level}) != 0; }

  std::optional<Fact> fact(FactKind kind, i64 level) const {
    auto it = facts_.find({kind, level});
    if (it == facts_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Fact> facts() const {
    std::vector<Fact> out;
    for (const auto& [k, f] : facts_) out.push_back(f);
    return out;
  }

  /// Levels carrying a fact of the given kind, ascending.
  std::vector<i64> levels_with(FactKind kind) const {
    std::vector<i64> out;
    for (const auto& [k, f] : facts_)
      if (k.first == kind) out.push_back(k.second);
    return out;
  }

  void add_curve(EllipticCurveRecord c) {
    c.validate();
    for (const auto& old : curves_)
      if (old.label == c.label) {
        if (old == c) return;
        throw Error("contradictory-fact", "curve " + c.label + " recorded twice with different data");
      }
    curves_.push_back(std::move(c));
  }

  void add_form(TableForm t) {
    t.form.require_positive_definite();
    forms_.push_back(std::move(t));
  }

  void add_search(SearchRecord s) {
    if (s.level < 1 || s.max_degree < 1) throw Error("invalid-fixture", "search record needs positive level and degree");
    searches_.push_back(std::move(s));
  }

  const std::vector<EllipticCurveRecord>& curves() const { return curves_; }
  const std::vector<TableForm>& forms() const { return forms_; }
  const std::vector<SearchRecord>& searches() const { return searches_; }

  std::vector<const TableForm*> forms_for(i64 level, const std::string& label) const {
    std::vector<const TableForm*> out;
    for (const auto& t : forms_)
      if (t.level == level && t.curve_label == label) out.push_back(&t);
    return out;
  }

  /// Widest search on file for the level, if any.
  std::optional<SearchRecord> search_for(i64 level) const {
    std::optional<SearchRecord> best;
    for (const auto& s : searches_)
      if (s.level == level && (!best || s.max_degree > best->max_degree)) best = s;
    return best;
  }

  std::string provenance;

  static KnowledgeBase from_json(const nlohmann::json& j) {
    KnowledgeBase kb;
    try {
      kb.provenance = j.value("provenance", std::string{});
      for (const auto& c : j.value("curves", nlohmann::json::array()))
        kb.add_curve({c.at("label").get<std::string>(), c.at("conductor").get<i64>(), c.at("rank").get<i64>(),
                      c.at("modular_degree").get<i64>()});
      for (const auto& f : j.value("forms", nlohmann::json::array())) {
        std::map<QuadraticForm::Monomial, i64> coeffs;
        for (const auto& t : f.at("coeffs")) {
          if (t.size() != 3) throw Error("invalid-fixture", "coefficient entries are [i, j, c]");
          coeffs[{t[0].get<int>(), t[1].get<int>()}] += t[2].get<i64>();
        }
        kb.add_form({f.at("level").get<i64>(), f.at("curve_label").get<std::string>(),
                     QuadraticForm(f.at("nvars").get<int>(), coeffs, f.at("scale").get<i64>())});
      }
      for (const auto& f : j.value("facts", nlohmann::json::array()))
        kb.add_fact({parse_fact_kind(f.at("kind").get<std::string>()), f.at("level").get<i64>(),
                     f.at("value").get<i64>(), f.at("source").get<std::string>()});
      for (const auto& s : j.value("searches", nlohmann::json::array()))
        kb.add_search({s.at("level").get<i64>(), s.at("max_degree").get<i64>(), s.value("source", std::string{})});
    } catch (const nlohmann::json::exception& e) {
      throw Error("invalid-fixture", e.what());
    }
    return kb;
  }

  static KnowledgeBase load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("fixture-missing", "cannot open fixture file " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error("invalid-fixture", path + ": " + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (!provenance.empty()) j["provenance"] = provenance;
    j["curves"] = nlohmann::json::array();
    for (const auto& c : curves_)
      j["curves"].push_back(
          {{"label", c.label}, {"conductor", c.conductor}, {"rank", c.rank}, {"modular_degree", c.modular_degree}});
    j["forms"] = nlohmann::json::array();
    for (const auto& t : forms_) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (auto [m, c] : t.form.coefficients()) coeffs.push_back({m.first, m.second, c});
      j["forms"].push_back({{"level", t.level},
                            {"curve_label", t.curve_label},
                            {"scale", t.form.scale()},
                            {"nvars", t.form.nvars()},
                            {"coeffs", coeffs}});
    }
    j["facts"] = nlohmann::json::array();
    for (const auto& [k, f] : facts_)
      j["facts"].push_back({{"kind", to_string(f.kind)}, {"level", f.level}, {"value", f.value}, {"source", f.source}});
    j["searches"] = nlohmann::json::array();
    for (const auto& s : searches_)
      j["searches"].push_back({{"level", s.level}, {"max_degree", s.max_degree}, {"source", s.source}});
    return j;
  }

 private:
  [[noreturn]] static void contradiction(const Fact& incoming, const Fact& existing) {
    throw Error("contradictory-fact", incoming.key() + " = " + std::to_string(incoming.value) + " conflicts with " +
                                          existing.key() + " = " + std::to_string(existing.value));
  }

  std::map<std::pair<FactKind, i64>, Fact> facts_;
  std::vector<EllipticCurveRecord> curves_;
  std::vector<TableForm> forms_;
  std::vector<SearchRecord> searches_;
};

}  // namespace x0n::degrees
