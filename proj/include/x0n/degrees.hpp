#pragma once

#include <string>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/knowledge.hpp"
#include "x0n/lmfdb.hpp"
#include "x0n/quadform.hpp"

namespace x0n::degrees {

/// Maps of degree d to positive-rank curves are controlled by the modular
/// degree (which must divide d) only for N below this.
inline constexpr i64 kModularDegreeLevelLimit = 778;

struct FormCheck {
  std::string curve_label;
  std::string form;
  bool admits = false;
};

struct DegreeMapEvidence {
  i64 level = 0;
  i64 degree = 0;
  bool possible = false;
  std::vector<EllipticCurveRecord> records;    // fetched, modular degree <= d
  std::vector<EllipticCurveRecord> survivors;  // modular degree | d
  std::vector<FormCheck> forms;
  std::string reason;
};

/// Can X0(N) admit a degree-d map to a positive-rank elliptic curve?
/// Never answers false without evidence.
inline DegreeMapEvidence degree_map_possible(i64 level, i64 degree, const KnowledgeBase& kb,
                                             const LmfdbOptions& opts = {}) {
  if (level >= kModularDegreeLevelLimit)
    throw Error("level-out-of-range", "modular degree divisibility needs N < 778, got " + std::to_string(level));
  if (level < 1 || degree < 1) throw Error("invalid-argument", "level and degree must be positive");
  DegreeMapEvidence ev;
  ev.level = level;
  ev.degree = degree;
  ev.records = fetch_positive_rank_curves(level, degree, kb, opts);
  for (const auto& r : ev.records)
    if (degree % r.modular_degree == 0) ev.survivors.push_back(r);
  if (ev.survivors.empty()) {
    ev.reason = "no positive-rank curve with conductor | N has modular degree dividing " + std::to_string(degree);
    return ev;
  }
  for (const auto& r : ev.survivors) {
    const auto forms = kb.forms_for(level, r.label);
    if (forms.empty()) {
      ev.possible = true;
      ev.reason = r.label + " survives divisibility and no degree form is on file";
      return ev;
    }
    for (const auto* t : forms) {
      FormCheck fc{r.label, t->form.to_string(), t->form.admits_degree(degree)};
      ev.forms.push_back(fc);
      if (fc.admits) {
        ev.possible = true;
        ev.reason = "degree " + std::to_string(degree) + " is a value of the form for " + r.label;
        return ev;
      }
    }
  }
  ev.reason = "degree " + std::to_string(degree) + " is not a value of any form on file";
  return ev;
}

}  // namespace x0n::degrees
