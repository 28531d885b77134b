#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/autgroup.hpp"
#include "x0n/degrees.hpp"
#include "x0n/gamma0.hpp"
#include "x0n/knowledge.hpp"

namespace x0n::classifier {

using degrees::FactKind;
using degrees::KnowledgeBase;
using json = nlohmann::json;

struct KVBound {
  i64 d = 0;
  i64 m = 0;
  i64 epsilon = 0;
  i64 genus_bound = 0;
};

/// If delta(X) = d and g(X) exceeds genus_bound, X has a map of degree >= 2 to
/// some Y with d = delta(Y) * degree.
inline KVBound kv_genus_bound(i64 d) {
  if (d < 2) throw Error("invalid-argument", "Kadets-Vogt bound needs d >= 2");
  KVBound b{d, (d + 1) / 2 - 1, 0, 0};
  b.epsilon = 3 * d - 1 - 6 * b.m;
  b.genus_bound = std::max(d * (d - 1) / 2 + 1, 3 * b.m * (b.m - 1) + b.m * b.epsilon);
  return b;
}

/// Upper bound for the complex gonality of a genus-g curve.
inline i64 poonen_gonality_cap(i64 genus) {
  if (genus < 0) throw Error("invalid-argument", "genus must be nonnegative");
  return (genus + 3) / 2;
}

/// delta(X) >= gon / 2.
inline i64 frey_delta_lower(i64 gonality_lower) {
  if (gonality_lower < 1) throw Error("invalid-argument", "gonality bound must be positive");
  return (gonality_lower + 1) / 2;
}

/// Castelnuovo-Severi with conjugates: a degree-d map to P^1 factors through
/// the quotient when g > order * gq + (order - 1)(d - 1).
inline bool cs_factor_predicate(i64 genus, i64 order, i64 quotient_genus, i64 d) {
  if (genus < 0 || quotient_genus < 0 || d < 0 || order < 2) throw Error("invalid-argument", "bad predicate arguments");
  return genus > order * quotient_genus + (order - 1) * (d - 1);
}

namespace cite {
inline constexpr const char* kKadetsVogt = "Kadets-Vogt, Theorem 1.3";
inline constexpr const char* kAbramovich = "Abramovich, Theorem 0.1 (constant 325/2^15)";
inline constexpr const char* kFrey = "Frey, Proposition 2";
inline constexpr const char* kFaltings = "Faltings";
inline constexpr const char* kPoonen = "Poonen, Proposition A.1 (v), (vi)";
inline constexpr const char* kHarrisSilverman = "Harris-Silverman; Kadets-Vogt, Theorem 1.2 (1)";
inline constexpr const char* kModularDegree = "modular degree divides the degree of X0(N) -> E for N < 778";
inline constexpr const char* kGonalityBound = "delta(X) <= gon_Q(X)";
inline constexpr const char* kHomology = "genus of X0(N)/w from the invariants of w on H_1(X0(N), Q)";
}  // namespace cite

struct TraceStep {
  std::string rule;
  json inputs;
  std::string citation;
};

/// Lazily computed, cached involution reports; safe to share between threads.
class InvolutionProvider {
 public:
  explicit InvolutionProvider(autgroup::ClosureOptions opts = {}) : opts_(std::move(opts)) {}

  autgroup::AutGroupReport get(i64 level) {
    std::shared_future<autgroup::AutGroupReport> fut;
    std::optional<std::promise<autgroup::AutGroupReport>> mine;
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(level);
      if (it == cache_.end()) {
        mine.emplace();
        fut = mine->get_future().share();
        cache_.emplace(level, fut);
      } else {
        fut = it->second;
      }
    }
    if (mine) {
      try {
        mine->set_value(autgroup::involutions(level, opts_));
      } catch (...) {
        mine->set_exception(std::current_exception());
      }
    }
    return fut.get();
  }

  std::size_t computed() const {
    std::lock_guard lock(mu_);
    return cache_.size();
  }

  const autgroup::ClosureOptions& options() const { return opts_; }

 private:
  autgroup::ClosureOptions opts_;
  mutable std::mutex mu_;
  std::map<i64, std::shared_future<autgroup::AutGroupReport>> cache_;
};

struct ClassifierOptions {
  degrees::LmfdbOptions lmfdb;
  /// Without a provider the involution route is never taken.
  InvolutionProvider* involutions = nullptr;
};

enum class Target { P1, PositiveRankE, IntermediateCurve };

inline std::string to_string(Target t) {
  switch (t) {
    case Target::P1: return "P1";
    case Target::PositiveRankE: return "positive-rank-E";
    case Target::IntermediateCurve: return "intermediate-curve";
  }
  return "?";
}

/// X0(N) -> Y of degree e with delta(Y) = d / e (and g(Y) <= genus_cap when set).
struct CaseObligation {
  i64 d = 0;
  i64 e = 0;
  Target target = Target::P1;
  std::optional<i64> genus_cap;

  std::string name() const {
    std::string s = "degree " + std::to_string(e) + " map to " + to_string(target);
    if (target == Target::IntermediateCurve) {
      s += " with delta " + std::to_string(d / e);
      if (genus_cap) s += " and genus <= " + std::to_string(*genus_cap);
    }
    return s;
  }
};

inline std::vector<CaseObligation> case_obligations(i64 d) {
  std::vector<CaseObligation> out;
  for (i64 e : divisors(d)) {
    if (e < 2) continue;
    const i64 k = d / e;
    if (k == 1) {
      out.push_back({d, e, Target::P1, std::nullopt});
      out.push_back({d, e, Target::PositiveRankE, std::nullopt});
    } else if (k == 2) {
      out.push_back({d, e, Target::IntermediateCurve, std::nullopt});
    } else {
      out.push_back({d, e, Target::IntermediateCurve, kv_genus_bound(k).genus_bound});
    }
  }
  return out;
}

struct ObligationOutcome {
  CaseObligation obligation;
  bool refuted = false;
  std::string rule;
  json inputs;
  std::string citation;
};

struct Elimination {
  i64 level = 0;
  i64 d = 0;
  i64 genus = 0;
  KVBound kv;
  bool success = false;
  std::string failure;  // "kv-case-2-open" or the unrefuted obligation
  std::vector<ObligationOutcome> outcomes;
};

/// Lower bounds for gonality from Abramovich and the knowledge base.
struct GonalityBounds {
  i64 abramovich = 0;
  i64 gon_c = 0;  // gon_C >= gon_c
  i64 gon_q = 0;  // gon_Q >= gon_q
  std::optional<i64> gon_q_exact;
  json sources = json::object();
};

inline GonalityBounds gonality_bounds(i64 level, const KnowledgeBase& kb) {
  GonalityBounds b;
  b.abramovich = gamma0::abramovich_lower_bound(level);
  b.gon_c = b.abramovich;
  b.sources["abramovich"] = b.abramovich;
  if (auto f = kb.fact(FactKind::GonCLower, level)) {
    b.gon_c = std::max(b.gon_c, f->value);
    b.sources["gonC_lower"] = f->value;
  }
  b.gon_q = b.gon_c;
  if (auto f = kb.fact(FactKind::GonQLower, level)) {
    b.gon_q = std::max(b.gon_q, f->value);
    b.sources["gonQ_lower"] = f->value;
  }
  if (auto f = kb.fact(FactKind::GonQExact, level)) {
    b.gon_q_exact = f->value;
    b.gon_q = std::max(b.gon_q, f->value);
    b.sources["gonQ_exact"] = f->value;
  }
  return b;
}

/// Tries to refute every way delta(X0(N)) = d could happen.
inline Elimination eliminate_delta(i64 level, i64 d, const KnowledgeBase& kb, const ClassifierOptions& opts = {}) {
  Elimination el;
  el.level = level;
  el.d = d;
  el.kv = kv_genus_bound(d);
  el.genus = gamma0::genus(level);
  if (el.genus <= el.kv.genus_bound) {
    el.failure = "kv-case-2-open";
    return el;
  }
  const auto gon = gonality_bounds(level, kb);
  const auto obligations = case_obligations(d);

  // Curve data may be absent; an obligation without evidence stays open.
  std::optional<degrees::DegreeMapEvidence> evidence;
  std::string evidence_error;
  auto map_evidence = [&]() -> const degrees::DegreeMapEvidence* {
    if (!evidence && evidence_error.empty()) {
      try {
        evidence = degrees::degree_map_possible(level, d, kb, opts.lmfdb);
      } catch (const Error& e) {
        if (e.code() != "fixture-missing" && e.code() != "network-unavailable") throw;
        evidence_error = e.what();
      }
    }
    return evidence ? &*evidence : nullptr;
  };
  // e = d; the k = 2 cases reduce to it.
  auto top_level = [&]() -> bool {
    if (gon.gon_q <= d) return false;
    const auto* ev = map_evidence();
    return ev && !ev->possible;
  };

  for (const auto& ob : obligations) {
    ObligationOutcome out;
    out.obligation = ob;
    const i64 k = d / ob.e;
    if (ob.target == Target::P1) {
      out.rule = "gonality-exceeds-degree";
      out.inputs = {{"gon_Q_lower", gon.gon_q}, {"degree", d}, {"bounds", gon.sources}};
      out.citation = cite::kAbramovich;
      out.refuted = gon.gon_q > d;
    } else if (ob.target == Target::PositiveRankE) {
      out.rule = "modular-degree-obstruction";
      out.citation = cite::kModularDegree;
      if (const auto* ev = map_evidence()) {
        json recs = json::array(), forms = json::array();
        for (const auto& r : ev->records) recs.push_back({{"label", r.label}, {"modular_degree", r.modular_degree}});
        for (const auto& f : ev->forms)
          forms.push_back({{"curve", f.curve_label}, {"form", f.form}, {"admits", f.admits}});
        out.inputs = {{"degree", d}, {"curves", recs}, {"forms", forms}, {"reason", ev->reason}};
        out.refuted = !ev->possible;
      } else {
        out.inputs = {{"degree", d}, {"reason", evidence_error}};
      }
    } else if (k == 2) {
      out.rule = "double-cover-composition";
      out.inputs = {{"reduces_to_degree", d}};
      out.citation = cite::kHarrisSilverman;
      out.refuted = top_level();
    } else {
      const i64 cap = *ob.genus_cap;
      const i64 composed = ob.e * poonen_gonality_cap(cap);
      out.rule = "gonality-composition";
      out.inputs = {{"genus_cap", cap}, {"gon_C_upper", composed}, {"gon_C_lower", gon.gon_c}};
      out.citation = cite::kPoonen;
      out.refuted = composed < gon.gon_c;
      if (!out.refuted && ob.e == 2 && opts.involutions && !autgroup::is_exceptional_level(level) && el.genus >= 2) {
        const auto report = opts.involutions->get(level);
        if (report.min_quotient_genus) {
          out.rule = "involution-quotient-genus";
          out.inputs = {{"genus_cap", cap},
                        {"min_quotient_genus", *report.min_quotient_genus},
                        {"group_order", report.group_order},
                        {"involutions", report.involutions.size()}};
          out.citation = cite::kHomology;
          out.refuted = static_cast<i64>(*report.min_quotient_genus) > cap;
        }
      }
    }
    const bool open = !out.refuted;
    el.outcomes.push_back(std::move(out));
    if (open) {
      el.failure = ob.name();
      if (!evidence_error.empty() && ob.target != Target::P1) el.failure += " [" + evidence_error + "]";
      break;
    }
  }
  el.success = el.failure.empty();
  return el;
}

inline TraceStep elimination_step(const Elimination& el) {
  json obs = json::array();
  for (const auto& o : el.outcomes)
    obs.push_back({{"e", o.obligation.e},
                   {"target", to_string(o.obligation.target)},
                   {"refuted", o.refuted},
                   {"rule", o.rule},
                   {"inputs", o.inputs},
                   {"citation", o.citation}});
  return {"eliminate-delta",
          {{"d", el.d}, {"genus", el.genus}, {"kv_genus_bound", el.kv.genus_bound}, {"obligations", obs}},
          cite::kKadetsVogt};
}

struct Verdict {
  i64 level = 0;
  std::optional<i64> d_cm;
  std::optional<i64> delta_lower;
  std::optional<i64> delta_upper;
  bool sporadic_cm = false;
  bool sporadic_any = false;
  std::vector<TraceStep> trace;
};

namespace detail {

[[noreturn]] inline void insufficient(i64 level, const std::string& missing) {
  throw Error("insufficient-facts", "N=" + std::to_string(level) + " needs " + missing);
}

inline void sporadic_any_from_facts(Verdict& v, const KnowledgeBase& kb) {
  if (auto f = kb.fact(FactKind::SporadicNonCM, v.level)) {
    v.sporadic_any = true;
    v.trace.push_back({"sporadic-noncm-fact", {{"degree", f->value}}, f->source});
    return;
  }
  if (auto f = kb.fact(FactKind::NoSporadicNonCM, v.level)) {
    v.sporadic_any = false;
    v.trace.push_back({"no-sporadic-noncm-fact", json::object(), f->source});
    return;
  }
  if (v.delta_upper) {
    const i64 need = *v.delta_upper - 1;
    auto f = kb.fact(FactKind::NoLowDegreePoints, v.level);
    if (f && f->value >= need) {
      v.sporadic_any = false;
      v.trace.push_back({"no-low-degree-points", {{"max_degree", f->value}, {"delta_upper", *v.delta_upper}}, f->source});
      return;
    }
    insufficient(v.level, "no_low_degree_points(" + std::to_string(v.level) + ") >= " + std::to_string(need));
  }
  insufficient(v.level, "sporadic_noncm(" + std::to_string(v.level) + ") or no_sporadic_noncm(" +
                            std::to_string(v.level) + ")");
}

}  // namespace detail

inline Verdict classify(i64 level, const KnowledgeBase& kb, const ClassifierOptions& opts = {}) {
  gamma0::require_level(level);
  Verdict v;
  v.level = level;
  const auto dcm_fact = kb.fact(FactKind::DCM, level);
  if (!dcm_fact) {
    const auto prior = kb.fact(FactKind::NoSporadicCM, level);
    if (!prior) detail::insufficient(level, "d_CM(" + std::to_string(level) + ")");
    v.sporadic_cm = false;
    v.trace.push_back({"no-sporadic-cm-fact", json::object(), prior->source});
    detail::sporadic_any_from_facts(v, kb);
    return v;
  }
  const i64 dcm = dcm_fact->value;
  v.d_cm = dcm;
  v.trace.push_back({"d-cm", {{"d_cm", dcm}}, dcm_fact->source});

  // Lower bounds that need no case analysis.
  i64 lower = 1;
  const i64 genus = gamma0::genus(level);
  if (genus >= 2) {
    lower = 2;
    v.trace.push_back({"faltings", {{"genus", genus}, {"delta_lower", 2}}, cite::kFaltings});
  }
  const auto gon = gonality_bounds(level, kb);
  v.trace.push_back({"abramovich", {{"index", gamma0::index(level)}, {"gon_C_lower", gon.abramovich}}, cite::kAbramovich});
  if (const i64 f = frey_delta_lower(gon.gon_q); f > lower) lower = f;
  v.trace.push_back({"frey", {{"gon_lower", gon.gon_q}, {"delta_lower", frey_delta_lower(gon.gon_q)}}, cite::kFrey});
  if (auto f = kb.fact(FactKind::DeltaLower, level)) {
    lower = std::max(lower, f->value);
    v.trace.push_back({"delta-lower-fact", {{"delta_lower", f->value}}, f->source});
  }
  if (gon.gon_q_exact) {
    v.delta_upper = *gon.gon_q_exact;
    v.trace.push_back({"density-at-most-gonality", {{"gonQ_exact", *gon.gon_q_exact}},
                       std::string(cite::kGonalityBound) + "; " + kb.fact(FactKind::GonQExact, level)->source});
  }

  if (v.delta_upper && *v.delta_upper <= dcm) {
    v.delta_lower = lower;
    v.sporadic_cm = false;
    v.trace.push_back({"no-sporadic-cm", {{"delta_upper", *v.delta_upper}, {"d_cm", dcm}}, cite::kGonalityBound});
  } else {
    while (lower <= dcm) {
      const auto el = eliminate_delta(level, lower, kb, opts);
      if (!el.success)
        detail::insufficient(level, "a refutation of delta = " + std::to_string(lower) + " (" + el.failure + ")");
      v.trace.push_back(elimination_step(el));
      ++lower;
    }
    v.delta_lower = lower;
    v.sporadic_cm = true;
    v.trace.push_back({"sporadic-cm", {{"delta_lower", lower}, {"d_cm", dcm}}, "a CM point of degree d_CM < delta"});
  }

  if (v.sporadic_cm) {
    v.sporadic_any = true;
  } else {
    detail::sporadic_any_from_facts(v, kb);
  }
  return v;
}

struct ReplayResult {
  bool sporadic_cm = false;
  std::optional<bool> sporadic_any;
  std::optional<i64> delta_lower;
  std::optional<i64> delta_upper;
};

/// Re-derives a verdict from its trace alone, recomputing every arithmetic
/// claim. Throws Error("invalid-trace") on any inconsistency.
inline ReplayResult replay_trace(const Verdict& v) {
  auto fail = [&](const std::string& why) -> void {
    throw Error("invalid-trace", "N=" + std::to_string(v.level) + ": " + why);
  };
  ReplayResult r;
  std::optional<i64> dcm;
  i64 lower = 1;
  bool concluded = false;
  for (const auto& s : v.trace) {
    const auto& in = s.inputs;
    if (s.rule == "d-cm") {
      dcm = in.at("d_cm").get<i64>();
    } else if (s.rule == "faltings") {
      if (gamma0::genus(v.level) < 2) fail("Faltings step on a curve of genus < 2");
      lower = std::max<i64>(lower, 2);
    } else if (s.rule == "abramovich") {
      if (in.at("gon_C_lower").get<i64>() != gamma0::abramovich_lower_bound(v.level)) fail("wrong Abramovich bound");
    } else if (s.rule == "frey") {
      const i64 d = in.at("delta_lower").get<i64>();
      if (d != frey_delta_lower(in.at("gon_lower").get<i64>())) fail("wrong Frey bound");
      lower = std::max(lower, d);
    } else if (s.rule == "delta-lower-fact") {
      lower = std::max(lower, in.at("delta_lower").get<i64>());
    } else if (s.rule == "density-at-most-gonality") {
      r.delta_upper = in.at("gonQ_exact").get<i64>();
    } else if (s.rule == "eliminate-delta") {
      const i64 d = in.at("d").get<i64>();
      if (d != lower) fail("elimination of " + std::to_string(d) + " while the bound is " + std::to_string(lower));
      if (in.at("kv_genus_bound").get<i64>() != kv_genus_bound(d).genus_bound) fail("wrong Kadets-Vogt bound");
      if (in.at("genus").get<i64>() != gamma0::genus(v.level) || gamma0::genus(v.level) <= kv_genus_bound(d).genus_bound)
        fail("Kadets-Vogt case (2) not excluded");
      std::set<std::pair<i64, std::string>> seen;
      for (const auto& o : in.at("obligations")) {
        if (!o.at("refuted").get<bool>()) fail("unrefuted obligation in elimination of " + std::to_string(d));
        seen.insert({o.at("e").get<i64>(), o.at("target").get<std::string>()});
      }
      for (const auto& ob : case_obligations(d))
        if (!seen.count({ob.e, to_string(ob.target)})) fail("missing obligation: " + ob.name());
      lower = d + 1;
    } else if (s.rule == "sporadic-cm") {
      if (!dcm || lower <= *dcm) fail("sporadic-cm without delta_lower > d_CM");
      r.sporadic_cm = true;
      r.sporadic_any = true;
      concluded = true;
    } else if (s.rule == "no-sporadic-cm") {
      if (!dcm || !r.delta_upper || *r.delta_upper > *dcm) fail("no-sporadic-cm without delta_upper <= d_CM");
      r.sporadic_cm = false;
      concluded = true;
    } else if (s.rule == "no-sporadic-cm-fact") {
      r.sporadic_cm = false;
      concluded = true;
    } else if (s.rule == "no-low-degree-points") {
      if (!r.delta_upper || in.at("max_degree").get<i64>() < *r.delta_upper - 1) fail("low-degree facts too weak");
      r.sporadic_any = false;
    } else if (s.rule == "sporadic-noncm-fact") {
      r.sporadic_any = true;
    } else if (s.rule == "no-sporadic-noncm-fact") {
      r.sporadic_any = false;
    } else {
      fail("unknown rule " + s.rule);
    }
  }
  if (!concluded) fail("trace reaches no conclusion");
  if (dcm) r.delta_lower = lower;
  return r;
}

/// Classifies each level with at most `jobs` workers; output sorted by level.
inline std::vector<Verdict> classify_all(std::vector<i64> levels, const KnowledgeBase& kb,
                                         const ClassifierOptions& opts = {}, unsigned jobs = 1) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::optional<Verdict>> out(levels.size());
  std::vector<std::exception_ptr> errors(levels.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < levels.size();) {
      try {
        out[i] = classify(levels[i], kb, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(levels.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Verdict> verdicts;
  for (auto& v : out) verdicts.push_back(std::move(*v));
  return verdicts;
}

/// Parses "1-10, 12, 59 -61" style level lists.
inline std::set<i64> parse_level_set(const std::string& text) {
  std::set<i64> out;
  std::string cleaned;
  for (char c : text) cleaned += c == ' ' ? "" : std::string(1, c);
  std::stringstream ss(cleaned);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.insert(std::stoll(item));
      } else {
        const i64 a = std::stoll(item.substr(0, dash)), b = std::stoll(item.substr(dash + 1));
        if (a > b) throw Error("invalid-argument", "empty range " + item);
        for (i64 n = a; n <= b; ++n) out.insert(n);
      }
    } catch (const std::logic_error&) {
      throw Error("invalid-argument", "bad level list item '" + item + "'");
    }
  }
  return out;
}

/// Levels N for which X0(N) has no sporadic CM point.
inline constexpr const char* kSCM =
    "1-10, 12, 13, 15-18, 20-26, 28-33, 35-37, 39-41, 46-50, 53, 59-61, 65, 70-72, 79, 80, 83, 87, 89, 94, 96, "
    "101, 131, 144";
/// The same set as originally typeset. It disagrees with the list above at
/// 11 (a rational CM point while delta = 2) and at 28, 29 (no sporadic CM
/// points by the earlier classification).
inline constexpr const char* kSCMAsTypeset =
    "1-13, 15-18, 20-26,30-33, 35-37,39-41, 46-50, 53,59 -61, 65,70-72,79,80,83,87,89,94,96, 101,131,144";
/// Levels in S_CM that still carry sporadic (rational, non-CM) points.
inline constexpr const char* kRationalSporadic = "15, 17, 21, 37";

struct TheoremReport {
  std::vector<Verdict> verdicts;
  std::set<i64> scope;  // levels with a d_CM fact
  std::set<i64> prior;  // levels settled by earlier facts
  std::set<i64> computed_s_cm, reference_s_cm;
  std::set<i64> computed_no_sporadic, reference_no_sporadic;
  std::vector<i64> s_cm_mismatch, no_sporadic_mismatch;

  bool agrees() const { return s_cm_mismatch.empty() && no_sporadic_mismatch.empty(); }
};

namespace detail {
inline std::vector<i64> symmetric_difference(const std::set<i64>& a, const std::set<i64>& b) {
  std::vector<i64> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
}  // namespace detail

/// Classifies every level with facts and compares with the reference sets.
inline TheoremReport build_theorem_report(const KnowledgeBase& kb, const ClassifierOptions& opts = {},
                                          unsigned jobs = 1) {
  TheoremReport rep;
  for (i64 n : kb.levels_with(FactKind::DCM)) rep.scope.insert(n);
  for (i64 n : kb.levels_with(FactKind::NoSporadicCM)) rep.prior.insert(n);
  std::vector<i64> levels(rep.scope.begin(), rep.scope.end());
  levels.insert(levels.end(), rep.prior.begin(), rep.prior.end());
  rep.verdicts = classify_all(levels, kb, opts, jobs);
  for (const auto& v : rep.verdicts) {
    if (!v.sporadic_cm) rep.computed_s_cm.insert(v.level);
    if (!v.sporadic_any) rep.computed_no_sporadic.insert(v.level);
  }
  // Levels outside the classified range are not compared.
  std::set<i64> covered = rep.scope;
  covered.insert(rep.prior.begin(), rep.prior.end());
  const auto rational = parse_level_set(kRationalSporadic);
  for (i64 n : parse_level_set(kSCM)) {
    if (!covered.count(n)) continue;
    rep.reference_s_cm.insert(n);
    if (!rational.count(n)) rep.reference_no_sporadic.insert(n);
  }
  rep.s_cm_mismatch = detail::symmetric_difference(rep.computed_s_cm, rep.reference_s_cm);
  rep.no_sporadic_mismatch = detail::symmetric_difference(rep.computed_no_sporadic, rep.reference_no_sporadic);
  return rep;
}

inline TheoremReport theorem_tables(const KnowledgeBase& kb, const ClassifierOptions& opts = {}, unsigned jobs = 1) {
  auto rep = build_theorem_report(kb, opts, jobs);
  if (!rep.agrees()) {
    std::string msg;
    for (i64 n : rep.s_cm_mismatch) msg += " S_CM:" + std::to_string(n);
    for (i64 n : rep.no_sporadic_mismatch) msg += " no-sporadic:" + std::to_string(n);
    throw Error("mismatch", "computed sets disagree at" + msg);
  }
  return rep;
}

}  // namespace x0n::classifier
