#include <gtest/gtest.h>

#include <thread>

#include "tables.hpp"
#include "x0n/classifier.hpp"
#include "x0n/gamma0.hpp"

namespace x0n::classifier {
namespace {

const KnowledgeBase& fixtures() {
  static const KnowledgeBase kb = KnowledgeBase::load(X0N_FIXTURES);
  return kb;
}

InvolutionProvider& provider() {
  static InvolutionProvider p;
  return p;
}

ClassifierOptions with_involutions() {
  ClassifierOptions o;
  o.involutions = &provider();
  return o;
}

const TheoremReport& report() {
  static const TheoremReport rep = build_theorem_report(fixtures(), with_involutions(), 2);
  return rep;
}

std::string message_of(const std::function<void()>& f, std::string* code = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (code) *code = e.code();
    return e.what();
  }
  return "";
}

TEST(Rules, KadetsVogtBound) {
  EXPECT_EQ(kv_genus_bound(4).genus_bound, 7);
  EXPECT_EQ(kv_genus_bound(6).genus_bound, 16);
  EXPECT_EQ(kv_genus_bound(8).genus_bound, 33);
  for (i64 d = 2; d <= 100; ++d) {
    const auto b = kv_genus_bound(d);
    EXPECT_EQ(b.epsilon, d % 2 == 0 ? 5 : 2) << d;
    EXPECT_EQ(3 * d - 1, 6 * b.m + b.epsilon);
    const i64 m = (d + 1) / 2 - 1, eps = 3 * d - 1 - 6 * m;
    EXPECT_EQ(b.genus_bound, std::max(d * (d - 1) / 2 + 1, 3 * m * (m - 1) + m * eps)) << d;
    if (d > 2) {
      EXPECT_GT(b.genus_bound, kv_genus_bound(d - 1).genus_bound);
    }
  }
  EXPECT_THROW(kv_genus_bound(1), Error);
}

TEST(Rules, GonalityAndDensityBounds) {
  EXPECT_EQ(poonen_gonality_cap(0), 1);
  EXPECT_EQ(poonen_gonality_cap(16), 9);
  EXPECT_EQ(poonen_gonality_cap(57), 30);
  EXPECT_EQ(frey_delta_lower(18), 9);
  EXPECT_EQ(frey_delta_lower(7), 4);
  EXPECT_TRUE(cs_factor_predicate(10, 2, 4, 2));
  EXPECT_FALSE(cs_factor_predicate(9, 2, 4, 2));
  EXPECT_FALSE(cs_factor_predicate(0, 2, 0, 1));
  EXPECT_THROW(cs_factor_predicate(5, 1, 0, 1), Error);
}

TEST(Rules, AbramovichBoundsOnTheHardLevels) {
  EXPECT_EQ(gamma0::abramovich_lower_bound(720), 18);
  for (i64 n : testing::kU8)
    if (n != 360 && n != 440) {
      EXPECT_GE(gamma0::abramovich_lower_bound(n), 11) << n;
    }
  for (i64 n : testing::kU6)
    if (n >= 300) {
      EXPECT_GE(gamma0::abramovich_lower_bound(n), 8) << n;
    }
}

TEST(Obligations, CaseSplit) {
  const auto obs = case_obligations(12);
  std::vector<std::string> names;
  for (const auto& o : obs) names.push_back(o.name());
  EXPECT_EQ(names, (std::vector<std::string>{"degree 2 map to intermediate-curve with delta 6 and genus <= 16",
                                             "degree 3 map to intermediate-curve with delta 4 and genus <= 7",
                                             "degree 4 map to intermediate-curve with delta 3 and genus <= 4",
                                             "degree 6 map to intermediate-curve with delta 2",
                                             "degree 12 map to P1", "degree 12 map to positive-rank-E"}));
  EXPECT_EQ(case_obligations(2).size(), 2u);
}

TEST(Obligations, EliminationOutcomes) {
  const auto e348 = eliminate_delta(348, 6, fixtures());
  EXPECT_TRUE(e348.success) << e348.failure;
  const auto e720 = eliminate_delta(720, 12, fixtures(), with_involutions());
  EXPECT_TRUE(e720.success) << e720.failure;
  ASSERT_EQ(e720.outcomes.size(), 6u);
  EXPECT_EQ(e720.outcomes[0].rule, "involution-quotient-genus");
  EXPECT_EQ(e720.outcomes[0].inputs.at("min_quotient_genus"), 57);
  // without involutions the e = 2 case stays open at 720
  const auto bare = eliminate_delta(720, 12, fixtures());
  EXPECT_FALSE(bare.success);
  EXPECT_EQ(bare.failure, "degree 2 map to intermediate-curve with delta 6 and genus <= 16");
  const auto e96 = eliminate_delta(96, 4, fixtures());
  EXPECT_FALSE(e96.success);
  EXPECT_EQ(e96.failure, "degree 2 map to intermediate-curve with delta 2");
  EXPECT_EQ(eliminate_delta(60, 4, fixtures()).failure, "kv-case-2-open");
}

TEST(Classify, RepresentativeLevels) {
  const auto v348 = classify(348, fixtures(), with_involutions());
  EXPECT_TRUE(v348.sporadic_cm);
  EXPECT_TRUE(v348.sporadic_any);
  EXPECT_GT(*v348.delta_lower, *v348.d_cm);
  const auto v144 = classify(144, fixtures());
  EXPECT_FALSE(v144.sporadic_cm);
  EXPECT_FALSE(v144.sporadic_any);
  const auto v17 = classify(17, fixtures());
  EXPECT_FALSE(v17.sporadic_cm);
  EXPECT_TRUE(v17.sporadic_any);
  EXPECT_FALSE(v17.d_cm);
  std::string code;
  const auto msg = message_of([] { classify(11, KnowledgeBase{}); }, &code);
  EXPECT_EQ(code, "insufficient-facts");
  EXPECT_NE(msg.find("d_CM(11)"), std::string::npos);
}

TEST(Classify, DeletingALowDegreeFactIsReportedByName) {
  const auto kb = KnowledgeBase::load(X0N_TEST_DATA "/missing_144_fact.json");
  std::string code;
  const auto msg = message_of([&] { classify(144, kb); }, &code);
  EXPECT_EQ(code, "insufficient-facts");
  EXPECT_NE(msg.find("no_low_degree_points(144) >= 5"), std::string::npos) << msg;
  KnowledgeBase copy = fixtures();
  ASSERT_TRUE(copy.remove_fact(FactKind::NoLowDegreePoints, 87));
  EXPECT_NE(message_of([&] { classify(87, copy); }).find("no_low_degree_points(87)"), std::string::npos);
}

// Removing any single fact either leaves the verdict unchanged or makes the
// classifier ask for more; it never flips a conclusion.
TEST(Classify, RemovingFactsNeverChangesAConclusion) {
  for (i64 n : {60, 87, 96, 144, 150, 300, 348, 17, 23}) {
    const auto base = classify(n, fixtures(), with_involutions());
    for (const auto& f : fixtures().facts()) {
      if (f.level != n) continue;
      KnowledgeBase kb = fixtures();
      kb.remove_fact(f.kind, f.level);
      try {
        const auto v = classify(n, kb, with_involutions());
        EXPECT_EQ(v.sporadic_cm, base.sporadic_cm) << n << " without " << f.key();
        EXPECT_EQ(v.sporadic_any, base.sporadic_any) << n << " without " << f.key();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), "insufficient-facts") << n << " without " << f.key();
      }
    }
  }
}

TEST(Theorem, SporadicCMSplitOverU) {
  std::set<i64> no_cm, yes_cm;
  const auto u = testing::all_u();
  EXPECT_EQ(u.size(), 106u);
  for (const auto& v : report().verdicts) {
    if (std::find(u.begin(), u.end(), v.level) == u.end()) continue;
    (v.sporadic_cm ? yes_cm : no_cm).insert(v.level);
  }
  EXPECT_EQ(no_cm, testing::kNoSporadicCM);
  EXPECT_EQ(yes_cm.size(), 98u);
  EXPECT_TRUE(report().agrees());
  EXPECT_EQ(report().verdicts.size(), 156u);
}

TEST(Theorem, VerdictInvariants) {
  for (const auto& v : report().verdicts) {
    const auto r = replay_trace(v);
    EXPECT_EQ(r.sporadic_cm, v.sporadic_cm) << v.level;
    EXPECT_EQ(r.sporadic_any, v.sporadic_any) << v.level;
    EXPECT_EQ(r.delta_upper, v.delta_upper) << v.level;
    if (v.sporadic_cm) {
      EXPECT_TRUE(v.sporadic_any) << v.level;
    }
    if (v.d_cm) {
      ASSERT_TRUE(v.delta_lower);
      EXPECT_EQ(r.delta_lower, v.delta_lower);
      EXPECT_EQ(v.sporadic_cm, *v.delta_lower > *v.d_cm) << v.level;
      const bool bounded_above = v.delta_upper && *v.delta_upper <= *v.d_cm;
      EXPECT_NE(*v.delta_lower > *v.d_cm, bounded_above) << v.level;
      if (v.delta_upper) {
        EXPECT_LE(*v.delta_lower, *v.delta_upper);
      }
      EXPECT_GE(*v.delta_lower, frey_delta_lower(gamma0::abramovich_lower_bound(v.level)));
    }
  }
}

TEST(Theorem, TamperedTracesAreRejected) {
  auto v = classify(348, fixtures(), with_involutions());
  auto code_of_replay = [](const Verdict& t) {
    std::string code;
    message_of([&] { replay_trace(t); }, &code);
    return code;
  };
  auto wrong_bound = v;
  for (auto& s : wrong_bound.trace)
    if (s.rule == "abramovich") s.inputs["gon_C_lower"] = 99;
  EXPECT_EQ(code_of_replay(wrong_bound), "invalid-trace");
  auto skipped = v;
  std::erase_if(skipped.trace, [](const TraceStep& s) { return s.rule == "eliminate-delta"; });
  EXPECT_EQ(code_of_replay(skipped), "invalid-trace");
  auto unrefuted = v;
  for (auto& s : unrefuted.trace)
    if (s.rule == "eliminate-delta") s.inputs["obligations"][0]["refuted"] = false;
  EXPECT_EQ(code_of_replay(unrefuted), "invalid-trace");
  auto truncated = v;
  truncated.trace.pop_back();
  EXPECT_EQ(code_of_replay(truncated), "invalid-trace");
}

TEST(Theorem, TablesAgreeAndTypesetListDiffers) {
  EXPECT_NO_THROW(theorem_tables(fixtures(), with_involutions(), 2));
  std::vector<i64> diff;
  const auto a = parse_level_set(kSCM), b = parse_level_set(kSCMAsTypeset);
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  EXPECT_EQ(diff, (std::vector<i64>{11, 28, 29}));
  EXPECT_EQ(parse_level_set("59 -61, 3"), (std::set<i64>{3, 59, 60, 61}));
  EXPECT_THROW(parse_level_set("4-2"), Error);
  EXPECT_THROW(parse_level_set("x"), Error);
}

TEST(Theorem, FlippedFactProducesMismatch) {
  const auto kb = KnowledgeBase::load(X0N_TEST_DATA "/flipped_gonality.json");
  std::string code;
  const auto msg = message_of([&] { theorem_tables(kb, with_involutions(), 2); }, &code);
  EXPECT_EQ(code, "mismatch");
  EXPECT_NE(msg.find("300"), std::string::npos) << msg;
}

TEST(Provider, ConcurrentRequestsComputeOnce) {
  InvolutionProvider p;
  std::vector<std::thread> threads;
  std::vector<std::size_t> orders(6);
  for (int t = 0; t < 6; ++t) threads.emplace_back([&, t] { orders[t] = p.get(t % 2 ? 180 : 140).group_order; });
  for (auto& t : threads) t.join();
  EXPECT_EQ(p.computed(), 2u);
  for (int t = 0; t < 6; ++t) EXPECT_EQ(orders[t], orders[t % 2]);
  std::string code;
  message_of([&] { p.get(37); }, &code);
  EXPECT_EQ(code, "exceptional-level");
}

}  // namespace
}  // namespace x0n::classifier
