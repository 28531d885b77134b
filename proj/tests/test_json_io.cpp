#include <gtest/gtest.h>

#include "x0n/json_io.hpp"

namespace x0n::io {
namespace {

std::vector<std::string> keys(const json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

TEST(JsonIo, ProfileRoundTrip) {
  const auto p = gamma0::profile(72);
  const auto j = to_json(p);
  EXPECT_EQ(keys(j), (std::vector<std::string>{"cusp_orbits", "genus", "index", "level", "nu2", "nu3"}));
  EXPECT_EQ(keys(j["cusp_orbits"][0]), (std::vector<std::string>{"degree", "denominator"}));
  EXPECT_EQ(to_json(profile_from_json(j)), j);
  EXPECT_EQ(j["genus"], 5);
  EXPECT_EQ(j["index"], 144);
}

TEST(JsonIo, AutReportRoundTrip) {
  const auto r = autgroup::involutions(87);
  const auto j = to_json(r);
  EXPECT_EQ(keys(j), (std::vector<std::string>{"group_order", "involutions", "level", "min_quotient_genus"}));
  EXPECT_EQ(keys(j["involutions"][0]), (std::vector<std::string>{"label", "quotient_genus"}));
  EXPECT_EQ(to_json(aut_report_from_json(j)), j);
  autgroup::AutGroupReport empty;
  EXPECT_TRUE(to_json(empty)["min_quotient_genus"].is_null());
  EXPECT_EQ(to_json(aut_report_from_json(to_json(empty))), to_json(empty));
}

TEST(JsonIo, VerdictRoundTripAndReplay) {
  const auto kb = degrees::KnowledgeBase::load(X0N_FIXTURES);
  for (i64 n : {17, 60, 144, 348}) {
    const auto v = classifier::classify(n, kb);
    const auto j = to_json(v);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"d_cm", "delta_lower", "delta_upper", "level", "sporadic_any",
                                                 "sporadic_cm", "trace"}));
    const auto back = verdict_from_json(j);
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(classifier::replay_trace(back).sporadic_cm, v.sporadic_cm);
    for (const auto& s : j["trace"]) EXPECT_EQ(keys(s), (std::vector<std::string>{"citation", "inputs", "rule"}));
  }
  EXPECT_TRUE(to_json(classifier::classify(17, kb))["d_cm"].is_null());
}

TEST(JsonIo, EvidenceShape) {
  const auto kb = degrees::KnowledgeBase::load(X0N_FIXTURES);
  const auto j = to_json(degrees::degree_map_possible(348, 4, kb));
  EXPECT_EQ(keys(j), (std::vector<std::string>{"curves", "degree", "forms", "level", "possible", "reason"}));
  ASSERT_EQ(j.at("curves").size(), 1u);
  ASSERT_EQ(j.at("forms").size(), 1u);
  EXPECT_EQ(j["curves"][0]["label"], "58a1");
  EXPECT_EQ(j["forms"][0]["admits"], false);
  EXPECT_EQ(j["possible"], false);
}

}  // namespace
}  // namespace x0n::io
