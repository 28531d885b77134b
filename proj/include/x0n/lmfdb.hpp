#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/knowledge.hpp"

namespace x0n::degrees {

/// Returns the response body for a GET, or throws Error("network-unavailable").
using HttpGet = std::function<std::string(const std::string& url)>;

struct LmfdbOptions {
  bool offline = true;
  std::filesystem::path cache_dir;  // empty disables the cache
  std::string date;                 // cache key component; defaults to today (UTC)
  HttpGet transport;
};

inline std::string utc_date_today() {
  const auto now = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  const std::chrono::year_month_day ymd{now};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

class LmfdbClient {
 public:
  static constexpr const char* kHost = "https://www.lmfdb.org";

  LmfdbClient(const KnowledgeBase& kb, LmfdbOptions opts = {}) : kb_(kb), opts_(std::move(opts)) {
    if (opts_.date.empty()) opts_.date = utc_date_today();
  }

  static std::string query_path(i64 conductor) {
    return "/api/ec_curvedata/?conductor=i" + std::to_string(conductor) +
           "&_format=json&_fields=Clabel,conductor,rank,degree";
  }

  static std::vector<EllipticCurveRecord> parse_response(const std::string& body) {
    std::vector<EllipticCurveRecord> out;
    try {
      const auto j = nlohmann::json::parse(body);
      for (const auto& row : j.at("data")) {
        EllipticCurveRecord r{row.at("Clabel").get<std::string>(), row.at("conductor").get<i64>(),
                              row.at("rank").get<i64>(), row.at("degree").get<i64>()};
        r.validate();
        out.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error("invalid-response", e.what());
    }
    return out;
  }

  /// Curves with rank >= 1, conductor | N and modular degree <= max_degree,
  /// ordered by (conductor, label).
  std::vector<EllipticCurveRecord> fetch_positive_rank_curves(i64 level, i64 max_degree) const {
    if (level < 1 || max_degree < 1) throw Error("invalid-argument", "level and degree must be positive");
    if (opts_.offline) return offline(level, max_degree);
    std::vector<EllipticCurveRecord> all;
    try {
      for (i64 m : divisors(level)) {
        if (m < 11) continue;
        auto rows = parse_response(fetch_body(query_path(m)));
        all.insert(all.end(), rows.begin(), rows.end());
      }
    } catch (const Error& e) {
      if (e.code() != "network-unavailable") throw;
      if (kb_.search_for(level) && kb_.search_for(level)->max_degree >= max_degree)
        return offline(level, max_degree);
      throw;
    }
    return select(all, level, max_degree);
  }

  /// Raw curve rows for one conductor, online or cached (used by lmfdb-sync).
  std::vector<EllipticCurveRecord> fetch_conductor(i64 conductor) const {
    return parse_response(fetch_body(query_path(conductor)));
  }

  const LmfdbOptions& options() const { return opts_; }

 private:
  static std::vector<EllipticCurveRecord> select(const std::vector<EllipticCurveRecord>& rows, i64 level,
                                                 i64 max_degree) {
    std::vector<EllipticCurveRecord> out;
    for (const auto& r : rows)
      if (r.rank >= 1 && level % r.conductor == 0 && r.modular_degree <= max_degree) out.push_back(r);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::tie(a.conductor, a.label) < std::tie(b.conductor, b.label);
    });
    return out;
  }

  std::vector<EllipticCurveRecord> offline(i64 level, i64 max_degree) const {
    const auto search = kb_.search_for(level);
    if (!search || search->max_degree < max_degree)
      throw Error("fixture-missing", "no curve search on file for N=" + std::to_string(level) +
                                         " up to modular degree " + std::to_string(max_degree));
    return select(kb_.curves(), level, max_degree);
  }

  std::filesystem::path cache_path(const std::string& query) const {
    std::string name;
    for (char ch : query) name += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    return opts_.cache_dir / (name + "@" + opts_.date + ".json");
  }

  std::string fetch_body(const std::string& query) const {
    if (!opts_.cache_dir.empty()) {
      std::ifstream in(cache_path(query));
      if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
      }
    }
    if (!opts_.transport) throw Error("network-unavailable", "no HTTP transport configured");
    std::string body = opts_.transport(std::string(kHost) + query);
    if (!opts_.cache_dir.empty()) {
      std::filesystem::create_directories(opts_.cache_dir);
      std::ofstream(cache_path(query)) << body;
    }
    return body;
  }

  const KnowledgeBase& kb_;
  LmfdbOptions opts_;
};

inline std::vector<EllipticCurveRecord> fetch_positive_rank_curves(i64 level, i64 max_degree,
                                                                   const KnowledgeBase& kb,
                                                                   const LmfdbOptions& opts = {}) {
  return LmfdbClient(kb, opts).fetch_positive_rank_curves(level, max_degree);
}

}  // namespace x0n::degrees
