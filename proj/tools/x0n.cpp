// Command-line front end: x0n <verb> [levels] [flags].

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "x0n/autgroup.hpp"
#include "x0n/classifier.hpp"
#include "x0n/degrees.hpp"
#include "x0n/gamma0.hpp"
#include "x0n/https_transport.hpp"
#include "x0n/json_io.hpp"

#ifndef X0N_DEFAULT_FIXTURES
#define X0N_DEFAULT_FIXTURES "data/fixtures.json"
#endif

namespace {

using namespace x0n;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitData = 4;
constexpr int kExitUsage = 64;

struct Settings {
  bool json_out = false;
  bool online = false;
  std::string fixtures = X0N_DEFAULT_FIXTURES;
  std::string cache_dir;
  unsigned jobs = 1;
  i64 max_level = 1000;
  bool all = false;
  std::vector<i64> levels;
  // verb specific
  std::string theorem = "1.1";
  i64 degree = 0;
  i64 bound = 200;
  i64 max_degree = 8;
  std::string write_path;
};

int exit_code_for(const std::string& code) {
  if (code == "mismatch") return kExitMismatch;
  if (code == "insufficient-facts") return kExitInsufficient;
  static const std::set<std::string> data{"fixture-missing", "invalid-fixture", "network-unavailable",
                                          "invalid-response", "contradictory-fact"};
  if (data.count(code)) return kExitData;
  if (code == "invalid-argument") return kExitUsage;
  return kExitFailure;
}

degrees::KnowledgeBase load_kb(const Settings& s) { return degrees::KnowledgeBase::load(s.fixtures); }

degrees::LmfdbOptions lmfdb_options(const Settings& s, bool force_online = false) {
  degrees::LmfdbOptions o;
  o.offline = !(s.online || force_online);
  o.cache_dir = s.cache_dir;
  if (!o.offline) o.transport = degrees::https_transport();
  return o;
}

autgroup::ClosureOptions closure_options(const Settings& s) {
  autgroup::ClosureOptions o;
  o.build.max_level = s.max_level;
  return o;
}

std::vector<i64> select_levels(const Settings& s, const degrees::KnowledgeBase* kb) {
  std::vector<i64> out = s.levels;
  if (s.all) {
    if (!kb) throw Error("invalid-argument", "--all needs the fixture file");
    for (i64 n : kb->levels_with(degrees::FactKind::DCM)) out.push_back(n);
  }
  if (out.empty()) throw Error("invalid-argument", "no levels given (pass N... or --all)");
  for (i64 n : out)
    if (n < 1) throw Error("invalid-argument", "levels must be positive");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

json one_or_many(const std::vector<json>& items, bool many) {
  if (!many && items.size() == 1) return items.front();
  return json(items);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string opt_str(const std::optional<i64>& v) { return v ? std::to_string(*v) : "-"; }

int run_profile(const Settings& s) {
  std::unique_ptr<degrees::KnowledgeBase> kb;
  if (s.all) kb = std::make_unique<degrees::KnowledgeBase>(load_kb(s));
  const auto levels = select_levels(s, kb.get());
  std::vector<json> items;
  if (!s.json_out)
    std::cout << std::setw(6) << "N" << std::setw(8) << "index" << std::setw(5) << "nu2" << std::setw(5) << "nu3"
              << std::setw(7) << "genus" << std::setw(7) << "cusps" << "  orbits (d:degree)\n";
  for (i64 n : levels) {
    const auto p = gamma0::profile(n);
    if (s.json_out) {
      items.push_back(io::to_json(p));
      continue;
    }
    std::cout << std::setw(6) << n << std::setw(8) << p.index << std::setw(5) << p.nu2 << std::setw(5) << p.nu3
              << std::setw(7) << p.genus << std::setw(7) << p.cusp_count() << " ";
    for (const auto& o : p.cusp_orbits) std::cout << " " << o.denominator << ":" << o.degree;
    std::cout << "\n";
  }
  if (s.json_out) emit_json(one_or_many(items, s.all || levels.size() > 1));
  return kExitOk;
}

int run_involutions(const Settings& s) {
  std::unique_ptr<degrees::KnowledgeBase> kb;
  if (s.all) kb = std::make_unique<degrees::KnowledgeBase>(load_kb(s));
  auto levels = select_levels(s, kb.get());
  if (s.all) {
    std::vector<i64> kept;
    for (i64 n : levels) {
      if (autgroup::is_exceptional_level(n)) {
        std::cerr << "skipping N=" << n << ": exceptional level\n";
        continue;
      }
      kept.push_back(n);
    }
    levels = kept;
  }
  std::vector<autgroup::AutGroupReport> reports(levels.size());
  std::vector<std::exception_ptr> errors(levels.size());
  std::atomic<std::size_t> next{0};
  const auto opts = closure_options(s);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < levels.size();) {
      try {
        reports[i] = autgroup::involutions(levels[i], opts);
        reports[i].elements.clear();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(s.jobs, levels.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (s.json_out) {
    std::vector<json> items;
    for (const auto& r : reports) items.push_back(io::to_json(r));
    emit_json(one_or_many(items, s.all || levels.size() > 1));
    return kExitOk;
  }
  for (const auto& r : reports) {
    std::cout << "N=" << r.level << "  genus " << r.genus << "  |B0(N)| = " << r.group_order << "  involutions "
              << r.involutions.size() << "  min quotient genus "
              << (r.min_quotient_genus ? std::to_string(*r.min_quotient_genus) : "-") << "\n";
    auto rows = r.involutions;
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return std::tie(a.quotient_genus, a.label) < std::tie(b.quotient_genus, b.label);
    });
    for (const auto& i : rows) std::cout << "  " << std::setw(6) << i.quotient_genus << "  " << i.label << "\n";
  }
  return kExitOk;
}

int run_classify(const Settings& s) {
  const auto kb = load_kb(s);
  const auto levels = select_levels(s, &kb);
  classifier::InvolutionProvider provider(closure_options(s));
  classifier::ClassifierOptions opts{lmfdb_options(s), &provider};
  const auto verdicts = classifier::classify_all(levels, kb, opts, s.jobs);
  if (s.json_out) {
    std::vector<json> items;
    for (const auto& v : verdicts) items.push_back(io::to_json(v));
    emit_json(one_or_many(items, s.all || levels.size() > 1));
    return kExitOk;
  }
  std::cout << std::setw(6) << "N" << std::setw(6) << "d_CM" << std::setw(13) << "delta_lower" << std::setw(13)
            << "delta_upper" << std::setw(13) << "sporadic_cm" << std::setw(14) << "sporadic_any\n";
  for (const auto& v : verdicts)
    std::cout << std::setw(6) << v.level << std::setw(6) << opt_str(v.d_cm) << std::setw(13) << opt_str(v.delta_lower)
              << std::setw(13) << opt_str(v.delta_upper) << std::setw(13) << yes_no(v.sporadic_cm) << std::setw(13)
              << yes_no(v.sporadic_any) << "\n";
  if (verdicts.size() == 1) {
    std::cout << "\ntrace:\n";
    for (const auto& step : verdicts.front().trace)
      std::cout << "  " << step.rule << " " << step.inputs.dump() << "\n      [" << step.citation << "]\n";
  }
  return kExitOk;
}

int run_forms(const Settings& s) {
  const auto kb = load_kb(s);
  std::vector<i64> levels = s.levels;
  if (levels.empty() || s.all)
    for (const auto& t : kb.forms()) levels.push_back(t.level);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<json> items;
  for (i64 n : levels) {
    json forms = json::array();
    for (const auto& t : kb.forms()) {
      if (t.level != n) continue;
      const auto values = t.form.represented_values(s.bound);
      forms.push_back({{"curve_label", t.curve_label},
                       {"form", t.form.to_string()},
                       {"content", t.form.content()},
                       {"values", json(std::vector<i64>(values.begin(), values.end()))}});
    }
    json item = {{"level", n}, {"bound", s.bound}, {"forms", forms}};
    if (s.degree > 0) item["degree_map"] = io::to_json(degrees::degree_map_possible(n, s.degree, kb, lmfdb_options(s)));
    items.push_back(item);
  }
  if (s.json_out) {
    emit_json(json(items));
    return kExitOk;
  }
  for (const auto& item : items) {
    std::cout << "N=" << item["level"].get<i64>() << "\n";
    for (const auto& f : item["forms"]) {
      std::cout << "  " << f["curve_label"].get<std::string>() << "  " << f["form"].get<std::string>() << "  content "
                << f["content"].get<i64>() << "\n    values <= " << s.bound << ":";
      for (const auto& v : f["values"]) std::cout << " " << v.get<i64>();
      std::cout << "\n";
    }
    if (item.contains("degree_map")) {
      const auto& dm = item["degree_map"];
      std::cout << "  degree " << dm["degree"].get<i64>() << " map to a positive-rank curve possible: "
                << yes_no(dm["possible"].get<bool>()) << " (" << dm["reason"].get<std::string>() << ")\n";
    }
  }
  return kExitOk;
}

int run_lmfdb_sync(const Settings& s) {
  auto kb = load_kb(s);
  const auto levels = select_levels(s, nullptr);
  const auto online = lmfdb_options(s, true);
  int status = kExitOk;
  json out = json::array();
  for (i64 n : levels) {
    const auto fetched = degrees::LmfdbClient(kb, online).fetch_positive_rank_curves(n, s.max_degree);
    json item = {{"level", n}, {"max_degree", s.max_degree}, {"curves", json::array()}};
    for (const auto& r : fetched) item["curves"].push_back(io::to_json(r));
    std::optional<bool> agree;
    const auto search = kb.search_for(n);
    if (search && search->max_degree >= s.max_degree) {
      agree = degrees::fetch_positive_rank_curves(n, s.max_degree, kb) == fetched;
      if (!*agree) status = kExitMismatch;
    }
    item["agrees_with_fixture"] = agree ? json(*agree) : json(nullptr);
    out.push_back(item);
    if (!s.write_path.empty()) {
      for (const auto& r : fetched) kb.add_curve(r);
      kb.add_search({n, s.max_degree, "LMFDB ec_curvedata fetched " + degrees::utc_date_today()});
    }
  }
  if (!s.write_path.empty()) std::ofstream(s.write_path) << kb.to_json().dump(1) << "\n";
  if (s.json_out) {
    emit_json(out);
  } else {
    for (const auto& item : out) {
      std::cout << "N=" << item["level"].get<i64>() << " (modular degree <= " << s.max_degree << "):";
      for (const auto& c : item["curves"])
        std::cout << " " << c["label"].get<std::string>() << "[" << c["modular_degree"].get<i64>() << "]";
      const auto& a = item["agrees_with_fixture"];
      std::cout << "  fixture: " << (a.is_null() ? "not covered" : a.get<bool>() ? "agrees" : "DIFFERS") << "\n";
    }
  }
  return status;
}

int run_report(const Settings& s) {
  if (s.theorem != "1.1" && s.theorem != "1.2") throw Error("invalid-argument", "--theorem must be 1.1 or 1.2");
  const auto kb = load_kb(s);
  classifier::InvolutionProvider provider(closure_options(s));
  classifier::ClassifierOptions opts{lmfdb_options(s), &provider};
  const auto rep = classifier::build_theorem_report(kb, opts, s.jobs);
  const json j = io::to_json(rep, s.theorem);
  if (s.json_out) {
    emit_json(j);
  } else {
    const bool cm = s.theorem == "1.1";
    std::cout << (cm ? "Levels without a sporadic CM point" : "Levels without any sporadic point")
              << " (scope: " << rep.scope.size() << " open levels + " << rep.prior.size() << " settled levels)\n";
    std::cout << std::setw(6) << "N" << std::setw(8) << "scope" << std::setw(11) << "sporadic" << std::setw(9)
              << "in set" << std::setw(12) << "reference\n";
    const auto& reference = cm ? rep.reference_s_cm : rep.reference_no_sporadic;
    for (const auto& row : j["levels"]) {
      const i64 n = row["level"].get<i64>();
      std::cout << std::setw(6) << n << std::setw(8) << (row["in_scope"].get<bool>() ? "U" : "prior") << std::setw(11)
                << yes_no(row["sporadic"].get<bool>()) << std::setw(9) << yes_no(row["in_set"].get<bool>())
                << std::setw(11) << yes_no(reference.count(n) != 0) << "\n";
    }
    std::cout << "computed set:";
    for (const auto& n : j["computed"]) std::cout << " " << n.get<i64>();
    std::cout << "\n" << (j["agree"].get<bool>() ? "agreement: yes" : "agreement: NO, mismatch at") ;
    for (const auto& n : j["mismatch"]) std::cout << " " << n.get<i64>();
    std::cout << "\n";
  }
  return j["agree"].get<bool>() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Sporadic CM points on X0(N): invariants, involutions, degree obstructions, classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "x0n 1.0");

  bool offline_flag = true;
  app.add_flag("--json", s.json_out, "Emit JSON instead of tables")->envname("X0N_JSON");
  app.add_flag("--offline,!--online", offline_flag, "Serve curve data from fixtures (default) or query LMFDB")
      ->envname("X0N_OFFLINE");
  app.add_option("--fixtures", s.fixtures, "Fixture JSON path")->envname("X0N_FIXTURES");
  app.add_option("--cache-dir", s.cache_dir, "LMFDB response cache directory")->envname("X0N_CACHE_DIR");
  app.add_option("--jobs", s.jobs, "Worker threads for batch runs")->check(CLI::Range(1u, 256u))->envname("X0N_JOBS");
  app.add_option("--max-level", s.max_level, "Largest level for modular symbol computations")
      ->check(CLI::PositiveNumber)
      ->envname("X0N_MAX_LEVEL");

  auto add_levels = [&](CLI::App* sub, bool with_all) {
    sub->add_option("levels", s.levels, "Levels N");
    if (with_all) sub->add_flag("--all", s.all, "All levels whose sporadic CM status was open (the set U)");
    sub->fallthrough();
  };
  auto* profile = app.add_subcommand("profile", "Gamma0(N) invariants and cusp orbits");
  add_levels(profile, true);
  auto* involutions = app.add_subcommand("involutions", "Automorphism group and involution quotient genera");
  add_levels(involutions, true);
  auto* classify = app.add_subcommand("classify", "Sporadic point verdicts with proof traces");
  add_levels(classify, true);
  auto* forms = app.add_subcommand("forms", "Degree forms on file and degree-map obstructions");
  add_levels(forms, true);
  forms->add_option("--degree", s.degree, "Decide whether a map of this degree can exist")->check(CLI::PositiveNumber);
  forms->add_option("--bound", s.bound, "Largest value to list")->check(CLI::PositiveNumber);
  auto* sync = app.add_subcommand("lmfdb-sync", "Fetch positive-rank curves from LMFDB and compare with fixtures");
  add_levels(sync, false);
  sync->add_option("--max-degree", s.max_degree, "Modular degree bound")->check(CLI::PositiveNumber);
  sync->add_option("--write", s.write_path, "Write the merged fixture file here");
  auto* report = app.add_subcommand("report", "Compare the computed classification with the reference sets");
  report->add_option("--theorem", s.theorem, "1.1 (sporadic CM) or 1.2 (any sporadic point)");
  report->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  s.online = !offline_flag;

  try {
    if (*profile) return run_profile(s);
    if (*involutions) return run_involutions(s);
    if (*classify) return run_classify(s);
    if (*forms) return run_forms(s);
    if (*sync) return run_lmfdb_sync(s);
    if (*report) return run_report(s);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
