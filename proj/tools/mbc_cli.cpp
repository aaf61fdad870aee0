// Copyright 2026 The mbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mbc/balanced_sets.hpp"
#include "mbc/game_props.hpp"
#include "mbc/peleg.hpp"
#include "mbc/polytope.hpp"
#include "mbc/report.hpp"
#include "mbc/stability.hpp"

namespace {

using namespace mbc;
using Clock = std::chrono::steady_clock;

constexpr const char* kDbDirVariable = "MBC_DB_DIR";

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedDatabase {
  MbcDatabase db;
  std::string source;
};

std::string default_db_path(int n) {
  const char* dir = std::getenv(kDbDirVariable);
  if (dir == nullptr || *dir == '\0') return {};
  return (std::filesystem::path(dir) / ("mbc" + std::to_string(n) + ".db")).string();
}

// Explicit path, then the database directory, then in-memory generation.
LoadedDatabase resolve_database(int n, const std::string& path, int threads) {
  std::string candidate = path;
  if (candidate.empty()) {
    candidate = default_db_path(n);
    if (!candidate.empty() && !std::filesystem::exists(candidate)) candidate.clear();
  }
  if (!candidate.empty()) {
    MbcDatabase db = load_database(candidate);
    if (db.n() != n) {
      throw std::runtime_error("database " + candidate + " is for n=" + std::to_string(db.n()) +
                               " but the game has n=" + std::to_string(n));
    }
    return {std::move(db), candidate};
  }
  PelegOptions options;
  options.threads = threads;
  return {peleg(n, options), "generated"};
}

std::vector<Coalition> parse_set_system(const std::string& text, int n) {
  std::vector<Coalition> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_coalition_key(item, n));
  }
  if (out.empty()) throw std::invalid_argument("empty set system");
  return out;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_gen(int n, const std::string& out_path, const std::string& set_system, bool long_running,
            int threads, const std::string& scratch) {
  if (n < 1 || n > kMaxDatabasePlayers) {
    throw std::invalid_argument("n must be in 1.." + std::to_string(kMaxDatabasePlayers));
  }
  if (n > kDefaultPelegCap && !long_running) {
    throw std::invalid_argument("n=" + std::to_string(n) +
                                " runs for hours; pass --long-running to proceed");
  }
  PelegOptions options;
  options.threads = threads;
  options.max_players = long_running ? kMaxDatabasePlayers : kDefaultPelegCap;
  if (!set_system.empty()) options.set_system = parse_set_system(set_system, n);
  const bool to_stdout = out_path == "-";
  std::ofstream file;
  if (!to_stdout) {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out_path);
  }
  std::ostream& out = to_stdout ? std::cout : file;
  std::size_t count;
  if (n > kDefaultPelegCap && !options.set_system) {
    StreamOptions stream;
    stream.scratch_dir = scratch.empty() ? std::filesystem::temp_directory_path().string() : scratch;
    count = peleg_to_stream(n, out, options, stream);
  } else {
    const MbcDatabase db = peleg(n, options);
    write_database(out, db);
    count = db.size();
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed");
  (to_stdout ? std::cerr : std::cout) << "n=" << n << " count=" << count << '\n';
  return 0;
}

int cmd_analyze(const std::string& game_path, const std::string& db_path,
                const std::vector<std::string>& checks, int threads, bool timings) {
  const Game g = parse_game(read_file(game_path));
  const LoadedDatabase loaded = resolve_database(g.n(), db_path, threads);
  const MbcDatabase& db = loaded.db;
  Json report;
  report["game"] = game_path;
  report["game_hash"] = game_hash(g);
  report["n"] = g.n();
  report["database"] = database_identity(db);
  report["database"]["source"] = loaded.source;
  Json requested = Json::array();
  for (const auto& c : checks) requested.push_back(c);
  report["checks"] = std::move(requested);
  Json results = Json::object();
  Json times = Json::object();
  MbcCache cache;
  cache.put(std::make_shared<const MbcDatabase>(db));
  for (const std::string& check : checks) {
    const auto start = Clock::now();
    if (check == "core") {
      Json j;
      const auto bad = first_violation(ValueTable(g), db);
      j["balanced"] = !bad.has_value();
      j["violating_collection"] = bad ? collection_json(db[*bad]) : Json(nullptr);
      results["core"] = std::move(j);
    } else if (check == "exact") {
      std::vector<Coalition> exact;
      for (Coalition s : all_coalitions(g.n()))
        if (is_exact(s, g, db)) exact.push_back(s);
      results["exact"] = coalition_list(exact);
    } else if (check == "effective") {
      results["effective"] = coalition_list(effective_set(g, db));
    } else if (check == "sve") {
      const auto ve = strictly_vital_exact_set(g, db);
      Json j;
      j["count"] = ve.size();
      j["coalitions"] = coalition_list(ve);
      results["sve"] = std::move(j);
    } else if (check == "extendable") {
      std::vector<Coalition> ext;
      for (Coalition s : all_coalitions(g.n()))
        if (is_extendable(s, g, cache)) ext.push_back(s);
      results["extendable"] = coalition_list(ext);
    } else if (check == "feasible") {
      const auto ve = strictly_vital_exact_set(g, db);
      std::vector<Coalition> ext;
      for (Coalition s : ve)
        if (is_extendable(s, g, cache)) ext.push_back(s);
      Json j = feasible_json(feasible_collections(ve, g, db, ext));
      j["family"] = coalition_list(ve);
      j["extendable"] = coalition_list(ext);
      results["feasible"] = std::move(j);
    } else {
      throw std::invalid_argument("unknown check '" + check + "'");
    }
    times[check] = seconds_since(start);
  }
  report["results"] = std::move(results);
  if (timings) report["timings"] = std::move(times);
  print(report);
  return 0;
}

int cmd_stable(const std::string& game_path, const std::string& db_path, std::uint64_t max_systems,
               double time_limit, int threads, bool timings) {
  const Game g = parse_game(read_file(game_path));
  const LoadedDatabase loaded = resolve_database(g.n(), db_path, threads);
  StabilityOptions options;
  options.max_systems = max_systems;
  options.time_limit = std::chrono::duration<double>(time_limit);
  const StabilityReport r = is_core_stable(g, loaded.db, options);
  Json report;
  report["game"] = game_path;
  report["game_hash"] = game_hash(g);
  report["n"] = g.n();
  report["database"] = database_identity(loaded.db);
  report["database"]["source"] = loaded.source;
  report["stability"] = stability_json(r, timings);
  print(report);
  return 0;
}

Game random_game(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cents(0, 500);
  Game g(n);
  for (std::uint32_t m = 1; m < g.grand().bits; ++m) g.set_value(Coalition{m}, make_rational(cents(rng), 100));
  g.set_value(g.grand(), make_rational(50));
  return g;
}

int cmd_bench(int games, std::uint64_t seed, int threads) {
  Json report;
  Json gen = Json::array();
  for (int n = 1; n <= 4; ++n) {
    PelegOptions options;
    options.threads = threads;
    auto t0 = Clock::now();
    const MbcDatabase a = peleg(n, options);
    const double peleg_s = seconds_since(t0);
    t0 = Clock::now();
    const MbcDatabase b = mbc_via_vertices(n);
    const double vertex_s = seconds_since(t0);
    Json e;
    e["n"] = n;
    e["count"] = a.size();
    e["peleg_seconds"] = peleg_s;
    e["vertex_oracle_seconds"] = vertex_s;
    e["agree"] = a.collections() == b.collections();
    gen.push_back(std::move(e));
  }
  report["generation"] = std::move(gen);
  Json core = Json::array();
  std::mt19937_64 rng(seed);
  for (int n = 3; n <= 5; ++n) {
    const MbcDatabase db = peleg(n);
    double bs_s = 0;
    double poly_s = 0;
    int agree = 0;
    for (int k = 0; k < games; ++k) {
      const Game g = random_game(n, rng);
      auto t0 = Clock::now();
      const bool bs = is_balanced_game(g, db);
      bs_s += seconds_since(t0);
      t0 = Clock::now();
      VertexOptions vo;
      vo.max_free_dim = static_cast<std::size_t>(n);
      const bool poly = !std::holds_alternative<Infeasible>(
          min_over(core_system(g), RatVector(static_cast<std::size_t>(n)), vo));
      poly_s += seconds_since(t0);
      if (bs == poly) ++agree;
    }
    Json e;
    e["n"] = n;
    e["games"] = games;
    e["balancedness_seconds"] = bs_s;
    e["polytope_seconds"] = poly_s;
    e["agree"] = agree;
    core.push_back(std::move(e));
  }
  report["core_nonemptiness"] = std::move(core);
  print(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal balanced collections and core stability"};
  app.require_subcommand(1);
  int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Generate all minimal balanced collections on n players");
  int n = 0;
  std::string out_path;
  std::string set_system;
  std::string scratch;
  bool long_running = false;
  gen->add_option("-n", n, "Number of players")->required();
  gen->add_option("-o,--output", out_path, "Output file, or - for standard output")->required();
  gen->add_option("--set-system", set_system,
                  "Keep collections inside these coalitions, e.g. \"1,2;2,3\"");
  gen->add_option("--scratch", scratch, "Directory for sort shards (n >= 7)");
  gen->add_flag("--long-running", long_running, "Allow n >= 7");

  std::string game_path;
  std::string db_path;
  bool timings = false;
  auto* analyze = app.add_subcommand("analyze", "Coalition and game properties");
  std::vector<std::string> checks;
  analyze->add_option("game", game_path, "Game file")->required();
  analyze->add_option("--db", db_path, "MBCDB file (default: $MBC_DB_DIR/mbc<n>.db or generate)");
  analyze->add_option("--checks", checks, "core,exact,effective,sve,extendable,feasible")
      ->delimiter(',')
      ->required()
      ->check(CLI::IsMember({"core", "exact", "effective", "sve", "extendable", "feasible"}));
  analyze->add_flag("--timings", timings, "Include wall times");

  auto* stable = app.add_subcommand("stable", "Decide whether the core is a stable set");
  std::uint64_t max_systems = 0;
  double time_limit = 0;
  stable->add_option("game", game_path, "Game file")->required();
  stable->add_option("--db", db_path, "MBCDB file (default: $MBC_DB_DIR/mbc<n>.db or generate)");
  stable->add_option("--max-systems", max_systems, "Cap on systems per collection (0: none)");
  stable->add_option("--time-limit", time_limit, "Wall-time cap in seconds (0: none)")
      ->check(CLI::NonNegativeNumber);
  stable->add_flag("--timings", timings, "Include wall time per stage");

  auto* bench = app.add_subcommand("bench", "Timing comparison against the polytope oracles");
  int games = 20;
  std::uint64_t seed = 1;
  bench->add_option("--games", games, "Random games per size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    if (*gen) return cmd_gen(n, out_path, set_system, long_running, threads, scratch);
    if (*analyze) return cmd_analyze(game_path, db_path, checks, threads, timings);
    if (*stable) return cmd_stable(game_path, db_path, max_systems, time_limit, threads, timings);
    if (*bench) return cmd_bench(games, seed, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
