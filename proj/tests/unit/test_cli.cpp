// SPDX-License-Identifier: Apache-2.0
//
// bcss: multi-user binary chirp spread spectrum analysis
// Copyright (C) 2026 The bcss authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcss/cli/commands.hpp"
#include "bcss/cli/config.hpp"
#include "bcss/cli/report.hpp"

namespace {

using namespace bcss::cli;
namespace fs = std::filesystem;

struct CliRun {
  int rc = 0;
  std::string out;
  std::string err;
};

fs::path write_config(const nlohmann::json& j, const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bcss_test_" + name + ".json");
  std::ofstream(p) << j.dump();
  return p;
}

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "bcss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const Table& table(const Report& r, const std::string& name) {
  for (const auto& t : r.tables)
    if (t.name == name) return t;
  throw std::out_of_range(name);
}

std::size_t col(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  throw std::out_of_range(name);
}

double num(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return static_cast<double>(std::get<std::int64_t>(v));
}

TEST(Config, CommandDefaults) {
  EXPECT_EQ(RunConfig::defaults_for("corr-sweep").n_users, 5);
  EXPECT_EQ(RunConfig::defaults_for("ber-analytic").n_users, 2);
  EXPECT_EQ(RunConfig::defaults_for("corr-hist").n_users, 50);
  EXPECT_EQ(RunConfig::defaults_for("ber-mc").seed, 20261015U);
  EXPECT_THROW(RunConfig::defaults_for("nope"), std::invalid_argument);
}

TEST(Config, RejectsUnknownKeys) {
  auto cfg = RunConfig::defaults_for("ber-analytic");
  EXPECT_THROW(cfg.apply_json({{"n_user", 3}}), std::invalid_argument);
  cfg.apply_json({{"n_users", 3}});
  EXPECT_EQ(cfg.n_users, 3);
}

TEST(Config, RoundTripsThroughJson) {
  auto cfg = RunConfig::defaults_for("corr-hist");
  cfg.apply_json({{"families", {"linear", "poly-sweep"}}, {"family_coeffs", {0.0, 0.1}}});
  auto copy = RunConfig::defaults_for("corr-hist");
  copy.apply_json(cfg.to_json());
  EXPECT_EQ(copy.to_json(), cfg.to_json());
}

TEST(Config, ValidationErrors) {
  auto cfg = RunConfig::defaults_for("ber-analytic");
  cfg.n_users = 25;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = RunConfig::defaults_for("corr-sweep");
  cfg.delay_fill = "wrap";
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = RunConfig::defaults_for("ber-mc");
  cfg.detector = "psychic";
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(CliArgs, FlagsOverrideConfigFile) {
  const auto p = write_config({{"seed", 5}, {"ebn0_db", {0.0}}, {"max_bits", 4096},
                               {"min_errors", 1}},
                              "precedence");
  const auto r = run({"ber-mc", "--config", p.string(), "--seed", "77", "--format", "json"});
  ASSERT_EQ(r.rc, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["seed"], 77);
  EXPECT_EQ(j["config"]["seed"], 77);
  EXPECT_EQ(j["config"]["max_bits"], 4096);
}

TEST(CliArgs, BadInputExitsWithTwo) {
  const auto p = write_config({{"family", "zigzag"}}, "badfamily");
  const auto r = run({"corr-sweep", "--config", p.string()});
  EXPECT_EQ(r.rc, 2);
  EXPECT_NE(r.err.find("linear"), std::string::npos);
  EXPECT_NE(r.err.find("poly-sweep"), std::string::npos);

  const auto q = write_config({{"n_users", 30}}, "toomany");
  EXPECT_EQ(run({"ber-analytic", "--config", q.string()}).rc, 2);

  const auto bad = fs::temp_directory_path() / "bcss_test_broken.json";
  std::ofstream(bad) << "{not json";
  EXPECT_EQ(run({"ber-analytic", "--config", bad.string()}).rc, 2);

  EXPECT_NE(run({"no-such-command"}).rc, 0);
}

TEST(CorrSweep, PeaksAtUserSpacingInDoppler) {
  auto cfg = RunConfig::defaults_for("corr-sweep");
  cfg.epsilons = {0.0};
  cfg.pairs = {{{0, 1}}, {{0, 2}}};
  cfg.numeric = false;
  const auto rep = run_command(cfg);
  const auto& t = table(rep, "correlation");
  const auto ck = col(t, "k");
  const auto cn = col(t, "nu");
  const auto ca = col(t, "abs_analytic");
  for (int k : {1, 2}) {
    double best = -1.0;
    double at = -1.0;
    for (const auto& row : t.rows) {
      if (std::get<std::int64_t>(row[ck]) != k) continue;
      if (num(row[ca]) > best) {
        best = num(row[ca]);
        at = num(row[cn]);
      }
    }
    EXPECT_NEAR(at, 0.2 * k, 1e-9);
    EXPECT_NEAR(best, 1.0, 1e-12);
  }
}

TEST(CorrSweep, AnalyticMatchesNumeric) {
  auto cfg = RunConfig::defaults_for("corr-sweep");
  cfg.epsilons = {0.1};
  cfg.pairs = {{{0, 3}}};
  cfg.nu_step = 0.05;
  const auto rep = run_command(cfg);
  const auto& t = table(rep, "correlation");
  for (const auto& row : t.rows) {
    EXPECT_NEAR(num(row[col(t, "re_analytic")]), num(row[col(t, "re_numeric")]), 1e-3);
    EXPECT_NEAR(num(row[col(t, "im_analytic")]), num(row[col(t, "im_numeric")]), 1e-3);
  }
}

TEST(BerAnalytic, ReducesToSingleUserWhenSynchronous) {
  auto cfg = RunConfig::defaults_for("ber-analytic");
  cfg.epsilons = {0.0};
  cfg.ebn0_db = {0.0, 6.0};
  const auto rep = run_command(cfg);
  const auto& t = table(rep, "ber");
  EXPECT_NEAR(num(t.rows[0][col(t, "nc-single")]), 0.5 * std::exp(-0.5), 1e-15);
  for (const auto& row : t.rows) {
    const double s = num(row[col(t, "nc-single")]);
    EXPECT_NEAR(num(row[col(t, "nc-twouser")]), s, 1e-14);
    EXPECT_NEAR(num(row[col(t, "nc-paper")]), s, 1e-14);
    EXPECT_NEAR(num(row[col(t, "nc-derived")]), s, 1e-14);
  }
}

TEST(BerAnalytic, TwoUserColumnIsNanForMoreUsers) {
  auto cfg = RunConfig::defaults_for("ber-analytic");
  cfg.n_users = 3;
  cfg.ebn0_db = {4.0};
  const auto rep = run_command(cfg);
  const auto& t = table(rep, "ber");
  EXPECT_TRUE(std::isnan(num(t.rows[0][col(t, "nc-twouser")])));
  EXPECT_FALSE(rep.notes.empty());
}

TEST(BerMc, NoErrorsWithoutNoiseOrInterference) {
  auto cfg = RunConfig::defaults_for("ber-mc");
  cfg.ebn0_db = {300.0};
  cfg.max_bits = 8192;
  const auto rep = run_command(cfg);
  const auto& t = table(rep, "ber");
  EXPECT_EQ(num(t.rows[0][col(t, "ber")]), 0.0);
  EXPECT_EQ(num(t.rows[0][col(t, "bits")]), 8192.0);
  EXPECT_FALSE(std::get<bool>(t.rows[0][col(t, "reached_min_errors")]));
  bool warned = false;
  for (const auto& n : rep.notes) warned = warned || n.find("warning") != std::string::npos;
  EXPECT_TRUE(warned);
}

TEST(Output, RerunsAreByteIdentical) {
  const auto p = write_config({{"n_users", 2}, {"epsilons", {0.1}}, {"ebn0_db", {2.0, 6.0}},
                               {"max_bits", 20000}},
                              "rerun");
  const auto a = run({"ber-mc", "--config", p.string(), "--threads", "1"});
  const auto b = run({"ber-mc", "--config", p.string(), "--threads", "3"});
  ASSERT_EQ(a.rc, 0) << a.err;
  ASSERT_EQ(b.rc, 0) << b.err;
  // threads appears in the echoed config; compare the tables only
  const auto tail = [](const std::string& s) { return s.substr(s.find("# table:")); };
  EXPECT_EQ(tail(a.out), tail(b.out));
  EXPECT_EQ(a.out, run({"ber-mc", "--config", p.string(), "--threads", "1"}).out);
  EXPECT_EQ(a.out.find('\r'), std::string::npos);
}

TEST(Output, JsonMirrorsCsv) {
  auto cfg = RunConfig::defaults_for("ber-analytic");
  cfg.ebn0_db = {0.0, 10.0};
  const auto rep = run_command(cfg);
  const auto csv = render_csv(rep);
  const auto j = nlohmann::json::parse(render_json(rep));
  EXPECT_EQ(j["command"], "ber-analytic");
  ASSERT_EQ(j["tables"].size(), 1U);
  const auto& t = j["tables"][0];
  EXPECT_EQ(t["columns"].size(), rep.tables[0].columns.size());
  EXPECT_EQ(t["rows"].size(), rep.tables[0].rows.size());
  std::istringstream in(csv);
  std::string line;
  std::size_t data_lines = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header) {
      header = true;
      continue;
    }
    ++data_lines;
  }
  EXPECT_EQ(data_lines, rep.tables[0].rows.size());
  EXPECT_EQ(csv.rfind("# bcss ", 0), 0U);
}

TEST(Output, WritesToFile) {
  const auto out = fs::temp_directory_path() / "bcss_test_out.csv";
  fs::remove(out);
  const auto r = run({"ber-analytic", "--out", out.string()});
  ASSERT_EQ(r.rc, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_GT(fs::file_size(out), 0U);
}

TEST(CorrHist, SynchronousZeroDopplerIsDegenerate) {
  auto cfg = RunConfig::defaults_for("corr-hist");
  cfg.n_users = 6;
  cfg.epsilons = {0.0};
  cfg.nu_min = 0.0;
  cfg.nu_max = 0.0;
  cfg.nu_points = 1;
  const auto rep = run_command(cfg);
  const auto& s = table(rep, "summary");
  EXPECT_EQ(num(s.rows[0][col(s, "samples")]), 30.0);
  EXPECT_LT(num(s.rows[0][col(s, "max")]), 1e-12);
  const auto& h = table(rep, "histogram");
  EXPECT_EQ(num(h.rows[0][col(h, "count")]), 30.0);
}

TEST(CorrHist, CountsSumToSamples) {
  auto cfg = RunConfig::defaults_for("corr-hist");
  cfg.n_users = 8;
  cfg.nu_points = 40;
  cfg.families = {"linear", "poly-sweep"};
  cfg.family_coeffs = {0.0, 0.05};
  const auto rep = run_command(cfg);
  const auto& h = table(rep, "histogram");
  const auto& s = table(rep, "summary");
  ASSERT_EQ(s.rows.size(), 2U);
  double total = 0.0;
  for (const auto& row : h.rows) total += num(row[col(h, "count")]);
  EXPECT_EQ(total, 2.0 * 8 * 7 * 40);
}

}  // namespace
