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


#include "bcss/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "bcss/ber.hpp"
#include "bcss/xcorr.hpp"

namespace bcss::cli {
namespace {

const std::vector<std::string> kCommands{"corr-sweep", "ber-analytic", "ber-mc", "corr-hist"};
const std::vector<std::string> kVariants{"coherent", "coherent-derived", "nc-single",
                                         "nc-twouser", "nc-paper", "nc-derived"};

template <class T>
bool contains(const std::vector<T>& v, const T& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::string to_string(Format f) { return f == Format::kCsv ? "csv" : "json"; }

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

RunConfig RunConfig::defaults_for(const std::string& command) {
  require(contains(kCommands, command), "unknown command '" + command + "'");
  RunConfig c;
  c.command = command;
  if (command == "corr-sweep") {
    c.n_users = 5;
    c.epsilons = {0.0, 0.05, 0.1};
  } else if (command == "ber-analytic") {
    c.n_users = 2;
    c.epsilons = {0.1};
  } else if (command == "ber-mc") {
    c.n_users = 1;
    c.epsilons = {0.0};
  } else {
    c.n_users = 50;
    c.epsilons = {0.05};
  }
  return c;
}

void RunConfig::apply_json(const nlohmann::json& j) {
  require(j.is_object(), "config must be a JSON object");
  using Setter = std::function<void(const nlohmann::json&)>;
  const std::map<std::string, Setter> setters{
      {"command",
       [&](const nlohmann::json& v) {
         const auto cmd = v.get<std::string>();
         require(command.empty() || cmd == command,
                 "config is for '" + cmd + "' but the command is '" + command + "'");
         command = cmd;
       }},
      {"n_users", [&](const nlohmann::json& v) { n_users = v.get<int>(); }},
      {"symbol_duration", [&](const nlohmann::json& v) { symbol_duration = v.get<double>(); }},
      {"amplitude", [&](const nlohmann::json& v) { amplitude = v.get<double>(); }},
      {"family", [&](const nlohmann::json& v) { family = v.get<std::string>(); }},
      {"family_coeffs",
       [&](const nlohmann::json& v) { family_coeffs = v.get<std::vector<double>>(); }},
      {"samples_per_symbol",
       [&](const nlohmann::json& v) { samples_per_symbol = v.get<int>(); }},
      {"epsilons", [&](const nlohmann::json& v) { epsilons = v.get<std::vector<double>>(); }},
      {"delay_fill", [&](const nlohmann::json& v) { delay_fill = v.get<std::string>(); }},
      {"interferer_nu", [&](const nlohmann::json& v) { interferer_nu = v.get<double>(); }},
      {"phase_model", [&](const nlohmann::json& v) { phase_model = v.get<std::string>(); }},
      {"pairs",
       [&](const nlohmann::json& v) { pairs = v.get<std::vector<std::array<int, 2>>>(); }},
      {"nu_min", [&](const nlohmann::json& v) { nu_min = v.get<double>(); }},
      {"nu_max", [&](const nlohmann::json& v) { nu_max = v.get<double>(); }},
      {"nu_step", [&](const nlohmann::json& v) { nu_step = v.get<double>(); }},
      {"nu_points", [&](const nlohmann::json& v) { nu_points = v.get<int>(); }},
      {"numeric", [&](const nlohmann::json& v) { numeric = v.get<bool>(); }},
      {"families",
       [&](const nlohmann::json& v) { families = v.get<std::vector<std::string>>(); }},
      {"bins", [&](const nlohmann::json& v) { bins = v.get<int>(); }},
      {"ebn0_db", [&](const nlohmann::json& v) { ebn0_db = v.get<std::vector<double>>(); }},
      {"variants",
       [&](const nlohmann::json& v) { variants = v.get<std::vector<std::string>>(); }},
      {"detector", [&](const nlohmann::json& v) { detector = v.get<std::string>(); }},
      {"min_errors", [&](const nlohmann::json& v) { min_errors = v.get<std::uint64_t>(); }},
      {"max_bits", [&](const nlohmann::json& v) { max_bits = v.get<std::uint64_t>(); }},
      {"min_bits", [&](const nlohmann::json& v) { min_bits = v.get<std::uint64_t>(); }},
      {"seed", [&](const nlohmann::json& v) { seed = v.get<std::uint64_t>(); }},
      {"threads", [&](const nlohmann::json& v) { threads = v.get<unsigned>(); }},
      {"format", [&](const nlohmann::json& v) { format = parse_format(v.get<std::string>()); }},
      {"out", [&](const nlohmann::json& v) { out = v.get<std::string>(); }},
  };
  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    require(it != setters.end(), "unknown config key '" + key + "'");
    try {
      it->second(value);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config key '" + key + "': " + e.what());
    }
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["n_users"] = n_users;
  j["symbol_duration"] = symbol_duration;
  j["amplitude"] = amplitude;
  j["family"] = family;
  j["family_coeffs"] = family_coeffs;
  j["samples_per_symbol"] = samples_per_symbol;
  j["epsilons"] = epsilons;
  j["delay_fill"] = delay_fill;
  j["interferer_nu"] = interferer_nu;
  j["phase_model"] = phase_model;
  j["pairs"] = pairs;
  j["nu_min"] = nu_min;
  j["nu_max"] = nu_max;
  j["nu_step"] = nu_step;
  j["nu_points"] = nu_points;
  j["numeric"] = numeric;
  j["families"] = families;
  j["bins"] = bins;
  j["ebn0_db"] = ebn0_db;
  j["variants"] = variants;
  j["detector"] = detector;
  j["min_errors"] = min_errors;
  j["max_bits"] = max_bits;
  j["min_bits"] = min_bits;
  j["seed"] = seed;
  j["threads"] = threads;
  j["format"] = to_string(format);
  j["out"] = out;
  return j;
}

void RunConfig::validate() const {
  require(contains(kCommands, command), "unknown command '" + command + "'");
  chirp().validate();
  require(!epsilons.empty(), "epsilons must not be empty");
  for (double e : epsilons) require(e >= 0.0 && e < 1.0, "every epsilon must lie in [0, 1) T");
  require(delay_fill == "zero" || delay_fill == "repeat", "delay_fill must be zero or repeat");
  require(phase_model == "uniform" || phase_model == "fixed",
          "phase_model must be uniform or fixed");
  require(std::isfinite(interferer_nu), "interferer_nu must be finite");
  require(samples_per_symbol == 0 || samples_per_symbol >= 8 * n_users,
          "samples_per_symbol must be 0 (auto) or at least 8 N");
  for (const auto& p : pairs)
    require(p[0] >= 0 && p[0] < n_users && p[1] >= 0 && p[1] < n_users,
            "pair indices must lie in [0, N)");
  require(nu_step > 0.0 && nu_max >= nu_min, "nu grid must be nonempty");
  require(nu_points >= 1, "nu_points must be >= 1");
  require(!families.empty(), "families must not be empty");
  require(bins >= 1, "bins must be >= 1");
  require(!ebn0_db.empty(), "ebn0_db must not be empty");
  for (double d : ebn0_db) require(std::isfinite(d), "ebn0_db entries must be finite");
  require(!variants.empty(), "variants must not be empty");
  for (const auto& v : variants)
    require(contains(kVariants, v), "unknown variant '" + v + "'");
  require(detector == "noncoherent" || detector == "coherent",
          "detector must be noncoherent or coherent");
  require(max_bits > 0, "max_bits must be positive");
  if (command == "ber-analytic")
    require(n_users <= kMaxPatternUsers,
            "exact pattern sums support at most " + std::to_string(kMaxPatternUsers) +
                " users");
}

ChirpParams RunConfig::chirp() const {
  ChirpParams p;
  p.n_users = n_users;
  p.symbol_duration = symbol_duration;
  p.amplitude = amplitude;
  return p;
}

DelayFill RunConfig::fill() const {
  return delay_fill == "repeat" ? DelayFill::kRepeat : DelayFill::kZero;
}

Scenario RunConfig::scenario(double epsilon_t) const {
  const ChirpParams p = chirp();
  Scenario sc = make_uniform_scenario(n_users, epsilon_t * symbol_duration,
                                      doppler_from_normalized(p, interferer_nu), p);
  sc.family = family;
  sc.family_coeffs = family_coeffs;
  sc.delay_fill = fill();
  sc.phase_model = phase_model == "fixed" ? PhaseModel::kFixed : PhaseModel::kUniformRandom;
  if (samples_per_symbol > 0) sc.samples_per_symbol = samples_per_symbol;
  sc.validate();
  return sc;
}

}  // namespace bcss::cli
