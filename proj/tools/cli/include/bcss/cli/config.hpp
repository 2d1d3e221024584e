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


#ifndef BCSS_CLI_CONFIG_HPP
#define BCSS_CLI_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcss/scenario.hpp"

namespace bcss::cli {

enum class Format { kCsv, kJson };

/// Everything one command run depends on. Precedence when building it:
/// per-command defaults, then the JSON config file, then command-line flags.
struct RunConfig {
  std::string command;

  // Signal set and channel.
  int n_users = 2;
  double symbol_duration = 1.0;
  double amplitude = 1.4142135623730951;
  std::string family = "linear";
  std::vector<double> family_coeffs;
  int samples_per_symbol = 0;  // 0: smallest >= 64 N that represents every delay
  std::vector<double> epsilons{0.0};  // delays in units of T
  std::string delay_fill = "zero";    // zero | repeat
  double interferer_nu = 0.0;         // normalized Doppler of every interferer
  std::string phase_model = "uniform";  // uniform | fixed

  // corr-sweep / corr-hist.
  std::vector<std::array<int, 2>> pairs;  // (m, k); empty: all ordered pairs m != k
  double nu_min = 0.0;
  double nu_max = 1.0;
  double nu_step = 0.005;
  int nu_points = 200;
  bool numeric = true;
  std::vector<std::string> families{"linear"};
  int bins = 50;

  // ber-analytic / ber-mc.
  std::vector<double> ebn0_db{0, 2, 4, 6, 8, 10, 12};
  std::vector<std::string> variants{"coherent", "coherent-derived", "nc-single",
                                    "nc-twouser", "nc-paper",  "nc-derived"};
  std::string detector = "noncoherent";  // noncoherent | coherent
  std::uint64_t min_errors = 200;
  std::uint64_t max_bits = 10'000'000;
  std::uint64_t min_bits = 0;

  // Run control.
  std::uint64_t seed = 20261015;
  unsigned threads = 1;
  Format format = Format::kCsv;
  std::string out;  // empty: standard output

  /// Defaults for one of corr-sweep, ber-analytic, ber-mc, corr-hist.
  /// Unknown commands throw std::invalid_argument.
  static RunConfig defaults_for(const std::string& command);

  /// Overrides fields present in `j`. Unknown keys and wrong types throw
  /// std::invalid_argument.
  void apply_json(const nlohmann::json& j);

  /// Every field, keys sorted; written into output metadata.
  nlohmann::json to_json() const;

  /// Throws std::invalid_argument on empty grids or out-of-range values.
  void validate() const;

  ChirpParams chirp() const;
  DelayFill fill() const;

  /// N users, victim 0, every interferer delayed by `epsilon_t` T and shifted
  /// by interferer_nu.
  Scenario scenario(double epsilon_t) const;
};

std::string to_string(Format f);
Format parse_format(const std::string& s);

}  // namespace bcss::cli

#endif  // BCSS_CLI_CONFIG_HPP
