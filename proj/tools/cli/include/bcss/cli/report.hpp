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


#ifndef BCSS_CLI_REPORT_HPP
#define BCSS_CLI_REPORT_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcss/cli/config.hpp"

namespace bcss::cli {

using Value = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

/// Output of one command. Both renderings carry the same fields.
struct Report {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
  std::vector<Table> tables;
};

/// Shortest representation that round-trips; "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

/// `#` metadata lines (version, command, config, seed, notes), then for each
/// table a `# table: <name>` line, the header row and the data rows. LF only.
std::string render_csv(const Report& r);

/// {"version", "command", "config", "seed", "notes", "tables": [{"name",
/// "columns", "rows"}]}; non-finite numbers become null.
std::string render_json(const Report& r);

std::string render(const Report& r, Format f);

}  // namespace bcss::cli

#endif  // BCSS_CLI_REPORT_HPP
