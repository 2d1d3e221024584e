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


#include "bcss/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "bcss/version.hpp"

namespace bcss::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_field(x);
        } else {
          return std::to_string(x);
        }
      },
      v);
}

nlohmann::json cell_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return nullptr;
        }
        return x;
      },
      v);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, res.ptr};
}

std::string render_csv(const Report& r) {
  std::string out;
  out += "# bcss " + std::string(kVersion) + "\n";
  out += "# command: " + r.command + "\n";
  out += "# config: " + r.config.dump() + "\n";
  out += "# seed: " + std::to_string(r.seed) + "\n";
  for (const auto& n : r.notes) out += "# note: " + n + "\n";
  for (const auto& t : r.tables) {
    out += "# table: " + t.name + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      out += (i ? "," : "") + csv_field(t.columns[i]);
    out += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
      out += "\n";
    }
  }
  return out;
}

std::string render_json(const Report& r) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["command"] = r.command;
  j["config"] = r.config;
  j["seed"] = r.seed;
  j["notes"] = r.notes;
  j["tables"] = nlohmann::json::array();
  for (const auto& t : r.tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& v : row) jr.push_back(cell_json(v));
      rows.push_back(std::move(jr));
    }
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  return j.dump(2) + "\n";
}

std::string render(const Report& r, Format f) {
  return f == Format::kCsv ? render_csv(r) : render_json(r);
}

}  // namespace bcss::cli
