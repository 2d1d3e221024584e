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


#ifndef BCSS_CLI_COMMANDS_HPP
#define BCSS_CLI_COMMANDS_HPP

#include <iosfwd>

#include "bcss/cli/config.hpp"
#include "bcss/cli/report.hpp"

namespace bcss::cli {

/// Correlation magnitude and parts against normalized Doppler nu = delta_f T / N
/// for each delay and (m, k) pair; user m carries the delay and Doppler and
/// user k is the reference. Closed form (linear family) and numeric columns.
Report cmd_corr_sweep(const RunConfig& cfg);

/// Analytic BER per requested variant over the Eb/N0 grid, one block per delay.
Report cmd_ber_analytic(const RunConfig& cfg);

/// Monte Carlo BER of user 0 over the Eb/N0 grid, one block per delay.
Report cmd_ber_mc(const RunConfig& cfg);

/// Histogram and mean/std/max of |rho| over all ordered pairs and a uniform
/// nu grid of nu_points points, per family and delay.
Report cmd_corr_hist(const RunConfig& cfg);

Report run_command(const RunConfig& cfg);

/// Command-line entry point: `bcss <command> [--config f] [--seed s]
/// [--out p] [--format csv|json] [--threads n]`. Returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bcss::cli

#endif  // BCSS_CLI_COMMANDS_HPP
