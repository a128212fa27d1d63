// Copyright 2026 The qtoken Authors
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

#pragma once

#include <iosfwd>

#include "qtoken/cli/config.hpp"
#include "qtoken/harness/selftest.hpp"

namespace qtoken::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,       // selftest found a failing invariant
  kConfigError = 2,       // bad configuration, unreadable input or unwritable output
  kBudgetExhausted = 3,   // some trial ran out of photon repetitions
};

/// Single-point experiment. The report goes to `out` (text for csv, JSON for json);
/// with config.out set, completed transcripts are also written there.
int cmd_run(const RunConfiguration& config, std::ostream& out, std::ostream& err);

/// Writes the sweep table to config.out (default sweep.csv / sweep.json) and the
/// two-column plot file next to it as <path>.plot.dat.
int cmd_sweep(const RunConfiguration& config, std::ostream& out, std::ostream& err);

/// Forgery experiment with config.forge_strategy over config.forge_rounds rounds.
int cmd_forge(const RunConfiguration& config, std::ostream& out, std::ostream& err);

int cmd_selftest(const harness::SelftestOptions& options, std::ostream& out, std::ostream& err);

}  // namespace qtoken::cli
