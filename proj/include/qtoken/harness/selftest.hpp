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
#include <string>
#include <vector>

#include "qtoken/qcore/measure.hpp"

namespace qtoken::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  /// Test hook: swaps the reported bits of Phi- and Psi-. The teleportation
  /// check must catch it.
  bool corrupt_bell_labels = false;
  std::uint64_t seed = 20260101;
};

/// Labeling used by the corrupt_bell_labels hook.
qcore::BellLabeling corrupted_labeling();

/// Unitarity, CPTP, teleportation brute force, oracle agreements, interferometer
/// equivalence and determinism. Runs in a few seconds.
std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

/// One "PASS name (detail)" / "FAIL ..." line per check; returns true iff all pass.
bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace qtoken::harness
