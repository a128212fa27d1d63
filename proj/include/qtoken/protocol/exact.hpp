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

#include <vector>

#include "qtoken/protocol/config.hpp"
#include "qtoken/qcore/measure.hpp"

namespace qtoken::protocol {

/// One leaf of the full measurement tree of Steps 1-7.
struct Branch {
  int m1 = 0;
  qcore::BellState bell = qcore::BellState::PhiPlus;  // true post-measurement Bell state
  int r1 = 0;                                         // reported bits
  int r2 = 0;
  int m2 = 0;
  double probability = 0.0;
};

struct ExactOptions {
  double alpha = 0.5;
  double phi1 = 0.0;
  /// Deterministic apparatus phases added on top of the configured Gaussian noise.
  double theta1 = 0.0;
  double theta2 = 0.0;
  qcore::BellLabeling labeling = qcore::BellLabeling::canonical();
};

/// Density-matrix evolution of the honest protocol summing every branch, no sampling.
/// Gaussian phase noise enters as its exact averaged channel; photon loss only
/// affects repetitions and is ignored here (results are conditional on delivery).
std::vector<Branch> exact_branches(const ProtocolConfig& config, const ExactOptions& options);

/// Sum of branch probabilities satisfying the verification condition.
double exact_acceptance(const ProtocolConfig& config, const ExactOptions& options);

}  // namespace qtoken::protocol
