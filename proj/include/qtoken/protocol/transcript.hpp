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

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qtoken::protocol {

/// The bank's secret for one issued token.
struct TokenRecord {
  double phi = 0.0;  // [0, 2 pi)
  int m1 = 0;
  std::uint64_t issued_at = 0;
};

/// Classical record of one protocol session.
struct Transcript {
  std::uint64_t seed = 0;
  int m1 = 0;
  int r1 = 0;
  int r2 = 0;
  int m2 = 0;
  bool accepted = false;
  int repetitions_used = 1;
  double sampled_alpha = 0.0;
  double sampled_theta1 = 0.0;
  double sampled_theta2 = 0.0;
  /// Photon-loss budget exhausted; no verification took place.
  bool failed = false;

  bool operator==(const Transcript&) const = default;
};

/// Column order: seed, m1, r1, r2, m2, accepted, repetitions_used,
/// sampled_alpha, sampled_theta1, sampled_theta2.
std::string transcript_csv_header();
std::string to_csv_row(const Transcript& t);
std::string to_json_line(const Transcript& t);

}  // namespace qtoken::protocol
