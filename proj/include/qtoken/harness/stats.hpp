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

namespace qtoken::harness {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double halfwidth() const { return (hi - lo) / 2.0; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval for `successes` out of `n` Bernoulli trials.
Interval wilson(std::uint64_t successes, std::uint64_t n, double z = kZ95);

/// sqrt(p (1 - p) / n).
double standard_error(double p, std::uint64_t n);

}  // namespace qtoken::harness
