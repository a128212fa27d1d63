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

#include "qtoken/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtoken::harness {

Interval wilson(std::uint64_t successes, std::uint64_t n, double z) {
  if (successes > n) {
    throw std::invalid_argument("more successes than trials");
  }
  if (n == 0) {
    return {0.0, 1.0};
  }
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // Clamp guards rounding at p = 0 or 1 so the interval always contains p.
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0), std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

double standard_error(double p, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("standard error of zero trials");
  }
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace qtoken::harness
