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

#include <optional>

#include "qtoken/noise/noise.hpp"

namespace qtoken::protocol {

struct ProtocolConfig {
  noise::NoiseConfig noise{};
  /// Bank's secret phase. nullopt: drawn uniformly from [0, 2 pi) per session.
  std::optional<double> phi1{};
  /// Verifier flips P2 (X on the time bin) when r1 = 1 before reading it.
  bool active_correction = true;
  /// Swap the memory onto the ancilla before the Bell measurement.
  bool swap_before_bsm = false;

  void validate() const { noise.validate(); }

  bool operator==(const ProtocolConfig&) const = default;
};

}  // namespace qtoken::protocol
