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
#include <stdexcept>

#include "qtoken/qcore/channel.hpp"
#include "qtoken/qcore/measure.hpp"

namespace qtoken::noise {

using qcore::Rng;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// How the ancilla-memory preparation weight alpha is chosen per run.
struct AlphaMode {
  enum class Kind { fixed, uniform01 };
  Kind kind = Kind::fixed;
  double value = 0.5;  // used when kind == fixed

  static AlphaMode fixed(double alpha) { return {Kind::fixed, alpha}; }
  static AlphaMode uniform() { return {Kind::uniform01, 0.5}; }

  bool operator==(const AlphaMode&) const = default;
};

/// delta: theta1 ~ N(0, sigma^2), theta2 = 0, so the relative phase has variance sigma^2.
/// independent: theta1, theta2 iid N(0, sigma^2).
enum class PhaseNoiseMode { delta, independent };

/// readout: with probability 1 - f_bsm the reported Bell bits are uniformly random.
/// depolarizing: (A, M) pass through rho -> f rho + (1 - f) I/4 before an ideal BSM.
enum class BsmModel { readout, depolarizing };

struct NoiseConfig {
  AlphaMode alpha_mode{};
  double sigma_theta = 0.0;  // radians
  double delta_phi = 0.0;    // phi1 - phi2, radians
  double t_s = 0.0;          // storage time
  double t_m = 1.0;          // memory lifetime, same units as t_s
  double f_bsm = 1.0;
  double p_loss = 0.0;
  int max_repetitions = 100;
  PhaseNoiseMode phase_mode = PhaseNoiseMode::delta;
  BsmModel bsm_model = BsmModel::readout;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const NoiseConfig&) const = default;
};

double sample_alpha(const AlphaMode& mode, Rng& rng);
double sample_phase_noise(double sigma, Rng& rng);

struct PhaseSample {
  double theta1 = 0.0;
  double theta2 = 0.0;
};
PhaseSample sample_phases(const NoiseConfig& config, Rng& rng);

/// e^{-t_s / t_m}.
double dephasing_factor(double t_s, double t_m);

/// Phase-flip channel with p = (1 - e^{-t_s/t_m}) / 2 on the memory.
qcore::KrausChannel memory_dephasing_channel(double t_s, double t_m);

/// Gaussian random phase on |1> averaged exactly: coherence scaled by e^{-sigma^2/2}.
qcore::KrausChannel gaussian_phase_channel(double sigma);

struct BsmReadout {
  int r1 = 0;
  int r2 = 0;
  bool scrambled = false;                      // readout model: reported bits were random
  qcore::BellState true_state = qcore::BellState::PhiPlus;
  qcore::StateVector state;
};

BsmReadout noisy_bsm(const qcore::StateVector& state, qcore::Qubit first, qcore::Qubit second, double f_bsm,
                     BsmModel model, Rng& rng,
                     const qcore::BellLabeling& labeling = qcore::BellLabeling::canonical());

/// Bernoulli(1 - p_loss).
bool attempt_photon(double p_loss, Rng& rng);

/// Number of attempts until the first delivered photon, or nullopt when
/// `max_repetitions` consecutive attempts are lost.
std::optional<int> attempts_until_delivered(double p_loss, int max_repetitions, Rng& rng);

}  // namespace qtoken::noise
