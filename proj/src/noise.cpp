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

#include "qtoken/noise/noise.hpp"

#include <cmath>
#include <string>

namespace qtoken::noise {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw ConfigError(message);
  }
}

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void NoiseConfig::validate() const {
  if (alpha_mode.kind == AlphaMode::Kind::fixed) {
    require(probability(alpha_mode.value), "alpha must lie in [0, 1]");
  }
  require(std::isfinite(sigma_theta) && sigma_theta >= 0.0, "sigma_theta must be >= 0");
  require(std::isfinite(delta_phi), "delta_phi must be finite");
  require(std::isfinite(t_s) && t_s >= 0.0, "t_s must be >= 0");
  require(std::isfinite(t_m) && t_m > 0.0, "t_m must be > 0");
  require(probability(f_bsm), "f_bsm must lie in [0, 1]");
  require(probability(p_loss), "p_loss must lie in [0, 1]");
  require(max_repetitions >= 1, "max_repetitions must be >= 1");
}

double sample_alpha(const AlphaMode& mode, Rng& rng) {
  if (mode.kind == AlphaMode::Kind::fixed) {
    return mode.value;
  }
  return qcore::uniform01(rng);
}

double sample_phase_noise(double sigma, Rng& rng) {
  if (sigma == 0.0) {
    return 0.0;
  }
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

PhaseSample sample_phases(const NoiseConfig& config, Rng& rng) {
  PhaseSample s;
  s.theta1 = sample_phase_noise(config.sigma_theta, rng);
  if (config.phase_mode == PhaseNoiseMode::independent) {
    s.theta2 = sample_phase_noise(config.sigma_theta, rng);
  }
  return s;
}

double dephasing_factor(double t_s, double t_m) {
  if (!(t_m > 0.0)) {
    throw ConfigError("memory lifetime t_m must be > 0");
  }
  if (!(t_s >= 0.0)) {
    throw ConfigError("storage time t_s must be >= 0");
  }
  return std::exp(-t_s / t_m);
}

qcore::KrausChannel memory_dephasing_channel(double t_s, double t_m) {
  return qcore::KrausChannel::phase_flip((1.0 - dephasing_factor(t_s, t_m)) / 2.0);
}

qcore::KrausChannel gaussian_phase_channel(double sigma) {
  if (!(sigma >= 0.0)) {
    throw ConfigError("sigma must be >= 0");
  }
  return qcore::KrausChannel::phase_flip((1.0 - std::exp(-sigma * sigma / 2.0)) / 2.0);
}

BsmReadout noisy_bsm(const qcore::StateVector& state, qcore::Qubit first, qcore::Qubit second, double f_bsm,
                     BsmModel model, Rng& rng, const qcore::BellLabeling& labeling) {
  if (!probability(f_bsm)) {
    throw ConfigError("f_bsm must lie in [0, 1]");
  }
  if (model == BsmModel::depolarizing) {
    const auto noisy =
        f_bsm < 1.0 ? qcore::sample_channel(state, qcore::KrausChannel::two_qubit_depolarizing(f_bsm),
                                            {first, second}, rng)
                    : state;
    auto m = qcore::bell_measure(noisy, first, second, rng, labeling);
    return {m.r1, m.r2, false, m.which, std::move(m.state)};
  }
  const bool scrambled = f_bsm < 1.0 && qcore::uniform01(rng) >= f_bsm;
  auto m = qcore::bell_measure(state, first, second, rng, labeling);
  if (!scrambled) {
    return {m.r1, m.r2, false, m.which, std::move(m.state)};
  }
  const auto bits = rng();
  return {static_cast<int>(bits & 1U), static_cast<int>((bits >> 1) & 1U), true, m.which, std::move(m.state)};
}

bool attempt_photon(double p_loss, Rng& rng) {
  if (!probability(p_loss)) {
    throw ConfigError("p_loss must lie in [0, 1]");
  }
  if (p_loss == 0.0) {
    return true;
  }
  return qcore::uniform01(rng) >= p_loss;
}

std::optional<int> attempts_until_delivered(double p_loss, int max_repetitions, Rng& rng) {
  for (int attempt = 1; attempt <= max_repetitions; ++attempt) {
    if (attempt_photon(p_loss, rng)) {
      return attempt;
    }
  }
  return std::nullopt;
}

}  // namespace qtoken::noise
