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

#include <functional>
#include <stdexcept>

#include "qtoken/protocol/config.hpp"

namespace qtoken::analytics {

/// Per-token verification fidelity with ideal Bell measurement:
/// 1/2 [1 + 2 sqrt(alpha (1 - alpha)) cos(delta_theta - delta_phi)].
double f_verif(double alpha, double delta_theta, double delta_phi);

/// Closed form averaged over uniform alpha and Gaussian delta_theta, with memory decay:
/// 1/2 [1 + (pi/4) e^{-t_s/t_m} e^{-sigma^2/2} cos(delta_phi)].
double f_verif_avg(double t_s, double t_m, double sigma_theta, double delta_phi);

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Independent route to f_verif_avg: nested adaptive quadrature of f_verif over
/// alpha in [0, 1] and the Gaussian density of delta_theta, with the interference
/// term damped by e^{-t_s/t_m}. Throws QuadratureError above `tolerance`.
double f_verif_avg_numeric(double t_s, double t_m, double sigma_theta, double delta_phi, double tolerance = 1e-9);

/// Integral over [0, 1] with tanh-sinh quadrature (endpoint singularities allowed).
double integrate_unit(const std::function<double(double)>& f, double tolerance = 1e-10);

/// Gap: completeness minus forgery acceptance.
double soundness(double f_verif_avg, double f_forge);

/// f_verif_avg^n.
double forge_bound(double f_verif_avg, int n);

struct SecurityMetrics {
  double f_verif_avg = 0.0;
  double f_forge_single = 0.5;
  double epsilon_sound = 0.0;
  double f_forge_n = 0.0;   // (f_verif_avg)^n
  double guess_n = 0.0;     // (1/2)^n, the per-round guessing base
};

SecurityMetrics security_metrics(double f_verif_avg, int n);

/// Closed-form honest acceptance for a full configuration. Uniform alpha, delta phase
/// mode and f_bsm = 1 reduce it to f_verif_avg. Fixed alpha replaces pi/4 by
/// 2 sqrt(alpha (1 - alpha)); independent phase noise doubles the variance; BSM
/// infidelity mixes in a fair coin: f F + (1 - f)/2. NaN without active correction.
double predicted_acceptance(const protocol::ProtocolConfig& config);

}  // namespace qtoken::analytics
