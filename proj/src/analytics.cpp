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

#include "qtoken/analytics/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace qtoken::analytics {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
}

void check_lifetime(double t_m) {
  if (!(t_m > 0.0)) {
    throw std::invalid_argument("t_m must be > 0");
  }
}

// Gaussian support is truncated where the density is below 1e-55 of its peak.
constexpr double kGaussianHalfWidth = 16.0;

}  // namespace

double f_verif(double alpha, double delta_theta, double delta_phi) {
  check_alpha(alpha);
  return 0.5 * (1.0 + 2.0 * std::sqrt(alpha * (1.0 - alpha)) * std::cos(delta_theta - delta_phi));
}

double f_verif_avg(double t_s, double t_m, double sigma_theta, double delta_phi) {
  check_lifetime(t_m);
  return 0.5 * (1.0 + std::numbers::pi / 4.0 * std::exp(-t_s / t_m) *
                          std::exp(-sigma_theta * sigma_theta / 2.0) * std::cos(delta_phi));
}

double integrate_unit(const std::function<double(double)>& f, double tolerance) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, 0.0, 1.0, tolerance, &error, &l1);
  if (!(error <= std::max(tolerance, 1e3 * std::numeric_limits<double>::epsilon()) * std::max(1.0, l1))) {
    throw QuadratureError("tanh-sinh quadrature did not reach the requested tolerance", error);
  }
  return value;
}

double f_verif_avg_numeric(double t_s, double t_m, double sigma_theta, double delta_phi, double tolerance) {
  check_lifetime(t_m);
  if (!(sigma_theta >= 0.0)) {
    throw std::invalid_argument("sigma_theta must be >= 0");
  }
  const double damping = std::exp(-t_s / t_m);
  const auto damped = [&](double alpha, double delta_theta) {
    return 0.5 * (1.0 + damping * (2.0 * f_verif(alpha, delta_theta, delta_phi) - 1.0));
  };

  double worst_inner_error = 0.0;
  const auto over_phase = [&](double alpha) {
    if (sigma_theta == 0.0) {
      return damped(alpha, 0.0);
    }
    const double norm = 1.0 / (sigma_theta * std::sqrt(2.0 * std::numbers::pi));
    const auto weighted = [&](double x) {
      const double z = x / sigma_theta;
      return norm * std::exp(-0.5 * z * z) * damped(alpha, x);
    };
    double error = 0.0;
    const double half = kGaussianHalfWidth * sigma_theta;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(weighted, -half, half, 8,
                                                                                   tolerance * 1e-3, &error);
    worst_inner_error = std::max(worst_inner_error, error);
    return v;
  };

  boost::math::quadrature::tanh_sinh<double> integrator;
  double outer_error = 0.0;
  const double value = integrator.integrate(over_phase, 0.0, 1.0, tolerance * 1e-2, &outer_error);
  const double achieved = outer_error + worst_inner_error;
  if (!(achieved <= tolerance)) {
    throw QuadratureError("averaged-fidelity quadrature did not converge", achieved);
  }
  return value;
}

double soundness(double f_verif_avg, double f_forge) { return f_verif_avg - f_forge; }

double forge_bound(double f_verif_avg, int n) {
  if (n < 1) {
    throw std::invalid_argument("forge_bound needs n >= 1");
  }
  return std::pow(f_verif_avg, n);
}

SecurityMetrics security_metrics(double f_verif_avg_value, int n) {
  SecurityMetrics m;
  m.f_verif_avg = f_verif_avg_value;
  m.f_forge_single = 0.5;
  m.epsilon_sound = soundness(f_verif_avg_value, m.f_forge_single);
  m.f_forge_n = forge_bound(f_verif_avg_value, n);
  m.guess_n = std::pow(0.5, n);
  return m;
}

double predicted_acceptance(const protocol::ProtocolConfig& config) {
  config.validate();
  if (!config.active_correction) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const auto& n = config.noise;
  const double alpha_term = n.alpha_mode.kind == noise::AlphaMode::Kind::uniform01
                                ? std::numbers::pi / 4.0
                                : 2.0 * std::sqrt(n.alpha_mode.value * (1.0 - n.alpha_mode.value));
  const double variance =
      n.phase_mode == noise::PhaseNoiseMode::independent ? 2.0 * n.sigma_theta * n.sigma_theta
                                                         : n.sigma_theta * n.sigma_theta;
  const double ideal =
      0.5 * (1.0 + alpha_term * std::exp(-n.t_s / n.t_m) * std::exp(-variance / 2.0) * std::cos(n.delta_phi));
  return n.f_bsm * ideal + (1.0 - n.f_bsm) / 2.0;
}

}  // namespace qtoken::analytics
