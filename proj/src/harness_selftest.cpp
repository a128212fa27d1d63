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

#include "qtoken/harness/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>

#include "qtoken/analytics/analytics.hpp"
#include "qtoken/harness/experiment.hpp"
#include "qtoken/noise/noise.hpp"
#include "qtoken/protocol/exact.hpp"
#include "qtoken/protocol/steps.hpp"
#include "qtoken/qcore/channel.hpp"
#include "qtoken/qcore/gates.hpp"
#include "qtoken/util/format.hpp"

namespace qtoken::harness {

using protocol::ProtocolConfig;
using qcore::Qubit;
using util::format_double;

namespace {

std::string sci(double v) { return format_double(v, 3); }

CheckResult check_gates() {
  namespace g = qcore::gates;
  double worst = 0.0;
  for (const auto& u : {g::hadamard(), g::pauli_x(), g::pauli_y(), g::pauli_z(), g::phase(0.7), g::ry(1.1),
                        g::cnot(), g::swap(), g::identity(3)}) {
    worst = std::max(worst, g::unitarity_defect(u));
  }
  return {"gate unitarity", worst < 1e-12, "max ||U^dag U - I|| = " + sci(worst)};
}

qcore::DensityMatrix random_density(std::size_t n, qcore::Rng& rng) {
  qcore::Labels labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(static_cast<Qubit>(i));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  std::normal_distribution<double> gauss;
  qcore::Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = {gauss(rng), gauss(rng)};
    }
  }
  qcore::Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return qcore::DensityMatrix(labels, rho);
}

CheckResult check_channels(qcore::Rng& rng) {
  const std::vector<std::pair<qcore::KrausChannel, std::size_t>> channels{
      {qcore::KrausChannel::phase_flip(0.3), 1},
      {noise::memory_dephasing_channel(0.8, 1.0), 1},
      {noise::gaussian_phase_channel(0.6), 1},
      {qcore::KrausChannel::two_qubit_depolarizing(0.85), 2},
  };
  double completeness = 0.0;
  double trace_err = 0.0;
  double min_eig = 1.0;
  for (const auto& [ch, k] : channels) {
    completeness = std::max(completeness, ch.completeness_defect());
    const auto rho = random_density(2, rng);
    const auto out = k == 1 ? qcore::apply_channel(rho, ch, {Qubit::M}) : qcore::apply_channel(rho, ch, {Qubit::A, Qubit::M});
    trace_err = std::max(trace_err, std::abs(out.trace() - 1.0));
    min_eig = std::min(min_eig, out.min_eigenvalue());
  }
  const bool ok = completeness < 1e-12 && trace_err < 1e-12 && min_eig > -1e-12;
  return {"channels are CPTP", ok,
          "completeness " + sci(completeness) + ", trace " + sci(trace_err) + ", min eigenvalue " + sci(min_eig)};
}

CheckResult check_teleportation(const qcore::BellLabeling& labeling) {
  ProtocolConfig config;
  double worst_prob = 0.0;
  double worst_determinism = 0.0;
  for (double phi : {0.0, std::numbers::pi / 7, std::numbers::pi / 2, 1.3}) {
    protocol::ExactOptions opt;
    opt.phi1 = phi;
    opt.labeling = labeling;
    const auto branches = protocol::exact_branches(config, opt);
    for (int m1 = 0; m1 < 2; ++m1) {
      double p_m1 = 0.0;
      std::array<double, 4> p_bell{};
      std::array<double, 4> p_pass{};
      for (const auto& b : branches) {
        if (b.m1 != m1) {
          continue;
        }
        p_m1 += b.probability;
        p_bell[static_cast<std::size_t>(b.bell)] += b.probability;
        if (protocol::verify(b.m1, b.m2, b.r1, b.r2)) {
          p_pass[static_cast<std::size_t>(b.bell)] += b.probability;
        }
      }
      for (std::size_t k = 0; k < 4; ++k) {
        worst_prob = std::max(worst_prob, std::abs(p_bell[k] / p_m1 - 0.25));
        worst_determinism = std::max(worst_determinism, std::abs(p_pass[k] / p_bell[k] - 1.0));
      }
    }
  }
  const bool ok = worst_prob < 1e-12 && worst_determinism < 1e-12;
  return {"teleportation brute force", ok,
          "max |P(bell) - 1/4| " + sci(worst_prob) + ", max P(m2 wrong | bell) " + sci(worst_determinism)};
}

CheckResult check_closed_form() {
  double worst = 0.0;
  for (double x : {0.0, 1.5, 3.0}) {
    for (double sigma : {0.0, 0.5, 1.0}) {
      for (double dphi : {0.0, 0.7, std::numbers::pi / 2}) {
        const double a = analytics::f_verif_avg(x, 1.0, sigma, dphi);
        const double b = analytics::f_verif_avg_numeric(x, 1.0, sigma, dphi);
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  return {"closed form vs quadrature", worst < 1e-8, "max deviation " + sci(worst)};
}

CheckResult check_exact_points() {
  ProtocolConfig dephasing;
  dephasing.noise.t_s = 1.0;
  dephasing.noise.t_m = 1.0;
  const double a = exact_acceptance(dephasing);
  const double a_ref = 0.5 * (1.0 + std::exp(-1.0));

  ProtocolConfig bsm;
  bsm.noise.f_bsm = 0.9;
  const double b = exact_acceptance(bsm);

  ProtocolConfig uniform;
  uniform.noise.alpha_mode = noise::AlphaMode::uniform();
  uniform.noise.t_s = 0.5;
  uniform.noise.sigma_theta = 0.4;
  uniform.noise.delta_phi = 0.3;
  const double c = exact_acceptance(uniform);
  const double c_ref = analytics::f_verif_avg(0.5, 1.0, 0.4, 0.3);

  const double noiseless = exact_acceptance(ProtocolConfig{});
  const bool ok = std::abs(a - a_ref) < 1e-10 && std::abs(b - 0.95) < 1e-10 && std::abs(c - c_ref) < 1e-8 &&
                  std::abs(noiseless - 1.0) < 1e-12;
  return {"density-matrix path vs closed forms", ok,
          "dephasing " + format_double(a, 9) + ", f_bsm 0.9 " + format_double(b, 9) + ", uniform alpha dev " +
              sci(std::abs(c - c_ref))};
}

CheckResult check_interferometer(qcore::Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const double alpha = unit(rng);
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const qcore::PhaseBasis basis(2.0 * std::numbers::pi * unit(rng));
    const auto s = protocol::entangle_photon_timebin(protocol::prepare_am_entanglement(alpha), theta);
    for (int m1 = 0; m1 < 2; ++m1) {
      const auto b = protocol::bank_branch(s, basis, m1);
      const auto i = protocol::interferometer_branch(s, basis, m1 == 0 ? protocol::Detector::D1 : protocol::Detector::D2);
      worst = std::max(worst, std::abs(b.probability - i.probability));
      worst = std::max(worst, qcore::projector_distance(b.state, i.state));
    }
  }
  return {"interferometer equals phase-basis projection", worst < 1e-12, "max deviation " + sci(worst)};
}

ProtocolConfig noisy_config() {
  ProtocolConfig c;
  c.noise.alpha_mode = noise::AlphaMode::fixed(0.3);
  c.noise.sigma_theta = 0.5;
  c.noise.t_s = 0.4;
  c.noise.f_bsm = 0.95;
  c.noise.delta_phi = 0.2;
  c.noise.p_loss = 0.2;
  return c;
}

CheckResult check_mc_agreement(std::uint64_t seed) {
  const auto config = noisy_config();
  const double exact = exact_acceptance(config);
  const auto mc = run_mc(config, 20000, seed);
  const double se = standard_error(exact, mc.completed);
  const double z = std::abs(mc.estimate - exact) / se;
  return {"monte carlo vs density matrix", z < 4.0 && mc.ci.contains(mc.estimate),
          "mc " + format_double(mc.estimate, 6) + ", exact " + format_double(exact, 6) + ", z " + sci(z)};
}

CheckResult check_determinism(std::uint64_t seed) {
  const auto config = noisy_config();
  const auto a = run_mc(config, 2000, seed, {1, true});
  const auto b = run_mc(config, 2000, seed, {4, true});
  return {"worker count does not change transcripts", a.transcripts == b.transcripts,
          std::to_string(a.transcripts.size()) + " transcripts compared"};
}

}  // namespace

qcore::BellLabeling corrupted_labeling() {
  auto l = qcore::BellLabeling::canonical();
  std::swap(l.bits[static_cast<std::size_t>(qcore::BellState::PhiMinus)],
            l.bits[static_cast<std::size_t>(qcore::BellState::PsiMinus)]);
  return l;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  qcore::Rng rng(options.seed);
  const auto labeling = options.corrupt_bell_labels ? corrupted_labeling() : qcore::BellLabeling::canonical();
  std::vector<std::function<CheckResult()>> checks{
      [] { return check_gates(); },
      [&] { return check_channels(rng); },
      [&] { return check_teleportation(labeling); },
      [] { return check_closed_form(); },
      [] { return check_exact_points(); },
      [&] { return check_interferometer(rng); },
      [&] { return check_mc_agreement(options.seed); },
      [&] { return check_determinism(options.seed); },
  };
  std::vector<CheckResult> out;
  for (const auto& run : checks) {
    try {
      out.push_back(run());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
  }
  return out;
}

bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all;
}

}  // namespace qtoken::harness
