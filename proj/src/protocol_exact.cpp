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

#include "qtoken/protocol/exact.hpp"

#include <array>

#include "protocol_circuit.hpp"
#include "qtoken/protocol/steps.hpp"

namespace qtoken::protocol {

using qcore::DensityMatrix;
using qcore::Qubit;

namespace {

constexpr double kNegligible = 1e-300;

DensityMatrix normalized(const DensityMatrix& branch) {
  return qcore::make_unchecked(branch.labels(), qcore::Matrix(branch.entries() / branch.trace()));
}

}  // namespace

std::vector<Branch> exact_branches(const ProtocolConfig& config, const ExactOptions& options) {
  config.validate();
  const auto& n = config.noise;
  const std::array<Qubit, 1> photon{Qubit::P};
  const std::array<Qubit, 2> am{Qubit::A, Qubit::M};

  // Steps 1-2.
  DensityMatrix rho(entangle_photon_timebin(prepare_am_entanglement(options.alpha), options.theta1));
  if (n.sigma_theta > 0.0) {
    rho = qcore::apply_channel(rho, noise::gaussian_phase_channel(n.sigma_theta), {Qubit::P});
  }

  // The verification pair does not depend on the issuance branch.
  DensityMatrix pair(circuit::ancilla_photon_pair(options.theta2));
  if (n.sigma_theta > 0.0 && n.phase_mode == noise::PhaseNoiseMode::independent) {
    pair = qcore::apply_channel(pair, noise::gaussian_phase_channel(n.sigma_theta), {Qubit::P});
  }
  const auto dephasing = noise::memory_dephasing_channel(n.t_s, n.t_m);
  const auto bsm_noise = qcore::KrausChannel::two_qubit_depolarizing(n.f_bsm);
  const PhaseBasis issue_basis(options.phi1);
  const PhaseBasis read_basis = verification_basis(options.phi1 - n.delta_phi);

  std::vector<Branch> out;
  for (int m1 = 0; m1 < 2; ++m1) {
    // Step 3.
    const auto issued = qcore::project_branch(rho, photon, issue_basis.ket(m1));
    const double p_m1 = issued.trace();
    if (p_m1 < kNegligible) {
      continue;
    }
    auto am_state = qcore::partial_trace(normalized(issued), {Qubit::A, Qubit::M});

    // Step 4 and storage.
    auto memory = qcore::partial_trace(circuit::disentangle(am_state), {Qubit::M});
    memory = qcore::apply_channel(memory, dephasing, {Qubit::M});

    // Step 5.
    auto joint = qcore::reorder(qcore::tensor(memory, pair), circuit::canonical_order());
    if (config.swap_before_bsm) {
      joint = circuit::swap_memory(joint);
    }
    if (n.bsm_model == noise::BsmModel::depolarizing && n.f_bsm < 1.0) {
      joint = qcore::apply_channel(joint, bsm_noise, am);
    }

    // Step 6: true Bell state k, reported bits drawn from the readout model.
    for (std::size_t k = 0; k < 4; ++k) {
      const auto bell = static_cast<qcore::BellState>(k);
      const auto collapsed = qcore::project_branch(joint, am, qcore::bell_ket(bell));
      const double p_bell = collapsed.trace();
      if (p_bell < kNegligible) {
        continue;
      }
      const auto photon_state = qcore::partial_trace(normalized(collapsed), {Qubit::P});
      const auto true_bits = options.labeling(bell);
      for (int r1 = 0; r1 < 2; ++r1) {
        for (int r2 = 0; r2 < 2; ++r2) {
          double p_report = 0.0;
          if (n.bsm_model == noise::BsmModel::readout) {
            const bool honest = r1 == true_bits.first && r2 == true_bits.second;
            p_report = n.f_bsm * (honest ? 1.0 : 0.0) + (1.0 - n.f_bsm) / 4.0;
          } else {
            p_report = (r1 == true_bits.first && r2 == true_bits.second) ? 1.0 : 0.0;
          }
          if (p_report == 0.0) {
            continue;
          }
          // Step 7.
          const auto corrected = circuit::correct_photon(photon_state, r1, config.active_correction);
          for (int m2 = 0; m2 < 2; ++m2) {
            const double p_m2 = qcore::fidelity(corrected, qcore::StateVector({Qubit::P}, read_basis.ket(m2)));
            const double p = p_m1 * p_bell * p_report * p_m2;
            if (p > 0.0) {
              out.push_back({m1, bell, r1, r2, m2, p});
            }
          }
        }
      }
    }
  }
  return out;
}

double exact_acceptance(const ProtocolConfig& config, const ExactOptions& options) {
  double accepted = 0.0;
  for (const auto& b : exact_branches(config, options)) {
    if (verify(b.m1, b.m2, b.r1, b.r2)) {
      accepted += b.probability;
    }
  }
  return accepted;
}

}  // namespace qtoken::protocol
