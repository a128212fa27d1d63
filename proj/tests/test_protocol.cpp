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

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "catch_amalgamated.hpp"
#include "qtoken/protocol/exact.hpp"
#include "qtoken/protocol/run.hpp"
#include "qtoken/protocol/steps.hpp"
#include "qtoken/qcore/gates.hpp"

using namespace qtoken;
using namespace qtoken::protocol;
using qcore::Complex;
using qcore::Qubit;
using qcore::Vector;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);
const double pi = std::numbers::pi;

Vector vec(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

double dist(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Fixes the bank outcome by projecting instead of sampling.
StateVector issue_with(const StateVector& s, double phi, int m1) {
  const auto p = bank_branch(s, PhaseBasis(phi), m1);
  REQUIRE(p.probability > 0.0);
  return p.state;
}

}  // namespace

TEST_CASE("ancilla-memory preparation") {
  CHECK(dist(prepare_am_entanglement(0.5).amplitudes(), vec({r2, 0, 0, r2})) < 1e-12);
  CHECK(dist(prepare_am_entanglement(1.0).amplitudes(), vec({1, 0, 0, 0})) < 1e-12);
  CHECK(dist(prepare_am_entanglement(0.25).amplitudes(), vec({0.5, 0, 0, 0.8660254037844386})) < 1e-12);
  CHECK_THROWS(prepare_am_entanglement(1.2));
}

TEST_CASE("time-bin emission") {
  const auto s = entangle_photon_timebin(prepare_am_entanglement(0.5), 0.0);
  CHECK(s.labels() == qcore::Labels{Qubit::A, Qubit::M, Qubit::P});
  CHECK(dist(s.amplitudes(), vec({r2, 0, 0, 0, 0, 0, 0, r2})) < 1e-12);

  const auto prod = entangle_photon_timebin(prepare_am_entanglement(1.0), 1.234);
  CHECK(dist(prod.amplitudes(), vec({1, 0, 0, 0, 0, 0, 0, 0})) < 1e-12);

  const auto flipped = entangle_photon_timebin(prepare_am_entanglement(0.5), pi);
  CHECK(dist(flipped.amplitudes(), vec({r2, 0, 0, 0, 0, 0, 0, -r2})) < 1e-12);

  CHECK_THROWS_AS(entangle_photon_timebin(s, 0.0), qcore::QuantumError);
}

TEST_CASE("bank issuance") {
  const auto s = entangle_photon_timebin(prepare_am_entanglement(0.5), 0.0);
  CHECK(dist(issue_with(s, 0.0, 0).amplitudes(), vec({r2, 0, 0, r2})) < 1e-12);
  CHECK(dist(issue_with(s, 0.0, 1).amplitudes(), vec({r2, 0, 0, -r2})) < 1e-12);
  for (double phi : {0.0, 0.3, 2.0, 5.5}) {
    for (int m1 = 0; m1 < 2; ++m1) {
      CHECK(bank_branch(s, PhaseBasis(phi), m1).probability == Catch::Approx(0.5).margin(1e-12));
    }
  }
  // sampled version agrees with one of the branches
  qcore::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto r = bank_issue(s, PhaseBasis(0.7), rng);
    CHECK(qcore::projector_distance(r.state, bank_branch(s, PhaseBasis(0.7), r.m1).state) < 1e-12);
  }
}

TEST_CASE("interferometer issuance") {
  const auto s = entangle_photon_timebin(prepare_am_entanglement(0.5), 0.0);
  const auto d1 = interferometer_branch(s, PhaseBasis(0.0), Detector::D1);
  const auto d2 = interferometer_branch(s, PhaseBasis(0.0), Detector::D2);
  CHECK(qcore::projector_distance(d1.state, StateVector({Qubit::A, Qubit::M}, vec({r2, 0, 0, r2}))) < 1e-12);
  CHECK(qcore::projector_distance(d2.state, StateVector({Qubit::A, Qubit::M}, vec({r2, 0, 0, -r2}))) < 1e-12);

  qcore::Rng rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 20; ++draw) {
    const double alpha = u(rng), theta = 2 * pi * u(rng), phi = 2 * pi * u(rng);
    const auto st = entangle_photon_timebin(prepare_am_entanglement(alpha), theta);
    for (int m1 = 0; m1 < 2; ++m1) {
      const auto b = bank_branch(st, PhaseBasis(phi), m1);
      const auto i = interferometer_branch(st, PhaseBasis(phi), m1 ? Detector::D2 : Detector::D1);
      CHECK(std::abs(b.probability - i.probability) < 1e-12);
      if (b.probability > 1e-9) CHECK(qcore::projector_distance(b.state, i.state) < 1e-12);
    }
  }
}

TEST_CASE("storage") {
  const auto s = entangle_photon_timebin(prepare_am_entanglement(0.5), 0.0);
  const auto token0 = store_token(issue_with(s, 0.0, 0));
  CHECK(token0.labels() == qcore::Labels{Qubit::M});
  CHECK(dist(token0.amplitudes(), vec({r2, r2})) < 1e-12);

  const auto token1 = store_token(issue_with(s, pi / 2, 1));
  // equal up to a global phase
  const StateVector expected({Qubit::M}, vec({r2, -r2 * std::exp(Complex(0, -pi / 2))}));
  CHECK(qcore::projector_distance(token1, expected) < 1e-12);

  CHECK_THROWS_AS(store_token(s), qcore::QuantumError);  // photon still attached
}

TEST_CASE("verification pair") {
  const auto token = qcore::StateVector::qubit(Qubit::M, 0.6, Complex(0, 0.8));
  const auto s = reentangle_photon(token, 0.0);
  CHECK(s.labels() == qcore::Labels{Qubit::A, Qubit::M, Qubit::P});
  // token on M times (|0 E> + |-1 L>)/sqrt(2) on (A, P)
  const auto expected = qcore::reorder(
      qcore::tensor(token, StateVector({Qubit::A, Qubit::P}, vec({r2, 0, 0, r2}))), {Qubit::A, Qubit::M, Qubit::P});
  CHECK(dist(s.amplitudes(), expected.amplitudes()) < 1e-12);

  const auto quarter = reentangle_photon(token, pi / 2);
  const auto expected_q = qcore::reorder(
      qcore::tensor(token, StateVector({Qubit::A, Qubit::P}, vec({r2, 0, 0, Complex(0, r2)}))),
      {Qubit::A, Qubit::M, Qubit::P});
  CHECK(dist(quarter.amplitudes(), expected_q.amplitudes()) < 1e-12);

  CHECK_THROWS_AS(reentangle_photon(s, 0.0), qcore::QuantumError);
  // ancilla not in |0>
  const auto excited = qcore::tensor(qcore::StateVector::basis({Qubit::A}, 1), token);
  CHECK_THROWS_AS(reentangle_photon(excited, 0.0), qcore::QuantumError);
}

TEST_CASE("memory to ancilla swap") {
  const auto psi = qcore::StateVector::qubit(Qubit::M, 0.6, Complex(0, 0.8));
  const auto s = qcore::tensor(qcore::StateVector::basis({Qubit::A}, 0), psi);
  const auto swapped = swap_memory_to_ancilla(s);
  const auto expected = qcore::tensor(qcore::StateVector::qubit(Qubit::A, 0.6, Complex(0, 0.8)),
                                      qcore::StateVector::basis({Qubit::M}, 0));
  CHECK(dist(swapped.amplitudes(), expected.amplitudes()) < 1e-12);
  CHECK(dist(swap_memory_to_ancilla(swapped).amplitudes(), s.amplitudes()) < 1e-12);
}

TEST_CASE("verification condition") {
  CHECK(verify(0, 0, 0, 0));
  CHECK(verify(0, 1, 1, 0));
  CHECK(verify(1, 1, 1, 1));
  CHECK(verify(1, 0, 1, 0));
  CHECK_FALSE(verify(0, 1, 0, 0));
  CHECK_FALSE(verify(1, 0, 0, 0));
}

TEST_CASE("teleportation is deterministic for every branch") {
  ProtocolConfig config;
  for (double phi : {0.0, pi / 7, pi / 2, 1.3}) {
    ExactOptions opt;
    opt.phi1 = phi;
    std::map<std::tuple<int, int>, std::array<double, 2>> by_branch;  // (m1, bell) -> P(pass), P(fail)
    double total = 0.0;
    for (const auto& b : exact_branches(config, opt)) {
      total += b.probability;
      by_branch[{b.m1, static_cast<int>(b.bell)}][verify(b.m1, b.m2, b.r1, b.r2) ? 0 : 1] += b.probability;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(by_branch.size() == 8);
    for (const auto& [key, p] : by_branch) {
      CHECK(std::abs(p[0] - 0.125) < 1e-12);
      CHECK(p[1] < 1e-12);
    }
  }
}

TEST_CASE("explicit outcome examples") {
  // m1 = 0 with outcome (0, 0) gives m2 = 0; (0, 1) gives m2 = 1.
  ProtocolConfig config;
  ExactOptions opt;
  for (const auto& b : exact_branches(config, opt)) {
    if (b.m1 == 0 && b.r1 == 0 && b.r2 == 0 && b.probability > 1e-12) CHECK(b.m2 == 0);
    if (b.m1 == 0 && b.r1 == 0 && b.r2 == 1 && b.probability > 1e-12) CHECK(b.m2 == 1);
  }
}

TEST_CASE("without the X correction determinism is lost") {
  ProtocolConfig config;
  config.active_correction = false;
  ExactOptions opt;
  opt.phi1 = pi / 7;
  const double p = exact_acceptance(config, opt);
  CHECK(p < 1.0 - 1e-3);
  // Half the branches need X. An uncorrected X turns |+-_phi> into a state whose
  // overlap with the right outcome is cos^2(phi), so p = 1/2 + cos^2(phi)/2.
  CHECK(p == Catch::Approx(0.5 + 0.5 * std::pow(std::cos(pi / 7), 2)).margin(1e-12));
}

TEST_CASE("basis secrecy") {
  // Wrong verification basis: average acceptance over a uniformly random phi2 is 1/2.
  ProtocolConfig config;
  ExactOptions opt;
  opt.phi1 = 0.4;
  const int n = 64;  // trapezoid on a periodic integrand
  double avg = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi2 = 2 * pi * k / n;
    config.noise.delta_phi = opt.phi1 - phi2;
    avg += exact_acceptance(config, opt) / n;
  }
  CHECK(std::abs(avg - 0.5) < 1e-9);
}

TEST_CASE("swap variant matches the direct Bell measurement") {
  ProtocolConfig direct;
  direct.noise.t_s = 0.3;
  direct.noise.f_bsm = 0.9;
  direct.noise.sigma_theta = 0.2;
  auto swapped = direct;
  swapped.swap_before_bsm = true;
  ExactOptions opt;
  opt.alpha = 0.3;
  opt.phi1 = 1.1;
  const auto a = exact_branches(direct, opt);
  const auto b = exact_branches(swapped, opt);
  // The SWAP only relabels A and M; (r1, r2, m2) distributions must agree.
  std::map<std::tuple<int, int, int, int>, double> pa, pb;
  for (const auto& x : a) pa[{x.m1, x.r1, x.r2, x.m2}] += x.probability;
  for (const auto& x : b) pb[{x.m1, x.r1, x.r2, x.m2}] += x.probability;
  REQUIRE(pa.size() == pb.size());
  for (const auto& [k, p] : pa) CHECK(std::abs(p - pb[k]) < 1e-12);

  qcore::Rng ra(5), rb(5);
  for (int i = 0; i < 500; ++i) {
    const auto ta = run_honest_protocol(direct, ra);
    const auto tb = run_honest_protocol(swapped, rb);
    CHECK(std::tie(ta.m1, ta.r1, ta.r2, ta.m2) == std::tie(tb.m1, tb.r1, tb.r2, tb.m2));
  }
}

TEST_CASE("honest runs") {
  ProtocolConfig config;
  qcore::Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    OpLog log;
    const auto t = run_honest_protocol(config, rng, static_cast<std::uint64_t>(i), &log);
    REQUIRE(t.accepted);
    CHECK(t.m2 == (t.m1 ^ t.r1 ^ t.r2));
    CHECK(t.repetitions_used == 1);
    CHECK(t.seed == static_cast<std::uint64_t>(i));
    CHECK(log.memory_stays_with_user());
  }
  config.noise.t_s = 40.0;
  CHECK(std::abs(exact_acceptance(config, {}) - 0.5) < 1e-12);
}

TEST_CASE("memory custody") {
  ProtocolConfig config;
  config.noise.p_loss = 0.5;
  config.noise.t_s = 0.5;
  config.swap_before_bsm = true;
  qcore::Rng rng(10);
  for (int i = 0; i < 300; ++i) {
    OpLog log;
    run_honest_protocol(config, rng, 0, &log);
    CHECK(log.memory_stays_with_user());
    for (const auto& r : log.records()) {
      if (r.touches(Qubit::M)) CHECK(r.party == Role::user);
    }
  }
  Session s;
  s.acquire(Role::user, Qubit::M);
  CHECK_THROWS(s.transfer(Qubit::M, Role::user, Role::bank));
  CHECK_THROWS(s.act(Role::bank, OpKind::measure_photon, {Qubit::M}));
  CHECK_THROWS(s.acquire(Role::bank, Qubit::M));
  OpLog bad;
  bad.record(Role::verifier, OpKind::measure_photon, {Qubit::M});
  CHECK_FALSE(bad.memory_stays_with_user());
}

TEST_CASE("photon loss in honest runs") {
  ProtocolConfig config;
  config.noise.p_loss = 1.0;
  config.noise.max_repetitions = 7;
  qcore::Rng rng(11);
  const auto t = run_honest_protocol(config, rng);
  CHECK(t.failed);
  CHECK_FALSE(t.accepted);
  CHECK(t.repetitions_used == 7);

  config.noise.p_loss = 0.6;
  config.noise.max_repetitions = 100;
  int more_than_one = 0;
  for (int i = 0; i < 200; ++i) {
    const auto u = run_honest_protocol(config, rng);
    REQUIRE_FALSE(u.failed);
    CHECK(u.accepted);  // losses cost repetitions, never fidelity
    more_than_one += u.repetitions_used > 1;
  }
  CHECK(more_than_one > 100);
}

TEST_CASE("transcript serialization") {
  Transcript t;
  t.seed = 12;
  t.m1 = 1;
  t.r2 = 1;
  t.accepted = true;
  t.sampled_alpha = 0.25;
  t.sampled_theta1 = -0.125;
  CHECK(transcript_csv_header() ==
        "seed,m1,r1,r2,m2,accepted,repetitions_used,sampled_alpha,sampled_theta1,sampled_theta2");
  CHECK(to_csv_row(t) == "12,1,0,1,0,1,1,0.25,-0.125,0");
  CHECK(to_json_line(t) ==
        "{\"seed\":12,\"m1\":1,\"r1\":0,\"r2\":1,\"m2\":0,\"accepted\":true,\"repetitions_used\":1,"
        "\"sampled_alpha\":0.25,\"sampled_theta1\":-0.125,\"sampled_theta2\":0}");
}
