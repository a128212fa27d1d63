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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "qtoken/adversary/adversary.hpp"
#include "qtoken/analytics/analytics.hpp"
#include "qtoken/harness/experiment.hpp"
#include "qtoken/noise/noise.hpp"
#include "qtoken/protocol/exact.hpp"
#include "qtoken/protocol/steps.hpp"
#include "qtoken/qcore/channel.hpp"

using namespace qtoken;

namespace {

const double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// ---------------------------------------------------------------------------
// 1. noiseless completeness

Outcome noiseless() {
  Outcome o;
  const protocol::ProtocolConfig config;
  const double exact = harness::exact_acceptance(config);
  const auto mc = harness::run_mc(config, 10000, 42, {threads(), true});
  int violations = 0;
  for (const auto& t : mc.transcripts) violations += t.m2 != (t.m1 ^ t.r1 ^ t.r2);
  o.pass = std::abs(exact - 1.0) < 1e-12 && mc.estimate >= 0.999 && violations == 0;
  o.detail = "exact " + fmt("%.15f", exact) + ", mc " + fmt("%.4f", mc.estimate) + ", condition violations " +
             std::to_string(violations);
  return o;
}

// ---------------------------------------------------------------------------
// 2. teleportation brute force, with a raw linear-algebra oracle

using CVec = Eigen::VectorXcd;
using C = std::complex<double>;

// Index (a, m, p) -> 4a + 2m + p.
struct RawOutcome {
  double p_bell[4];
  double p_pass[4];
};

RawOutcome raw_teleport(int m1, double phi, bool correct) {
  const double s = 1.0 / std::sqrt(2.0);
  // Stored token after issuance in |+-_phi>: (|0> +- e^{-i phi}|1>)/sqrt(2).
  const C t0 = s, t1 = (m1 ? -1.0 : 1.0) * std::exp(C(0, -phi)) * s;
  CVec psi = CVec::Zero(8);
  // (|0 E> + |1 L>)/sqrt(2) on (A, P), token on M
  psi(0) = s * t0;          // a0 m0 p0
  psi(2) = s * t1;          // a0 m1 p0
  psi(5) = s * t0;          // a1 m0 p1
  psi(7) = s * t1;          // a1 m1 p1
  // Bell kets on (A, M) and their reported bits
  const CVec bells[4] = {(CVec(4) << s, 0, 0, s).finished(), (CVec(4) << s, 0, 0, -s).finished(),
                         (CVec(4) << 0, s, s, 0).finished(), (CVec(4) << 0, s, -s, 0).finished()};
  const int r1s[4] = {0, 0, 1, 1}, r2s[4] = {0, 1, 1, 0};
  RawOutcome out{};
  for (int k = 0; k < 4; ++k) {
    CVec photon = CVec::Zero(2);
    for (int am = 0; am < 4; ++am) {
      for (int p = 0; p < 2; ++p) photon(p) += std::conj(bells[k](am)) * psi(2 * am + p);
    }
    out.p_bell[k] = photon.squaredNorm();
    photon /= photon.norm();
    if (correct && r1s[k] == 1) std::swap(photon(0), photon(1));
    // Verifier reads (|E> +- e^{-i phi}|L>)/sqrt(2); bit m2 must equal m1 ^ r1 ^ r2.
    const int want = m1 ^ r1s[k] ^ r2s[k];
    const CVec ket = (CVec(2) << s, (want ? -1.0 : 1.0) * std::exp(C(0, -phi)) * s).finished();
    out.p_pass[k] = std::norm(ket.dot(photon));
  }
  return out;
}

Outcome teleportation() {
  Outcome o;
  double worst_p = 0.0, worst_det = 0.0, worst_raw = 0.0;
  const protocol::ProtocolConfig config;
  for (double phi : {0.0, pi / 7, pi / 2, 1.3}) {
    protocol::ExactOptions opt;
    opt.phi1 = phi;
    const auto branches = protocol::exact_branches(config, opt);
    for (int m1 = 0; m1 < 2; ++m1) {
      double p_m1 = 0.0, bell[4] = {}, pass[4] = {};
      for (const auto& b : branches) {
        if (b.m1 != m1) continue;
        const auto k = static_cast<int>(b.bell);
        p_m1 += b.probability;
        bell[k] += b.probability;
        if (protocol::verify(b.m1, b.m2, b.r1, b.r2)) pass[k] += b.probability;
      }
      const auto raw = raw_teleport(m1, phi, true);
      for (int k = 0; k < 4; ++k) {
        worst_p = std::max(worst_p, std::abs(bell[k] / p_m1 - 0.25));
        worst_det = std::max(worst_det, std::abs(pass[k] / bell[k] - 1.0));
        worst_raw = std::max({worst_raw, std::abs(raw.p_bell[k] - 0.25), std::abs(raw.p_pass[k] - 1.0)});
      }
    }
  }
  // Without the X correction at phi = pi/7 some outcome must become random.
  protocol::ProtocolConfig off;
  off.active_correction = false;
  protocol::ExactOptions opt;
  opt.phi1 = pi / 7;
  double min_pass = 1.0;
  for (int m1 = 0; m1 < 2; ++m1) {
    double bell[4] = {}, pass[4] = {};
    for (const auto& b : protocol::exact_branches(off, opt)) {
      if (b.m1 != m1) continue;
      bell[static_cast<int>(b.bell)] += b.probability;
      if (protocol::verify(b.m1, b.m2, b.r1, b.r2)) pass[static_cast<int>(b.bell)] += b.probability;
    }
    for (int k = 0; k < 4; ++k) min_pass = std::min(min_pass, pass[k] / bell[k]);
    const auto raw = raw_teleport(m1, pi / 7, false);
    for (int k = 0; k < 4; ++k) min_pass = std::min(min_pass, raw.p_pass[k]);
  }
  o.pass = worst_p < 1e-12 && worst_det < 1e-12 && worst_raw < 1e-12 && min_pass < 1.0 - 1e-6;
  o.detail = "max |P-1/4| " + fmt("%.1e", worst_p) + ", max P(wrong m2) " + fmt("%.1e", worst_det) +
             ", oracle dev " + fmt("%.1e", worst_raw) + "; uncorrected min P(correct) " + fmt("%.4f", min_pass);
  return o;
}

// ---------------------------------------------------------------------------
// 3. averaged fidelity vs quadrature oracle

template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double fidelity_oracle(double x, double sigma, double dphi) {
  const auto over_alpha = [&](double dtheta) {
    return simpson(
        [&](double u) {
          const double a = std::sin(u) * std::sin(u);
          return 2.0 * std::sin(u) * std::cos(u) * 0.5 *
                 (1.0 + 2.0 * std::sqrt(a * (1 - a)) * std::exp(-x) * std::cos(dtheta - dphi));
        },
        0.0, pi / 2, 400);
  };
  if (sigma == 0.0) return over_alpha(0.0);
  const double norm = 1.0 / (sigma * std::sqrt(2 * pi));
  return simpson([&](double t) { return norm * std::exp(-t * t / (2 * sigma * sigma)) * over_alpha(t); }, -12 * sigma,
                 12 * sigma, 600);
}

Outcome averaged_fidelity() {
  Outcome o;
  double worst = 0.0, worst_lib = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        const double x = 3.0 * i / 4, s = 1.0 * j / 4, d = (pi / 2) * k / 4;
        const double closed = analytics::f_verif_avg(x, 1.0, s, d);
        worst = std::max(worst, std::abs(closed - fidelity_oracle(x, s, d)));
        worst_lib = std::max(worst_lib, std::abs(closed - analytics::f_verif_avg_numeric(x, 1.0, s, d)));
      }
    }
  }
  const double origin = analytics::f_verif_avg(0, 1, 0, 0);
  const double far = analytics::f_verif_avg(40, 1, 0, 0);
  o.pass = worst < 1e-8 && worst_lib < 1e-8 && std::abs(origin - 0.892699) < 5e-7 && std::abs(far - 0.5) < 1e-12;
  o.detail = "max dev vs oracle " + fmt("%.1e", worst) + ", vs library quadrature " + fmt("%.1e", worst_lib) +
             ", origin " + fmt("%.6f", origin) + ", t_s/t_m=40 " + fmt("%.6f", far);
  return o;
}

// ---------------------------------------------------------------------------
// 4. storage-time sweep

Outcome storage_sweep() {
  Outcome o;
  std::string detail;
  double worst_z = 0.0;
  bool monotone = true;
  for (auto [sigma, dphi] : {std::pair{0.0, 0.0}, std::pair{0.5, pi / 6}}) {
    protocol::ProtocolConfig config;
    config.noise.alpha_mode = noise::AlphaMode::uniform();
    config.noise.sigma_theta = sigma;
    config.noise.delta_phi = dphi;
    harness::SweepSpec spec;
    spec.values = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0};
    spec.trials = 100000;
    spec.seed = 42;
    const auto rows = harness::sweep(spec, config, threads());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double formula = 0.5 * (1 + pi / 4 * std::exp(-rows[i].parameter_value) * std::exp(-sigma * sigma / 2) *
                                            std::cos(dphi));
      const double se = harness::standard_error(formula, spec.trials);
      worst_z = std::max(worst_z, std::abs(rows[i].mc_p - formula) / se);
      if (i > 0) {
        // exact curve strictly decreasing; MC column non-increasing up to noise
        monotone = monotone && rows[i].exact_p < rows[i - 1].exact_p &&
                   rows[i].mc_p < rows[i - 1].mc_p + 3 * std::sqrt(2.0) * se;
      }
    }
    const auto last = rows.back();
    monotone = monotone && last.exact_p > 0.5 && last.exact_p - 0.5 < 0.01;
  }
  o.pass = worst_z < 4.0 && monotone;
  o.detail = "max |mc - formula| " + fmt("%.2f", worst_z) + " sigma over 16 points, monotone to 1/2: " +
             (monotone ? "yes" : "no");
  return o;
}

// ---------------------------------------------------------------------------
// 5. forgery

Outcome forgery() {
  Outcome o;
  const protocol::ProtocolConfig config;
  const adversary::BlindGuess blind;
  const auto one = adversary::run_forgery_experiment(blind, config, 1, 100000, 42, 0.01, threads());
  bool rounds_ok = true;
  double worst_z = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const auto rep = adversary::run_forgery_experiment(blind, config, n, 100000, 42 + n, 0.01, threads());
    const double p = std::ldexp(1.0, -n);
    const double z = std::abs(rep.all_rounds - p) / harness::standard_error(p, rep.n_trials);
    worst_z = std::max(worst_z, z);
    rounds_ok = rounds_ok && z < 4.0;
  }
  const auto haar =
      adversary::run_forgery_experiment(adversary::RandomState{}, config, 1, 100000, 43, 0.01, threads());

  protocol::ProtocolConfig avg;
  avg.noise.alpha_mode = noise::AlphaMode::uniform();
  bool bounded = true;
  for (auto k : {adversary::StrategyKind::blind_guess, adversary::StrategyKind::random_state,
                 adversary::StrategyKind::intercept_p2}) {
    const auto s = adversary::make_strategy(k);
    for (int n : {1, 2, 4}) {
      const auto rep = adversary::run_forgery_experiment(*s, avg, n, 20000, 100 + n, 0.01, threads());
      bounded = bounded && rep.all_rounds <= rep.forge_bound_n + 3 * rep.all_rounds_ci.halfwidth();
    }
  }
  o.pass = one.per_round_ci.contains(0.5) && rounds_ok && haar.per_round_ci.contains(0.5) && bounded;
  o.detail = "blind " + fmt("%.4f", one.per_round) + " [" + fmt("%.4f", one.per_round_ci.lo) + ", " +
             fmt("%.4f", one.per_round_ci.hi) + "], n<=10 worst " + fmt("%.2f", worst_z) + " sigma from 2^-n, haar " +
             fmt("%.4f", haar.per_round) + " [" + fmt("%.4f", haar.per_round_ci.lo) + ", " +
             fmt("%.4f", haar.per_round_ci.hi) + "], all strategies under bound: " + (bounded ? "yes" : "no");
  return o;
}

// ---------------------------------------------------------------------------
// 6. dephasing channel

Outcome dephasing() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  double worst_scale = 0.0, worst_semigroup = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::MatrixXcd a(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = {g(rng), g(rng)};
    Eigen::MatrixXcd m = a * a.adjoint();
    m /= m.trace();
    const qcore::DensityMatrix rho({qcore::Qubit::M}, m);
    const double ts = 0.2 * trial, tm = 1.3;
    const auto out = qcore::apply_channel(rho, noise::memory_dephasing_channel(ts, tm), {qcore::Qubit::M}).entries();
    const double f = std::exp(-ts / tm);
    worst_scale = std::max({worst_scale, std::abs(out(0, 1) - f * m(0, 1)), std::abs(out(1, 0) - f * m(1, 0)),
                            std::abs(out(0, 0) - m(0, 0)), std::abs(out(1, 1) - m(1, 1))});
    const auto step = qcore::apply_channel(rho, noise::memory_dephasing_channel(0.7, tm), {qcore::Qubit::M});
    const auto two = qcore::apply_channel(step, noise::memory_dephasing_channel(ts, tm), {qcore::Qubit::M});
    const auto one = qcore::apply_channel(rho, noise::memory_dephasing_channel(ts + 0.7, tm), {qcore::Qubit::M});
    worst_semigroup = std::max(worst_semigroup, (two.entries() - one.entries()).cwiseAbs().maxCoeff());
  }
  protocol::ProtocolConfig config;
  config.noise.t_s = 1.0;
  config.noise.t_m = 1.0;
  config.noise.alpha_mode = noise::AlphaMode::fixed(0.5);
  const double p = harness::exact_acceptance(config);
  const double target = 0.5 * (1 + std::exp(-1.0));
  o.pass = worst_scale < 1e-12 && worst_semigroup < 1e-12 && std::abs(p - target) < 1e-10;
  o.detail = "scaling dev " + fmt("%.1e", worst_scale) + ", semigroup dev " + fmt("%.1e", worst_semigroup) +
             ", acceptance " + fmt("%.12f", p) + " vs " + fmt("%.12f", target);
  return o;
}

// ---------------------------------------------------------------------------
// 7. interferometer

Outcome interferometer() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int sampled_mismatch = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const double alpha = u(rng), theta = 2 * pi * u(rng);
    const qcore::PhaseBasis basis(2 * pi * u(rng));
    const auto s = protocol::entangle_photon_timebin(protocol::prepare_am_entanglement(alpha), theta);
    for (int m1 = 0; m1 < 2; ++m1) {
      const auto b = protocol::bank_branch(s, basis, m1);
      const auto i = protocol::interferometer_branch(s, basis, m1 ? protocol::Detector::D2 : protocol::Detector::D1);
      worst = std::max({worst, std::abs(b.probability - i.probability), qcore::projector_distance(b.state, i.state)});
    }
    // same randomness, same click
    qcore::Rng ra(1000 + draw), rb(1000 + draw);
    const auto x = protocol::bank_issue(s, basis, ra);
    const auto y = protocol::interferometer_issue(s, basis, rb);
    sampled_mismatch += x.m1 != (y.detector == protocol::Detector::D1 ? 0 : 1);
    worst = std::max(worst, qcore::projector_distance(x.state, y.state));
  }
  o.pass = worst < 1e-12 && sampled_mismatch == 0;
  o.detail = "max deviation " + fmt("%.1e", worst) + " over 20 draws, sampled mismatches " +
             std::to_string(sampled_mismatch);
  return o;
}

// ---------------------------------------------------------------------------
// 8. determinism

Outcome determinism() {
  Outcome o;
  protocol::ProtocolConfig config;
  config.noise.alpha_mode = noise::AlphaMode::uniform();
  config.noise.sigma_theta = 0.4;
  config.noise.t_s = 0.7;
  config.noise.f_bsm = 0.95;
  config.noise.p_loss = 0.4;
  config.noise.phase_mode = noise::PhaseNoiseMode::independent;
  const auto stream = [&](int workers) {
    std::string out;
    for (const auto& t : harness::run_mc(config, 20000, 2024, {workers, true}).transcripts) {
      out += protocol::to_json_line(t);
      out += '\n';
    }
    return out;
  };
  const auto one = stream(1);
  const bool same4 = stream(4) == one;
  const bool same8 = stream(8) == one;
  o.pass = same4 && same8;
  o.detail = std::string("20000 transcripts, 4 workers ") + (same4 ? "identical" : "DIFFER") + ", 8 workers " +
             (same8 ? "identical" : "DIFFER");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: none given
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "noiseless completeness", 10.0, noiseless},
      {2, "teleportation brute force", 0.0, teleportation},
      {3, "averaged-fidelity formula", 30.0, averaged_fidelity},
      {4, "storage-time sweep", 300.0, storage_sweep},
      {5, "forgery bound", 0.0, forgery},
      {6, "dephasing channel exactness", 0.0, dephasing},
      {7, "interferometer equivalence", 0.0, interferometer},
      {8, "determinism across workers", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2f s", secs);
    if (c.budget_s > 0.0) {
      timing += fmt(" of %.0f s", c.budget_s);
      pass = pass && secs < c.budget_s;
    }
    failures += pass ? 0 : 1;
    std::printf("criterion %d: %s  %s (%s) [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
