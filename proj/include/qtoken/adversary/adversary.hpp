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

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "qtoken/harness/stats.hpp"
#include "qtoken/protocol/config.hpp"
#include "qtoken/qcore/state.hpp"

namespace qtoken::adversary {

using qcore::Rng;

enum class StrategyKind { blind_guess, random_state, intercept_p2 };

std::string to_string(StrategyKind kind);
/// Throws std::invalid_argument for unknown names.
StrategyKind parse_strategy(const std::string& name);

/// Everything a forger may see: the bank's public issuance bit and the round index.
/// Neither the memory qubit nor the bank's phase is reachable from here.
struct PublicAnnouncement {
  int m1 = 0;
  int round = 0;
};

/// Fully classical forgery: announced Bell bits and a claimed verifier bit.
struct ClaimedOutcome {
  int r1 = 0;
  int r2 = 0;
  int m2 = 0;
};

/// A qubit placed where the stored token should be; the honest teleport and
/// verification machinery then runs on it.
struct SubstituteToken {
  qcore::StateVector token;  // single qubit labelled M
};

/// A photon sent to the verifier in place of P2 together with announced Bell bits.
struct SubstitutePhoton {
  qcore::StateVector photon;  // single qubit labelled P
  int r1 = 0;
  int r2 = 0;
};

using Forgery = std::variant<ClaimedOutcome, SubstituteToken, SubstitutePhoton>;

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual StrategyKind kind() const = 0;
  virtual Forgery forge(const PublicAnnouncement& announcement, Rng& rng) const = 0;
};

/// Uniform guess of the verifier's bit.
int forge_blind(Rng& rng);
/// Haar-random pure qubit labelled M.
qcore::StateVector forge_random_state(Rng& rng);

class BlindGuess final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::blind_guess; }
  Forgery forge(const PublicAnnouncement& announcement, Rng& rng) const override;
};

class RandomState final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::random_state; }
  Forgery forge(const PublicAnnouncement& announcement, Rng& rng) const override;
};

/// Replaces P2 with one half of the adversary's own pair, measures the other half
/// in a guessed phase basis and announces r2 so the steered photon would pass.
class InterceptP2 final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::intercept_p2; }
  Forgery forge(const PublicAnnouncement& announcement, Rng& rng) const override;
};

/// Submits a fixed qubit as the token. Only useful as a control: a caller that
/// already knows the token can pass it in.
class FixedState final : public Strategy {
 public:
  explicit FixedState(qcore::StateVector token);
  StrategyKind kind() const override { return StrategyKind::random_state; }
  Forgery forge(const PublicAnnouncement& announcement, Rng& rng) const override;

 private:
  qcore::StateVector token_;
};

std::unique_ptr<Strategy> make_strategy(StrategyKind kind);

struct ForgeryReport {
  StrategyKind kind = StrategyKind::blind_guess;
  int n_rounds = 1;
  std::uint64_t n_trials = 0;
  std::uint64_t rounds_accepted = 0;  // over n_trials * n_rounds rounds
  std::uint64_t trials_accepted = 0;  // trials where every round passed
  double per_round = 0.0;
  harness::Interval per_round_ci{};
  double all_rounds = 0.0;
  harness::Interval all_rounds_ci{};
  double f_verif_avg = 0.0;   // honest completeness used for the bound
  double forge_bound_n = 0.0; // f_verif_avg^n
  double guess_n = 0.0;       // 2^-n
  bool within_bound = false;  // all_rounds <= forge_bound_n + 3 * halfwidth
  std::optional<std::string> warning;
};

/// Each trial runs `n_rounds` independent issuances, each attacked once; a trial
/// succeeds when all rounds pass verification.
ForgeryReport run_forgery_experiment(const Strategy& strategy, const protocol::ProtocolConfig& config, int n_rounds,
                                     std::uint64_t n_trials, std::uint64_t seed, double target_ci_halfwidth = 0.01,
                                     int threads = 1);

}  // namespace qtoken::adversary
