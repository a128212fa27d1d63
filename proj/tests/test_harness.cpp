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
#include <numbers>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "qtoken/harness/experiment.hpp"
#include "qtoken/harness/parallel.hpp"
#include "qtoken/harness/rng.hpp"
#include "qtoken/harness/selftest.hpp"
#include "qtoken/util/format.hpp"

using namespace qtoken;
using namespace qtoken::harness;
using Catch::Approx;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

protocol::ProtocolConfig noisy() {
  protocol::ProtocolConfig c;
  c.noise.alpha_mode = noise::AlphaMode::fixed(0.4);
  c.noise.sigma_theta = 0.3;
  c.noise.t_s = 0.6;
  c.noise.f_bsm = 0.9;
  c.noise.p_loss = 0.3;
  c.noise.phase_mode = noise::PhaseNoiseMode::independent;
  return c;
}

}  // namespace

TEST_CASE("wilson interval") {
  const auto all = wilson(100, 100);
  CHECK(all.hi == 1.0);
  CHECK(all.lo == Approx(0.963).margin(1e-3));
  const auto none = wilson(0, 50);
  CHECK(none.lo == 0.0);
  CHECK(none.contains(0.0));
  const auto half = wilson(500, 1000);
  CHECK(half.lo == Approx(0.4691).margin(1e-4));
  CHECK(half.hi == Approx(0.5309).margin(1e-4));
  CHECK(half.halfwidth() == Approx(0.0309).margin(1e-4));
  for (std::uint64_t k = 0; k <= 20; ++k) CHECK(wilson(k, 20).contains(k / 20.0));
  CHECK(standard_error(0.5, 100) == Approx(0.05));
}

TEST_CASE("seed streams") {
  // First SplitMix64 output from state 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(stream_seed(42, 0) != stream_seed(42, 1));
  CHECK(stream_seed(42, 7) == stream_seed(42, 7));
  auto a = make_stream(42, 3);
  qcore::Rng b(stream_seed(42, 3));
  CHECK(a() == b());
}

TEST_CASE("parallel chunks cover the range once") {
  for (int workers : {1, 2, 3, 8}) {
    std::vector<int> hits(101, 0);
    parallel_chunks(101, workers, [&](std::uint64_t b, std::uint64_t e) {
      for (auto i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) CHECK(h == 1);
  }
  CHECK_THROWS_AS(parallel_chunks(10, 4, [](std::uint64_t b, std::uint64_t) {
                    if (b > 0) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("exact acceptance examples") {
  CHECK(exact_acceptance(protocol::ProtocolConfig{}) == Approx(1.0).margin(1e-12));
  protocol::ProtocolConfig d;
  d.noise.t_s = 2.0;
  d.noise.t_m = 2.0;
  CHECK(exact_acceptance(d) == Approx(0.5 * (1 + std::exp(-1.0))).margin(1e-10));
  CHECK(exact_acceptance(d) == Approx(0.683940).margin(5e-7));
  protocol::ProtocolConfig b;
  b.noise.f_bsm = 0.9;
  CHECK(exact_acceptance(b) == Approx(0.95).margin(1e-12));

  // random bank phase without correction: averaged, below 1
  protocol::ProtocolConfig nc;
  nc.active_correction = false;
  const double p = exact_acceptance(nc);
  // 1/2 + <cos^2 phi>/2 = 3/4
  CHECK(p == Approx(0.75).margin(1e-12));
}

TEST_CASE("monte carlo agrees with the density matrix") {
  std::vector<protocol::ProtocolConfig> configs{protocol::ProtocolConfig{}, noisy()};
  auto uniform = noisy();
  uniform.noise.alpha_mode = noise::AlphaMode::uniform();
  uniform.noise.bsm_model = noise::BsmModel::depolarizing;
  uniform.swap_before_bsm = true;
  configs.push_back(uniform);
  auto nc = noisy();
  nc.active_correction = false;
  configs.push_back(nc);
  for (const auto& c : configs) {
    const double exact = exact_acceptance(c);
    const auto mc = run_mc(c, 20000, 5);
    CHECK(mc.completed + mc.failed == mc.trials);
    CHECK(mc.ci.contains(mc.estimate));
    CHECK(std::abs(mc.estimate - exact) < 4 * mc.ci.halfwidth() + 1e-12);
  }
  const auto clean = run_mc(protocol::ProtocolConfig{}, 10000, 1);
  CHECK(clean.estimate >= 0.999);
  CHECK_THROWS(run_mc(protocol::ProtocolConfig{}, 0, 1));
}

TEST_CASE("monte carlo is deterministic") {
  const auto c = noisy();
  const auto a = run_mc(c, 3000, 77, {1, true});
  for (int w : {2, 4, 8}) {
    const auto b = run_mc(c, 3000, 77, {w, true});
    CHECK(a.transcripts == b.transcripts);
    CHECK(a.accepted == b.accepted);
  }
  const auto other = run_mc(c, 3000, 78, {1, true});
  CHECK_FALSE(a.transcripts == other.transcripts);
  CHECK(a.transcripts[5].seed == stream_seed(77, 5));
}

TEST_CASE("sweep parameters") {
  const auto base = protocol::ProtocolConfig{};
  CHECK(with_parameter(base, "t_s", 1.5).noise.t_s == 1.5);
  CHECK(with_parameter(base, "alpha", 0.2).noise.alpha_mode == noise::AlphaMode::fixed(0.2));
  CHECK(with_parameter(base, "max_repetitions", 7).noise.max_repetitions == 7);
  CHECK_THROWS_AS(with_parameter(base, "max_repetitions", 7.5), noise::ConfigError);
  CHECK_THROWS_AS(with_parameter(base, "f_bsm", 1.5), noise::ConfigError);
  CHECK_THROWS_AS(with_parameter(base, "colour", 1.0), noise::ConfigError);
  SweepSpec empty;
  CHECK_THROWS_AS(empty.validate(), noise::ConfigError);
}

TEST_CASE("storage-time sweep") {
  protocol::ProtocolConfig c;
  c.noise.alpha_mode = noise::AlphaMode::uniform();
  SweepSpec spec;
  spec.values = {0, 1, 2, 3};
  spec.trials = 20000;
  const auto rows = sweep(spec, c);
  REQUIRE(rows.size() == 4);
  const std::array<double, 4> expected{0.8927, 0.6445, 0.5531, 0.5196};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].analytic_p == Approx(expected[i]).margin(1e-4));
    CHECK(std::abs(rows[i].exact_p - rows[i].analytic_p) < 1e-8);
    CHECK(std::abs(rows[i].mc_p - rows[i].analytic_p) < 4 * standard_error(rows[i].analytic_p, spec.trials));
    CHECK(rows[i].soundness == Approx(rows[i].analytic_p - 0.5));
    CHECK(rows[i].ci_lo <= rows[i].mc_p);
    CHECK(rows[i].mc_p <= rows[i].ci_hi);
  }
}

TEST_CASE("one-point sweep is run_mc") {
  const auto c = noisy();
  SweepSpec spec;
  spec.parameter = "sigma_theta";
  spec.values = {0.3};
  spec.trials = 2000;
  spec.seed = 9;
  const auto rows = sweep(spec, c);
  const auto mc = run_mc(c, 2000, 9);
  CHECK(rows[0].mc_p == mc.estimate);
  CHECK(rows[0].ci_lo == mc.ci.lo);
  CHECK(rows[0].ci_hi == mc.ci.hi);
}

TEST_CASE("sweep writers agree") {
  protocol::ProtocolConfig c;
  c.noise.t_m = 2.0;
  SweepSpec spec;
  spec.values = {0.0, 0.5, 4.0};
  spec.trials = 500;
  const auto rows = sweep(spec, c);

  std::ostringstream csv, js, plot;
  write_sweep_csv(csv, rows);
  write_sweep_json(js, spec, rows);
  write_plot_data(plot, spec, c, rows);

  const auto lines = split(csv.str(), '\n');
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "parameter_value,exact_p,mc_p,ci_lo,ci_hi,analytic_p,soundness,forge_n");
  const auto header = split(lines[0], ',');
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["parameter"] == "t_s");
  REQUIRE(doc["rows"].size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto cells = split(lines[i + 1], ',');
    REQUIRE(cells.size() == header.size());
    for (std::size_t k = 0; k < header.size(); ++k) {
      const double from_json = doc["rows"][i][header[k]].get<double>();
      CHECK(std::stod(cells[k]) == Approx(from_json).epsilon(1e-8).margin(1e-12));
    }
  }
  // x column is t_s / t_m
  const auto plines = split(plot.str(), '\n');
  REQUIRE(plines.size() == 4);
  CHECK(plines[3].rfind("2\t", 0) == 0);
}

TEST_CASE("security report") {
  const auto rep = build_report(protocol::ProtocolConfig{}, 2000, 1, 3, 1, adversary::StrategyKind::blind_guess);
  CHECK(rep.exact_p == Approx(1.0).margin(1e-12));
  CHECK(rep.mc.estimate == 1.0);
  CHECK(rep.metrics.f_forge_n == Approx(1.0));
  CHECK(rep.metrics.guess_n == 0.125);
  REQUIRE(rep.forgery);
  const auto doc = nlohmann::json::parse(to_json(rep));
  CHECK(doc["exact_p"].get<double>() == Approx(1.0));
  CHECK(doc["forgery"]["strategy"] == "blind_guess");
  CHECK(doc["forgery"]["n_rounds"] == 3);
  std::ostringstream text;
  write_text(text, rep);
  CHECK(text.str().find("exact acceptance") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(util::format_double(0.1, 17) == "0.10000000000000001");
  CHECK(util::format_double(1.0 / 3.0, 9) == "0.333333333");
  CHECK(util::format_double(std::nan(""), 9) == "nan");
  const double x = 0.12345678901234567;
  CHECK(std::stod(util::format_double(x, 17)) == x);
  CHECK(util::json_escape("a\"b\\c\n") == "\"a\\\"b\\\\c\\n\"");
}

TEST_CASE("selftest") {
  const auto clean = run_selftest();
  for (const auto& c : clean) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  SelftestOptions bad;
  bad.corrupt_bell_labels = true;
  const auto broken = run_selftest(bad);
  bool teleport_failed = false;
  for (const auto& c : broken) {
    if (c.name == "teleportation brute force") teleport_failed = !c.passed;
  }
  CHECK(teleport_failed);
}
