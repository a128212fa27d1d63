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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtoken/adversary/adversary.hpp"
#include "qtoken/protocol/config.hpp"

namespace qtoken::cli {

enum class Format { csv, json };

/// Everything one invocation needs. Defaults: noiseless protocol, 10^4 trials, seed 42.
struct RunConfiguration {
  protocol::ProtocolConfig protocol{};
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  int threads = 1;
  std::string sweep_parameter = "t_s";
  std::vector<double> sweep_values;
  adversary::StrategyKind forge_strategy = adversary::StrategyKind::blind_guess;
  int forge_rounds = 1;
  std::string out;  // empty: stdout for reports, sweep.<format> for tables
  Format format = Format::csv;

  /// Throws noise::ConfigError.
  void validate() const;
  bool operator==(const RunConfiguration&) const = default;
};

/// Parse failure; what() reads "<source>:<line>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// "key = value" lines; '#' starts a comment; blank lines are ignored. Unknown or
/// repeated keys are errors. Keys not present keep their defaults.
RunConfiguration parse_config(const std::string& text, const std::string& source = "<config>");
RunConfiguration load_config(const std::string& path);

/// Every key, in a fixed order, with doubles at 17 significant digits, so
/// parse_config(serialize(c)) == c.
std::string serialize(const RunConfiguration& config);

std::string to_string(Format f);
Format parse_format(const std::string& name);

}  // namespace qtoken::cli
