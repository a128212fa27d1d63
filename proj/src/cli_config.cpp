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

#include "qtoken/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qtoken/util/format.hpp"

namespace qtoken::cli {

using noise::ConfigError;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_count(const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec == std::errc() && ptr == end) {
    return out;
  }
  // Allow 1e5 and friends.
  const double d = to_double(v);
  if (d < 0.0 || d != std::floor(d) || d > 9007199254740992.0) {
    throw ConfigError("expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::uint64_t>(d);
}

int to_int(const std::string& v) {
  const auto n = to_count(v);
  if (n > 1000000000ULL) {
    throw ConfigError("value out of range: '" + v + "'");
  }
  return static_cast<int>(n);
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") {
    return true;
  }
  if (v == "false" || v == "off" || v == "no" || v == "0") {
    return false;
  }
  throw ConfigError("expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(to_double(item));
    }
  }
  return out;
}

std::string num(double v) { return util::format_double(v, util::kJsonDigits); }

using Setter = void (*)(RunConfiguration&, const std::string&);

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"alpha",
       [](RunConfiguration& c, const std::string& v) {
         c.protocol.noise.alpha_mode = v == "uniform" ? noise::AlphaMode::uniform() : noise::AlphaMode::fixed(to_double(v));
       }},
      {"sigma_theta", [](RunConfiguration& c, const std::string& v) { c.protocol.noise.sigma_theta = to_double(v); }},
      {"delta_phi", [](RunConfiguration& c, const std::string& v) { c.protocol.noise.delta_phi = to_double(v); }},
      {"t_s", [](RunConfiguration& c, const std::string& v) { c.protocol.noise.t_s = to_double(v); }},
      {"t_m", [](RunConfiguration& c, const std::string& v) { c.protocol.noise.t_m = to_double(v); }},
      {"f_bsm", [](RunConfiguration& c, const std::string& v) { c.protocol.noise.f_bsm = to_double(v); }},
      {"p_loss", [](RunConfiguration& c, const std::string& v) { c.protocol.noise.p_loss = to_double(v); }},
      {"max_repetitions",
       [](RunConfiguration& c, const std::string& v) { c.protocol.noise.max_repetitions = to_int(v); }},
      {"phase_mode",
       [](RunConfiguration& c, const std::string& v) {
         if (v == "delta") {
           c.protocol.noise.phase_mode = noise::PhaseNoiseMode::delta;
         } else if (v == "independent") {
           c.protocol.noise.phase_mode = noise::PhaseNoiseMode::independent;
         } else {
           throw ConfigError("phase_mode is delta or independent, got '" + v + "'");
         }
       }},
      {"delta_mode",
       [](RunConfiguration& c, const std::string& v) {
         c.protocol.noise.phase_mode = to_bool(v) ? noise::PhaseNoiseMode::delta : noise::PhaseNoiseMode::independent;
       }},
      {"bsm_model",
       [](RunConfiguration& c, const std::string& v) {
         if (v == "readout") {
           c.protocol.noise.bsm_model = noise::BsmModel::readout;
         } else if (v == "depolarizing") {
           c.protocol.noise.bsm_model = noise::BsmModel::depolarizing;
         } else {
           throw ConfigError("bsm_model is readout or depolarizing, got '" + v + "'");
         }
       }},
      {"active_correction", [](RunConfiguration& c, const std::string& v) { c.protocol.active_correction = to_bool(v); }},
      {"swap_before_bsm", [](RunConfiguration& c, const std::string& v) { c.protocol.swap_before_bsm = to_bool(v); }},
      {"phi1",
       [](RunConfiguration& c, const std::string& v) {
         if (v == "random") {
           c.protocol.phi1.reset();
         } else {
           c.protocol.phi1 = to_double(v);
         }
       }},
      {"trials", [](RunConfiguration& c, const std::string& v) { c.trials = to_count(v); }},
      {"seed", [](RunConfiguration& c, const std::string& v) { c.seed = to_count(v); }},
      {"threads", [](RunConfiguration& c, const std::string& v) { c.threads = to_int(v); }},
      {"sweep_parameter", [](RunConfiguration& c, const std::string& v) { c.sweep_parameter = v; }},
      {"sweep_values", [](RunConfiguration& c, const std::string& v) { c.sweep_values = to_list(v); }},
      {"forge_strategy",
       [](RunConfiguration& c, const std::string& v) {
         try {
           c.forge_strategy = adversary::parse_strategy(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       }},
      {"forge_rounds", [](RunConfiguration& c, const std::string& v) { c.forge_rounds = to_int(v); }},
      {"out", [](RunConfiguration& c, const std::string& v) { c.out = v; }},
      {"format",
       [](RunConfiguration& c, const std::string& v) {
         try {
           c.format = parse_format(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       }},
  };
  return table;
}

}  // namespace

void RunConfiguration::validate() const {
  protocol.validate();
  if (trials < 1) {
    throw ConfigError("trials must be >= 1");
  }
  if (threads < 1) {
    throw ConfigError("threads must be >= 1");
  }
  if (forge_rounds < 1) {
    throw ConfigError("forge_rounds must be >= 1");
  }
}

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

RunConfiguration parse_config(const std::string& text, const std::string& source) {
  RunConfiguration c;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line, "expected 'key = value'");
    }
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ParseError(source, line, "unknown key '" + key + "'");
    }
    if (const auto prev = seen.find(key); prev != seen.end()) {
      throw ParseError(source, line, "'" + key + "' already set on line " + std::to_string(prev->second));
    }
    seen[key] = line;
    if (value.empty()) {
      throw ParseError(source, line, "missing value for '" + key + "'");
    }
    try {
      it->second(c, value);
    } catch (const ConfigError& e) {
      throw ParseError(source, line, key + ": " + e.what());
    }
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ParseError(source, line, e.what());
  }
  return c;
}

RunConfiguration load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw ParseError(path, 0, "cannot open file");
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::string serialize(const RunConfiguration& c) {
  const auto& n = c.protocol.noise;
  std::ostringstream os;
  os << "alpha = " << (n.alpha_mode.kind == noise::AlphaMode::Kind::uniform01 ? "uniform" : num(n.alpha_mode.value))
     << '\n'
     << "sigma_theta = " << num(n.sigma_theta) << '\n'
     << "delta_phi = " << num(n.delta_phi) << '\n'
     << "t_s = " << num(n.t_s) << '\n'
     << "t_m = " << num(n.t_m) << '\n'
     << "f_bsm = " << num(n.f_bsm) << '\n'
     << "p_loss = " << num(n.p_loss) << '\n'
     << "max_repetitions = " << n.max_repetitions << '\n'
     << "phase_mode = " << (n.phase_mode == noise::PhaseNoiseMode::delta ? "delta" : "independent") << '\n'
     << "bsm_model = " << (n.bsm_model == noise::BsmModel::readout ? "readout" : "depolarizing") << '\n'
     << "active_correction = " << (c.protocol.active_correction ? "true" : "false") << '\n'
     << "swap_before_bsm = " << (c.protocol.swap_before_bsm ? "true" : "false") << '\n'
     << "phi1 = " << (c.protocol.phi1 ? num(*c.protocol.phi1) : "random") << '\n'
     << "trials = " << c.trials << '\n'
     << "seed = " << c.seed << '\n'
     << "threads = " << c.threads << '\n'
     << "sweep_parameter = " << c.sweep_parameter << '\n';
  if (!c.sweep_values.empty()) {
    os << "sweep_values = ";
    for (std::size_t i = 0; i < c.sweep_values.size(); ++i) {
      os << (i ? ", " : "") << num(c.sweep_values[i]);
    }
    os << '\n';
  }
  os << "forge_strategy = " << adversary::to_string(c.forge_strategy) << '\n'
     << "forge_rounds = " << c.forge_rounds << '\n';
  if (!c.out.empty()) {
    os << "out = " << c.out << '\n';
  }
  os << "format = " << to_string(c.format) << '\n';
  return os.str();
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Format parse_format(const std::string& name) {
  if (name == "csv") {
    return Format::csv;
  }
  if (name == "json") {
    return Format::json;
  }
  throw std::invalid_argument("format is csv or json, got '" + name + "'");
}

}  // namespace qtoken::cli
