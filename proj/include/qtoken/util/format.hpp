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

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qtoken::util {

inline constexpr int kJsonDigits = 17;
inline constexpr int kCsvDigits = 9;

/// printf "%.*g"; non-finite values become "nan" / "inf" / "-inf".
std::string format_double(double value, int significant_digits);

/// Flat JSON object with ordered keys; numbers use kJsonDigits significant digits.
class JsonObject {
 public:
  using Value = std::variant<double, long long, bool, std::string>;

  JsonObject& add(std::string key, double v);
  JsonObject& add(std::string key, long long v);
  JsonObject& add(std::string key, int v) { return add(std::move(key), static_cast<long long>(v)); }
  JsonObject& add(std::string key, unsigned long long v);
  JsonObject& add(std::string key, bool v);
  JsonObject& add(std::string key, std::string v);
  JsonObject& add(std::string key, const char* v) { return add(std::move(key), std::string(v)); }
  /// Inserts pre-rendered JSON (object or array) verbatim.
  JsonObject& add_raw(std::string key, std::string json);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_escape(std::string_view s);

}  // namespace qtoken::util
