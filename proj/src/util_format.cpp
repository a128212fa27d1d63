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

#include "qtoken/util/format.hpp"

#include <cmath>
#include <cstdio>

namespace qtoken::util {

std::string format_double(double value, int significant_digits) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

JsonObject& JsonObject::add(std::string key, double v) {
  // JSON has no NaN/Inf literals.
  fields_.emplace_back(std::move(key), std::isfinite(v) ? format_double(v, kJsonDigits) : "null");
  return *this;
}

JsonObject& JsonObject::add(std::string key, long long v) {
  fields_.emplace_back(std::move(key), std::to_string(v));
  return *this;
}

JsonObject& JsonObject::add(std::string key, unsigned long long v) {
  fields_.emplace_back(std::move(key), std::to_string(v));
  return *this;
}

JsonObject& JsonObject::add(std::string key, bool v) {
  fields_.emplace_back(std::move(key), v ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::add(std::string key, std::string v) {
  fields_.emplace_back(std::move(key), json_escape(v));
  return *this;
}

JsonObject& JsonObject::add_raw(std::string key, std::string json) {
  fields_.emplace_back(std::move(key), std::move(json));
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += json_escape(fields_[i].first);
    out += ":";
    out += fields_[i].second;
  }
  out += "}";
  return out;
}

}  // namespace qtoken::util
