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

#include "qtoken/protocol/transcript.hpp"

#include "qtoken/util/format.hpp"

namespace qtoken::protocol {

using util::format_double;

std::string transcript_csv_header() {
  return "seed,m1,r1,r2,m2,accepted,repetitions_used,sampled_alpha,sampled_theta1,sampled_theta2";
}

std::string to_csv_row(const Transcript& t) {
  std::string row = std::to_string(t.seed);
  for (int b : {t.m1, t.r1, t.r2, t.m2, t.accepted ? 1 : 0, t.repetitions_used}) {
    row += ',';
    row += std::to_string(b);
  }
  for (double v : {t.sampled_alpha, t.sampled_theta1, t.sampled_theta2}) {
    row += ',';
    row += format_double(v, util::kCsvDigits);
  }
  return row;
}

std::string to_json_line(const Transcript& t) {
  return util::JsonObject{}
      .add("seed", static_cast<unsigned long long>(t.seed))
      .add("m1", t.m1)
      .add("r1", t.r1)
      .add("r2", t.r2)
      .add("m2", t.m2)
      .add("accepted", t.accepted)
      .add("repetitions_used", t.repetitions_used)
      .add("sampled_alpha", t.sampled_alpha)
      .add("sampled_theta1", t.sampled_theta1)
      .add("sampled_theta2", t.sampled_theta2)
      .str();
}

}  // namespace qtoken::protocol
