// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dnc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dnc/format.hpp"

namespace dnc {

namespace {

// Non-finite values are not valid JSON numbers.
std::string number(double v) {
  return std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
}

std::string array(const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += number(values[i]);
  }
  return s + "]";
}

std::string quoted(const std::string& text) {
  std::string s = "\"";
  for (char c : text) {
    switch (c) {
      case '"':
        s += "\\\"";
        break;
      case '\\':
        s += "\\\\";
        break;
      case '\n':
        s += "\\n";
        break;
      case '\t':
        s += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          s += buf;
        } else {
          s += c;
        }
    }
  }
  return s + "\"";
}

}  // namespace

std::string capacity_json(const CapacityEstimate& e) {
  std::ostringstream out;
  out << "{\"method\": " << quoted(to_string(e.method)) << ", \"value\": " << number(e.value)
      << ", \"bracket\": [" << number(e.lo) << ", " << number(e.hi) << "], \"residual\": " << number(e.residual)
      << ", \"iterations\": " << e.iterations;
  if (!e.source.empty()) out << ", \"source\": " << quoted(e.source);
  out << "}";
  return out.str();
}

std::string verdict_json(const VerifyReport& report, const std::string& system_echo) {
  std::ostringstream out;
  out << "{\n"
      << "  \"system\": " << system_echo << ",\n"
      << "  \"c_comb\": " << capacity_json(report.c_comb) << ",\n"
      << "  \"c_prob\": " << capacity_json(report.c_prob) << ",\n"
      << "  \"difference\": " << number(report.difference) << ",\n"
      << "  \"epsilon_probes\": {\"ae_pass\": " << (report.ae_pass ? "true" : "false")
      << ", \"io_pass\": " << (report.io_pass ? "true" : "false") << "},\n"
      << "  \"trajectories\": {\"comb\": " << array(report.comb_trajectory)
      << ", \"prob\": " << array(report.prob_trajectory) << "},\n"
      << "  \"message\": " << quoted(report.message) << ",\n"
      << "  \"verdict\": " << quoted(to_string(report.verdict)) << "\n"
      << "}\n";
  return out.str();
}

}  // namespace dnc
