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

#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "dnc/core.hpp"

namespace dnc {

/// Malformed system-spec document. The message names the offending field
/// (e.g. "transitions[2].weight") or the parse position.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemSpec {
  BranchSystem system;
  nlohmann::json echo;  // the parsed document, for reports
};

/// System-spec document:
///   {"kind": "memoryless", "symbols": [{"label": "0", "weight": "1"}, ...]}
///   {"kind": "fsm", "states": 2, "start": 0,
///    "transitions": [{"from": 0, "label": "0", "weight": "1", "to": 0}, ...]}
///   {"kind": "builtin", "name": "dyck_prefix" | "golden_mean" | "rll", "d": 1, "k": 3}
/// Weights are strings holding "p/q" or a decimal, parsed exactly. An fsm
/// transition may omit its weight when "symbols" lists the label.
/// Throws SpecError for format problems and ModelError for invalid systems.
SystemSpec parse_system_spec(const nlohmann::json& doc);
SystemSpec parse_system_spec_text(const std::string& text);
SystemSpec load_system_spec(const std::string& path);

}  // namespace dnc
