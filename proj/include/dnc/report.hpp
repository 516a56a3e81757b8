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

#include <string>

#include "dnc/estimate.hpp"
#include "dnc/verify.hpp"

namespace dnc {

/// {"method", "value", "bracket": [lo, hi], "residual", "iterations"}, plus
/// "source" when set. Numbers carry 17 significant digits.
std::string capacity_json(const CapacityEstimate& estimate);

/// Verdict document; system_echo must already be serialized JSON.
std::string verdict_json(const VerifyReport& report, const std::string& system_echo);

}  // namespace dnc
