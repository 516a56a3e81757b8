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
#include <vector>

#include "dnc/capacity.hpp"
#include "dnc/core.hpp"
#include "dnc/maxent.hpp"

namespace dnc {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict verdict);

struct VerifyOptions {
  Rational w_max = 40;
  int l_max = 40;
  double tol = 1e-6;
  double tail_fraction = 0.25;
  AbscissaOptions abscissa;
  SpectrumOptions spectrum;
  MaxentOptions maxent;
};

struct VerifyReport {
  CapacityEstimate c_comb;
  CapacityEstimate c_prob;
  std::vector<double> comb_trajectory;  // ln N(w_k) / w_k, empty if not enumerable
  std::vector<double> prob_trajectory;  // R_l
  double difference = 0.0;
  /// R_l < C + tol for every l in the trailing window.
  bool ae_pass = false;
  /// R_l > C - tol for some l in the trailing window.
  bool io_pass = false;
  Verdict verdict = Verdict::inconclusive;
  std::string message;
};

/// Runs the counting side (characteristic root for memoryless systems,
/// spectral radius for FSMs, abscissa estimate otherwise) and the maximum
/// entropy side, and compares them. PASS iff |difference| <= tol. Budget
/// exhaustion or an estimator failure gives INCONCLUSIVE with whatever was
/// computed.
VerifyReport verify_equality(const BranchSystem& system, const VerifyOptions& options = {});

}  // namespace dnc
