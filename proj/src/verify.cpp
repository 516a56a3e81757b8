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

#include "dnc/verify.hpp"

#include <cmath>
#include <future>

namespace dnc {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

struct CombSide {
  CapacityEstimate estimate;
  std::vector<double> trajectory;
};

CombSide counting_side(const BranchSystem& system, const VerifyOptions& options) {
  CombSide side;
  std::optional<WeightSpectrum> spectrum;
  try {
    spectrum = weight_spectrum(system, options.w_max, options.spectrum);
    if (spectrum->entries.size() >= 2) {
      side.trajectory = empirical_capacity(*spectrum, options.tail_fraction).sequence;
    }
  } catch (const ModelError&) {
    // real-only weights: no spectrum, root-based methods still apply
  } catch (const BudgetExceeded&) {
  }

  if (const Alphabet* alphabet = system.alphabet()) {
    side.estimate = characteristic_root(*alphabet, options.maxent.solver);
  } else if (const WeightedFsm* fsm = system.fsm()) {
    side.estimate = fsm_capacity(*fsm, options.maxent.solver);
  } else {
    if (!spectrum) throw BudgetExceeded("generator spectrum could not be enumerated to w_max");
    side.estimate = abscissa_estimate(*spectrum, options.abscissa).estimate;
  }
  return side;
}

}  // namespace

VerifyReport verify_equality(const BranchSystem& system, const VerifyOptions& options) {
  VerifyReport report;

  auto comb_future = std::async(std::launch::async, [&] { return counting_side(system, options); });
  std::optional<ProbCapacity> prob;
  std::string prob_error;
  try {
    prob = cprob_estimate(system, options.l_max, options.tail_fraction, options.maxent);
  } catch (const BudgetExceeded& e) {
    prob_error = e.what();
  }

  std::optional<CombSide> comb;
  std::string comb_error;
  try {
    comb = comb_future.get();
  } catch (const BudgetExceeded& e) {
    comb_error = e.what();
  } catch (const EstimatorFailure& e) {
    comb_error = e.what();
  }

  if (comb) {
    report.c_comb = comb->estimate;
    report.comb_trajectory = std::move(comb->trajectory);
  }
  if (prob) {
    report.c_prob = prob->estimate;
    for (const auto& level : prob->levels) report.prob_trajectory.push_back(level.rate);
  }
  if (!comb || !prob) {
    report.verdict = Verdict::inconclusive;
    report.message = !comb ? "counting side: " + comb_error : "entropy side: " + prob_error;
    return report;
  }

  report.difference = std::abs(report.c_comb.value - report.c_prob.value);
  const double c = report.c_comb.value;
  const TailWindow tail = tail_window(report.prob_trajectory, options.tail_fraction);
  report.ae_pass = true;
  report.io_pass = false;
  for (std::size_t i = tail.begin; i < report.prob_trajectory.size(); ++i) {
    const double r = report.prob_trajectory[i];
    if (!(r < c + options.tol)) report.ae_pass = false;
    if (r > c - options.tol) report.io_pass = true;
  }

  if (prob->truncated) {
    report.verdict = Verdict::inconclusive;
    report.message = "entropy side stopped at level " + std::to_string(prob->levels.size()) + " (budget)";
  } else if (report.difference <= options.tol) {
    report.verdict = Verdict::pass;
  } else {
    report.verdict = Verdict::fail;
    report.message = "sides differ by more than the tolerance";
  }
  return report;
}

}  // namespace dnc
