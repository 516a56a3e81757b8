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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dnc/core.hpp"
#include "dnc/estimate.hpp"
#include "dnc/rational.hpp"

namespace dnc {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer, accurate beyond double range.
double log_big(const BigInt& value);

struct SpectrumEntry {
  Rational weight;
  BigInt count;
};

/// Distinct positive weights of accepted strings up to w_max, strictly
/// increasing, each with the exact number of strings of that weight. The
/// empty string (weight 0) is not listed.
struct WeightSpectrum {
  std::vector<SpectrumEntry> entries;
  Rational w_max;
};

struct SpectrumOptions {
  /// Cap on distinct (weight, node) states held by the sweep.
  std::size_t state_budget = std::size_t{1} << 24;
};

/// Exact weight spectrum by a forward sweep over (weight, node) states in
/// increasing weight order. Counts of paths reaching the same node at the
/// same weight are merged, which makes this the transfer-matrix recurrence
/// for FSMs and keeps generators with small prefix state polynomial.
/// Throws ModelError for real-only weights and BudgetExceeded past the cap.
WeightSpectrum weight_spectrum(const BranchSystem& system, const Rational& w_max, SpectrumOptions options = {});

/// Number of entries with weight strictly below n, for n = 1..floor(w_max).
std::vector<std::int64_t> weights_below(const WeightSpectrum& spectrum);

struct DensityReport {
  std::vector<std::int64_t> n_range;
  std::vector<std::int64_t> k_of_n;
  double fitted_L = 0.0;
  double fitted_K = 0.0;
  bool passes = false;
};

struct DensityOptions {
  std::optional<double> L;
  std::optional<double> K;
  /// Auto-fit passes only while the fitted exponent stays at or below this.
  double polynomial_cap = 8.0;
};

/// Checks max_{w_k < n} k <= L n^K at integer checkpoints. With L and K
/// given the bound is tested pointwise. Otherwise K is fitted as the
/// largest log-log slope between consecutive checkpoints with k > 0 (a
/// local growth exponent, which keeps climbing for exponential growth) and
/// L as the smallest constant making the bound hold; the check passes when
/// K <= polynomial_cap. The fit is a heuristic, not a certificate.
DensityReport density_check(const WeightSpectrum& spectrum, DensityOptions options = {});
DensityReport density_check(std::vector<std::int64_t> n_range, std::vector<std::int64_t> k_of_n,
                            DensityOptions options = {});

struct EmpiricalCapacity {
  CapacityEstimate estimate;
  std::vector<double> sequence;  // ln N(w_k) / w_k
};

/// limsup proxy for ln N(w_k) / w_k: the maximum over the trailing
/// tail_fraction of the spectrum.
EmpiricalCapacity empirical_capacity(const WeightSpectrum& spectrum, double tail_fraction = 0.25);

/// TSV rows "p/q<TAB>count<TAB>c_k" with a header line.
void write_spectrum_tsv(std::ostream& out, const WeightSpectrum& spectrum);

}  // namespace dnc
