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

#include "dnc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnc/bisection.hpp"
#include "dnc/format.hpp"
#include "dnc/perron.hpp"

namespace dnc {

namespace {

// Slope of a least-squares line through (x, y).
double ls_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

CapacityEstimate from_bisection(const BisectionResult<double>& r, Method method) {
  CapacityEstimate e;
  e.value = r.value;
  e.lo = r.lo;
  e.hi = r.hi;
  e.residual = r.residual;
  e.iterations = r.iterations;
  e.method = method;
  return e;
}

}  // namespace

double transfer_spectral_radius(const WeightedFsm& fsm, double s, const SolverOptions& options) {
  return perron_root(transfer_matrix(fsm, s), options.power_tol, options.power_max_iter).rho;
}

CapacityEstimate characteristic_root(const Alphabet& alphabet, const SolverOptions& options) {
  if (alphabet.empty()) throw ModelError("characteristic root of an empty alphabet");
  double w_min = std::numeric_limits<double>::infinity();
  for (const auto& symbol : alphabet) {
    validate_symbol(symbol);
    w_min = std::min(w_min, symbol.weight.value());
  }
  if (alphabet.size() == 1) {
    CapacityEstimate e;
    e.method = Method::characteristic_root;
    return e;
  }

  auto target = [&](double s) {
    double sum = 0.0;
    for (const auto& symbol : alphabet) sum += std::exp(-symbol.weight.value() * s);
    return sum - 1.0;
  };
  const double hi = widen_upper(target, std::log(static_cast<double>(alphabet.size())) / w_min);
  auto r = bisect_decreasing(target, 0.0, hi, options.bisection_tol, options.bisection_max_iter);
  return from_bisection(r, Method::characteristic_root);
}

CapacityEstimate fsm_capacity(const WeightedFsm& fsm, const SolverOptions& options) {
  auto target = [&](double s) { return transfer_spectral_radius(fsm, s, options) - 1.0; };

  const double at_zero = target(0.0);
  if (at_zero < -options.bisection_tol) {
    throw EstimatorFailure("no cycle reachable from the start state; capacity undefined");
  }
  if (at_zero <= options.bisection_tol) {
    CapacityEstimate e;
    e.method = Method::spectral_radius;
    e.residual = std::abs(at_zero);
    return e;
  }

  const double degree = static_cast<double>(fsm.max_out_degree() * fsm.max_multiplicity());
  double hi = std::log(std::max(degree, 1.0)) / fsm.min_weight() + 1.0;
  int doublings = 0;
  while (target(hi) >= 0.0) {
    if (++doublings > 64) throw EstimatorFailure("could not bracket the spectral-radius root");
    hi *= 2.0;
  }
  auto r = bisect_decreasing(target, 0.0, hi, options.bisection_tol, options.bisection_max_iter);
  return from_bisection(r, Method::spectral_radius);
}

AbscissaEstimate abscissa_estimate(const WeightSpectrum& spectrum, const AbscissaOptions& options) {
  if (spectrum.entries.empty()) throw std::invalid_argument("abscissa estimate of an empty spectrum");
  const auto density = density_check(spectrum);
  if (!density.passes) {
    throw ModelError("spectrum is too dense (fitted exponent " + format_double(density.fitted_K) + ")");
  }

  AbscissaEstimate out;
  out.estimate = empirical_capacity(spectrum, options.tail_fraction).estimate;
  out.estimate.method = Method::abscissa;

  AbscissaProbe& probe = out.probe;
  probe.s_above = out.estimate.value + options.delta;
  probe.s_below = out.estimate.value - options.delta;

  std::vector<double> weights, log_counts;
  for (const auto& e : spectrum.entries) {
    weights.push_back(e.weight.to_double());
    log_counts.push_back(log_big(e.count));
  }

  double running = 0.0;
  double below = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += std::exp(log_counts[i] - weights[i] * probe.s_above);
    probe.partial_sums_above.push_back(running);
    below += std::exp(log_counts[i] - weights[i] * probe.s_below);
  }
  probe.final_sum_below = below;

  // Tail window with at least two points for the slope fit.
  std::size_t size = static_cast<std::size_t>(std::ceil(options.tail_fraction * static_cast<double>(weights.size())));
  size = std::clamp<std::size_t>(size, std::min<std::size_t>(2, weights.size()), weights.size());
  const std::size_t begin = weights.size() - size;
  std::vector<double> tail_w(weights.begin() + static_cast<std::ptrdiff_t>(begin), weights.end());
  std::vector<double> above_terms, below_terms;
  for (std::size_t i = begin; i < weights.size(); ++i) {
    above_terms.push_back(log_counts[i] - weights[i] * probe.s_above);
    below_terms.push_back(log_counts[i] - weights[i] * probe.s_below);
  }
  probe.log_growth_above = ls_slope(tail_w, above_terms);
  probe.log_growth_below = ls_slope(tail_w, below_terms);
  probe.converges_above = probe.log_growth_above < 0.0;
  probe.diverges_below = probe.final_sum_below > options.divergence_threshold || probe.log_growth_below > 0.0;

  if (!probe.converges_above) {
    throw EstimatorFailure("generating function does not settle above the estimate " +
                           format_double(out.estimate.value) + " (term growth " +
                           format_double(probe.log_growth_above) + " per unit weight)");
  }
  if (!probe.diverges_below) {
    throw EstimatorFailure("generating function stays bounded below the estimate " +
                           format_double(out.estimate.value) + " (partial sum " +
                           format_double(probe.final_sum_below) + ")");
  }
  return out;
}

}  // namespace dnc
