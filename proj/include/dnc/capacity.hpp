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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dnc/core.hpp"
#include "dnc/enumerate.hpp"
#include "dnc/estimate.hpp"

namespace dnc {

/// Root-finding failure that is not a model error: bracket search gave up,
/// or a probe contradicted the estimate.
class EstimatorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double bisection_tol = 1e-12;
  int bisection_max_iter = 200;
  double power_tol = 1e-14;
  int power_max_iter = 10000;
};

/// Partial sum of N(w_k) exp(-w_k s) over w_k <= w_truncate. Scalar is
/// double or std::complex<double>. Terms are formed in the log domain so
/// large counts do not overflow before the exponential damps them.
template <typename Scalar>
Scalar gf_eval(const WeightSpectrum& spectrum, const Scalar& s, double w_truncate) {
  if (w_truncate > spectrum.w_max.to_double()) {
    throw std::invalid_argument("gf_eval truncation lies beyond the spectrum's w_max");
  }
  Scalar sum(0);
  for (const auto& e : spectrum.entries) {
    const double w = e.weight.to_double();
    if (w > w_truncate) break;
    sum += std::exp(Scalar(log_big(e.count)) - Scalar(w) * s);
  }
  return sum;
}

/// M(s)_{ij} = sum over transitions i -> j of exp(-w s).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> transfer_matrix(const WeightedFsm& fsm, const Scalar& s) {
  const auto n = static_cast<Eigen::Index>(fsm.num_states());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (std::size_t i = 0; i < fsm.num_states(); ++i) {
    for (const auto& t : fsm.outgoing(i)) {
      using std::exp;
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t.to)) += exp(-Scalar(t.symbol.weight.value()) * s);
    }
  }
  return m;
}

/// Spectral radius of M(s).
double transfer_spectral_radius(const WeightedFsm& fsm, double s, const SolverOptions& options = {});

/// Unique s >= 0 with sum_i exp(-w_i s) = 1; exactly 0 for one symbol.
CapacityEstimate characteristic_root(const Alphabet& alphabet, const SolverOptions& options = {});

/// s with rho(M(s)) = 1 by outer bisection over inner shifted power
/// iteration. Returns exactly 0 when rho(M(0)) = 1.
CapacityEstimate fsm_capacity(const WeightedFsm& fsm, const SolverOptions& options = {});

struct AbscissaOptions {
  double delta = 0.1;
  double divergence_threshold = 1e6;
  double tail_fraction = 0.25;
};

struct AbscissaProbe {
  double s_above = 0.0;
  double s_below = 0.0;
  std::vector<double> partial_sums_above;  // cumulative, one per spectrum entry
  double final_sum_below = 0.0;
  /// Least-squares slope of ln(term) against weight over the trailing
  /// window: negative means the terms decay geometrically.
  double log_growth_above = 0.0;
  double log_growth_below = 0.0;
  bool converges_above = false;
  bool diverges_below = false;
};

struct AbscissaEstimate {
  CapacityEstimate estimate;
  AbscissaProbe probe;
};

/// Empirical limsup estimate of the abscissa of convergence, with a probe
/// on either side of it: at value + delta the series terms must decay,
/// at value - delta the partial sum must pass the divergence threshold or
/// the terms must grow. Throws ModelError when the spectrum fails the
/// density check and EstimatorFailure when the probe contradicts the
/// estimate.
AbscissaEstimate abscissa_estimate(const WeightSpectrum& spectrum, const AbscissaOptions& options = {});

}  // namespace dnc
