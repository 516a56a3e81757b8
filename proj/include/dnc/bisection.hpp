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

#include <cmath>
#include <stdexcept>

namespace dnc {

template <typename Real>
struct BisectionResult {
  Real value;
  Real lo;
  Real hi;
  Real residual;  // |f(value)|
  int iterations;
  bool converged;  // hi - lo <= tol, or the bracket cannot shrink further
};

/// Root of a strictly decreasing f on [lo, hi] with f(lo) >= 0 >= f(hi).
/// Stops when hi - lo <= tol or after max_iter halvings. An endpoint where
/// f vanishes exactly is returned as is.
template <typename Real, typename F>
BisectionResult<Real> bisect_decreasing(F&& f, Real lo, Real hi, Real tol = Real(1e-12), int max_iter = 200) {
  using std::abs;
  if (!(lo <= hi)) throw std::domain_error("bisection bracket is inverted");
  Real flo = f(lo);
  Real fhi = f(hi);
  if (flo == Real(0)) return {lo, lo, lo, Real(0), 0, true};
  if (fhi == Real(0)) return {hi, hi, hi, Real(0), 0, true};
  if (flo < Real(0) || fhi > Real(0)) throw std::domain_error("bisection bracket does not straddle the root");

  int it = 0;
  bool converged = false;
  while (it < max_iter) {
    if (hi - lo <= tol) {
      converged = true;
      break;
    }
    Real mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) {
      converged = true;
      break;
    }
    ++it;
    Real fmid = f(mid);
    if (fmid == Real(0)) return {mid, mid, mid, Real(0), it, true};
    if (fmid > Real(0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!converged) converged = hi - lo <= tol;
  Real value = lo + (hi - lo) / 2;
  return {value, lo, hi, abs(f(value)), it, converged};
}

/// Nudges hi upward until f(hi) <= 0. Used where the analytic upper bound
/// is itself the root and rounding can leave f(hi) a few ulps positive.
template <typename Real, typename F>
Real widen_upper(F&& f, Real hi, int max_steps = 64) {
  using std::abs;
  Real step = abs(hi) * Real(1e-12);
  if (step == Real(0)) step = Real(1e-12);
  for (int i = 0; i < max_steps && f(hi) > Real(0); ++i) {
    hi += step;
    step *= 2;
  }
  return hi;
}

}  // namespace dnc
