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

#include <span>
#include <string>

namespace dnc {

enum class Method { empirical, characteristic_root, spectral_radius, abscissa };

const char* to_string(Method method);

/// A capacity value in nats per unit weight.
///
/// For root-based methods [lo, hi] is the final bisection bracket and
/// residual is |target(value)|. For sequence-based methods [lo, hi] spans
/// the trailing window the estimate was taken from and residual is zero.
struct CapacityEstimate {
  double value = 0.0;
  Method method = Method::empirical;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
  /// Free-form marker, e.g. "maxent" for the entropy-rate side.
  std::string source;
};

struct TailWindow {
  double max = 0.0;
  double min = 0.0;
  std::size_t begin = 0;  // first index of the window
};

/// Trailing-window summary used as the finite-sample limsup proxy. The
/// window holds ceil(fraction * n) entries, at least one.
TailWindow tail_window(std::span<const double> sequence, double fraction);

}  // namespace dnc
