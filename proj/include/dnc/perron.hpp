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
#include <stdexcept>

namespace dnc {

template <typename Scalar>
struct PerronResult {
  Scalar rho;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // positive, max entry 1
  int iterations;
  bool converged;
};

/// Perron root and right eigenvector of a square nonnegative matrix.
///
/// Power iteration runs on m + I, which has the same eigenvectors and a
/// Perron root shifted by exactly one, and is aperiodic whatever the cycle
/// structure of m. With a positive iterate x the Collatz-Wielandt ratios
/// min_i (Bx)_i / x_i <= rho(B) <= max_i (Bx)_i / x_i bracket the root;
/// iteration stops once the bracket is within tol relative, or the norm
/// ratio stalls (reducible matrices, where the lower bound never closes).
template <typename Derived>
PerronResult<typename Derived::Scalar> perron_root(const Eigen::MatrixBase<Derived>& m,
                                                   typename Derived::Scalar tol = 1e-14,
                                                   int max_iter = 10000) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using std::abs;

  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("perron_root needs a nonempty square matrix");
  if ((m.array() < Scalar(0)).any()) throw std::invalid_argument("perron_root needs a nonnegative matrix");

  const Matrix shifted = m + Matrix::Identity(m.rows(), m.cols());
  Vector x = Vector::Ones(m.rows());
  Scalar lambda = Scalar(0);
  int it = 0;
  bool converged = false;
  while (it < max_iter) {
    ++it;
    Vector y = shifted * x;
    const Vector ratio = y.cwiseQuotient(x);
    const Scalar upper = ratio.maxCoeff();
    const Scalar lower = ratio.minCoeff();
    const Scalar norm = y.maxCoeff();
    x = y / norm;
    const Scalar previous = lambda;
    lambda = norm;
    if (upper - lower <= tol * upper) {
      lambda = (upper + lower) / 2;
      converged = true;
      break;
    }
    if (it > 1 && abs(lambda - previous) <= tol * lambda) {
      converged = true;
      break;
    }
  }
  return {lambda - Scalar(1), x, it, converged};
}

}  // namespace dnc
