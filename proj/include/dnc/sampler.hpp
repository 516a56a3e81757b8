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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dnc/capacity.hpp"
#include "dnc/core.hpp"
#include "dnc/maxent.hpp"

namespace dnc {

struct ChainTransition {
  Symbol symbol;
  std::size_t to;
  double probability;
};

/// Stationary maxentropic Markov chain on a strongly connected FSM:
/// p(i -> j via w) = (b_j / b_i) exp(-w s*), with b the Perron right
/// eigenvector of M(s*) normalized so b_start = 1.
struct MaxentChain {
  WeightedFsm fsm;
  double capacity;
  std::vector<std::vector<ChainTransition>> transitions;  // per state
  Eigen::VectorXd right_eigvec;
};

MaxentChain maxent_chain(const WeightedFsm& fsm, const CapacityEstimate& capacity, const SolverOptions& options = {});

/// State-to-state transition matrix of the chain.
Eigen::MatrixXd chain_matrix(const MaxentChain& chain);
Eigen::VectorXd stationary_distribution(const MaxentChain& chain);
/// Stationary entropy per step over stationary weight per step.
double analytic_entropy_rate(const MaxentChain& chain);

struct SampledPath {
  std::vector<std::string> labels;
  double weight = 0.0;
  double log_probability = 0.0;
};

/// Path i draws from its own mt19937_64 stream seeded by splitmix64 of
/// (seed, i), so output is independent of the thread count. Every path is
/// re-checked against the FSM.
std::vector<SampledPath> sample_paths(const MaxentChain& chain, std::size_t count, std::size_t steps,
                                      std::uint64_t seed, unsigned threads = 1);

/// Depth-l paths drawn from the maxentropic level PMF of any branch system,
/// branch by branch with probabilities proportional to exp(-w rate) times
/// the subtree mass below. Memoized on (node, depth).
std::vector<SampledPath> sample_level_paths(const BranchSystem& system, int level, double rate, std::size_t count,
                                            std::uint64_t seed);

/// Plug-in ratio estimator: sum of -ln p over sum of path weights.
double empirical_entropy_rate(std::span<const SampledPath> samples);

/// One path per line: concatenated labels, weight, log-probability.
void write_samples_tsv(std::ostream& out, std::span<const SampledPath> samples);

}  // namespace dnc
