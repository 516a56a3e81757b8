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

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dnc/capacity.hpp"
#include "dnc/core.hpp"
#include "dnc/enumerate.hpp"
#include "dnc/estimate.hpp"

namespace dnc {

/// Malformed or stale probability mass function.
class PmfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MaxentOptions {
  /// Distinct (node, weight) classes held per level by the level walk.
  std::size_t class_budget = std::size_t{1} << 22;
  /// Explicit paths materialized by maxent_pmf.
  std::size_t path_budget = std::size_t{1} << 22;
  SolverOptions solver;
};

/// Depth-l paths grouped by total weight.
struct WeightClass {
  double weight;
  BigInt count;
};

/// Walks a branch system level by level, keeping path counts per (node,
/// path weight). Depth-l paths are never materialized, so supports far
/// beyond the path budget stay cheap when nodes and weights repeat. Weights
/// are tracked exactly while every branch weight is exact and switch to
/// doubles on the first real-only weight.
class LevelWalker {
 public:
  explicit LevelWalker(BranchSystem system, std::size_t class_budget = std::size_t{1} << 22);
  ~LevelWalker();
  LevelWalker(LevelWalker&&) noexcept;
  LevelWalker& operator=(LevelWalker&&) noexcept;

  int depth() const;
  /// Moves to the next depth. Throws BudgetExceeded past the class budget
  /// and ModelError when a reachable node has no branches.
  void advance();
  std::vector<WeightClass> weight_classes() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct LevelSolution {
  int level = 0;
  double rate = 0.0;        // R_l, nats per unit weight
  double avg_weight = 0.0;  // L_l under the maxentropic PMF
  double entropy = 0.0;     // H_l in nats
  BigInt support_size;
  double residual = 0.0;  // |sum exp(-w R_l) - 1|
  int iterations = 0;
};

/// R_l for the given weight classes: root of sum N_c exp(-w_c s) = 1 on
/// [0, ln(support) / min weight], 0 for a single path.
LevelSolution solve_level(int level, const std::vector<WeightClass>& classes, const SolverOptions& options = {});

/// R_l together with L_l and H_l of the maxentropic PMF at depth l.
LevelSolution solve_level_rate(const BranchSystem& system, int level, const MaxentOptions& options = {});

struct PathProbability {
  std::string label;  // concatenated branch labels
  double weight;
  double probability;
};

/// A PMF over the depth-l paths of a system.
struct LevelPmf {
  int level = 0;
  std::vector<PathProbability> entries;
};

struct MaxentPmf {
  LevelPmf pmf;
  double rate = 0.0;
};

/// Every depth-l path, in depth-first branch order, with weight.
std::vector<PathProbability> level_paths(const BranchSystem& system, int level, std::size_t path_budget);

/// q(x) = exp(-w(x) rate) on every depth-l path. Throws PmfError when the
/// masses miss 1 by more than 1e-6 (a rate not solved for this level).
MaxentPmf maxent_pmf(const BranchSystem& system, int level, double rate, const MaxentOptions& options = {});

struct EntropyAndWeight {
  double entropy;     // nats
  double avg_weight;  // weight units
};

/// H = -sum p ln p (0 ln 0 = 0) and L = sum p w. Throws PmfError unless
/// all p >= 0 and they sum to 1 within 1e-6.
EntropyAndWeight entropy_and_avg_weight(const LevelPmf& pmf);

struct KlGap {
  double gap;         // D(p || q) in nats
  double rate;        // H(p) / L(p)
  double level_rate;  // R_l
};

/// Gap between an arbitrary level PMF and the maxentropic one. Weights are
/// taken from the system's support; p must only use support labels.
KlGap kl_gap(const LevelPmf& p, const BranchSystem& system, int level, const MaxentOptions& options = {});

struct ProbCapacity {
  CapacityEstimate estimate;
  std::vector<LevelSolution> levels;
  bool truncated = false;  // budget ran out before l_max
};

/// R_l for l = 1..l_max and their trailing-window maximum.
ProbCapacity cprob_estimate(const BranchSystem& system, int l_max, double tail_fraction = 0.25,
                            const MaxentOptions& options = {});

/// Level report TSV: l, support_size, R_l, L_l, H_l, H_l/L_l. With
/// in_bits the rate and entropy columns are converted from nats.
void write_level_tsv(std::ostream& out, const std::vector<LevelSolution>& levels, bool in_bits = false);

}  // namespace dnc
