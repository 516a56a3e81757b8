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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnc/rational.hpp"

namespace dnc {

/// Invalid channel model: dead ends, duplicate labels, nonpositive weights.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration hit its configured state or path budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol weight. Exact weights carry a Rational and can be enumerated;
/// real-only weights are usable by the analytic routines only.
class Weight {
 public:
  Weight(Rational exact) : value_(exact.to_double()), exact_(exact) {}  // NOLINT
  Weight(std::int64_t exact) : Weight(Rational(exact)) {}               // NOLINT
  Weight(int exact) : Weight(Rational(exact)) {}                        // NOLINT
  static Weight real(double value) { return Weight(RealTag{}, value); }

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }

  std::string to_string() const;

 private:
  struct RealTag {};
  Weight(RealTag, double value) : value_(value) {}

  double value_;
  std::optional<Rational> exact_;
};

struct Symbol {
  std::string label;
  Weight weight;
};

using Alphabet = std::vector<Symbol>;

/// Throws ModelError unless the label is nonempty and the weight strictly
/// positive and finite.
void validate_symbol(const Symbol& symbol);

/// Opaque per-system node token: a state index for FSMs, an encoded prefix
/// state for generators.
using NodeHandle = std::int64_t;

struct Branch {
  Symbol symbol;
  NodeHandle next;
};

enum class SystemKind { memoryless, fsm, generator };

const char* to_string(SystemKind kind);

/// Deterministic labeled FSM with positive transition weights. Every state
/// has an outgoing transition and is reachable from the start state.
class WeightedFsm {
 public:
  struct Transition {
    std::size_t from;
    Symbol symbol;
    std::size_t to;
  };

  WeightedFsm(std::size_t num_states, std::size_t start, std::vector<Transition> transitions);

  std::size_t num_states() const { return outgoing_.size(); }
  std::size_t start() const { return start_; }
  std::span<const Transition> outgoing(std::size_t state) const { return outgoing_.at(state); }
  std::vector<Transition> transitions() const;

  std::optional<std::size_t> step(std::size_t state, const std::string& label) const;
  bool accepts(std::span<const std::string> labels) const;

  bool is_strongly_connected() const;
  /// Largest number of parallel transitions between one ordered state pair.
  std::size_t max_multiplicity() const;
  std::size_t max_out_degree() const;
  double min_weight() const;

 private:
  std::size_t start_;
  std::vector<std::vector<Transition>> outgoing_;
};

/// Tree representation of a channel: a root handle plus a pure expansion
/// from a node handle to its weighted, labeled branches. Path weight is the
/// sum of branch weights; path label is the concatenation of branch labels.
/// Immutable and cheap to copy.
class BranchSystem {
 public:
  using ExpandFn = std::function<std::vector<Branch>(NodeHandle)>;

  BranchSystem(SystemKind kind, std::string name, NodeHandle root, ExpandFn expand);

  SystemKind kind() const { return impl_->kind; }
  const std::string& name() const { return impl_->name; }
  NodeHandle root() const { return impl_->root; }
  std::vector<Branch> expand(NodeHandle node) const { return impl_->expand(node); }

  /// Source alphabet for memoryless systems, null otherwise.
  const Alphabet* alphabet() const { return impl_->alphabet ? &*impl_->alphabet : nullptr; }
  /// Source machine for FSM systems, null otherwise.
  const WeightedFsm* fsm() const { return impl_->fsm ? &*impl_->fsm : nullptr; }

 private:
  struct Impl {
    SystemKind kind;
    std::string name;
    NodeHandle root;
    ExpandFn expand;
    std::optional<Alphabet> alphabet;
    std::optional<WeightedFsm> fsm;
  };

  friend BranchSystem make_memoryless(Alphabet alphabet);
  friend BranchSystem fsm_to_branch_system(const WeightedFsm& fsm, std::string name);

  std::shared_ptr<const Impl> impl_;
};

/// All finite sequences over the alphabet.
BranchSystem make_memoryless(Alphabet alphabet);

/// Depth-l paths are the length-l transition sequences from the start state.
BranchSystem fsm_to_branch_system(const WeightedFsm& fsm, std::string name = "fsm");

/// Sequences over "(" and ")" (unit weights) whose running balance never
/// goes negative. Node handle = current balance.
BranchSystem make_dyck_prefix();

/// Generic generator-backed system.
BranchSystem make_generator(std::string name, NodeHandle root, BranchSystem::ExpandFn expand);

/// One-state FSM with one self-loop per symbol.
WeightedFsm memoryless_fsm(const Alphabet& alphabet);

/// (d,k) run-length-limited constraint: every run of 0s has length at most
/// k, and a 1 may follow only after at least d 0s. State i counts the 0s
/// since the last 1; the start state is 0. Unit weights.
WeightedFsm make_rll(int d, int k);

/// Binary sequences without two consecutive 1s, unit weights.
WeightedFsm make_golden_mean();

/// Flattened accepted-string view of a system: every root path of depth at
/// most max_depth, keyed by concatenated label (the empty path included).
/// Leaves are allowed, so finite trees can be flattened. Throws ModelError
/// when two distinct paths share a label.
std::map<std::string, Weight> flatten(const BranchSystem& system, int max_depth);

/// Walks every node up to max_depth and checks the structural invariants:
/// nonempty expansions, pairwise-distinct labels at each node, valid symbols,
/// and distinct concatenated labels across all paths of equal depth.
void check_branch_system(const BranchSystem& system, int max_depth = 8);

}  // namespace dnc
