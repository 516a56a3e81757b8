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

#include "dnc/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "dnc/format.hpp"

namespace dnc {

std::string Weight::to_string() const {
  return exact_ ? exact_->to_string() : format_double(value_);
}

void validate_symbol(const Symbol& symbol) {
  if (symbol.label.empty()) throw ModelError("symbol label must be nonempty");
  if (!(symbol.weight.value() > 0.0) || !std::isfinite(symbol.weight.value())) {
    throw ModelError("symbol '" + symbol.label + "' has nonpositive weight " + symbol.weight.to_string());
  }
}

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::memoryless:
      return "memoryless";
    case SystemKind::fsm:
      return "fsm";
    case SystemKind::generator:
      return "generator";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// WeightedFsm

WeightedFsm::WeightedFsm(std::size_t num_states, std::size_t start, std::vector<Transition> transitions)
    : start_(start), outgoing_(num_states) {
  if (num_states == 0) throw ModelError("fsm needs at least one state");
  if (start >= num_states) throw ModelError("fsm start state out of range");
  for (auto& t : transitions) {
    if (t.from >= num_states || t.to >= num_states) {
      throw ModelError("transition '" + t.symbol.label + "' references a state out of range");
    }
    validate_symbol(t.symbol);
    for (const auto& other : outgoing_[t.from]) {
      if (other.symbol.label == t.symbol.label) {
        throw ModelError("state " + std::to_string(t.from) + " has two transitions labeled '" +
                         t.symbol.label + "'");
      }
    }
    outgoing_[t.from].push_back(std::move(t));
  }
  for (std::size_t s = 0; s < num_states; ++s) {
    if (outgoing_[s].empty()) throw ModelError("state " + std::to_string(s) + " is a dead end");
  }

  std::vector<bool> seen(num_states, false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (const auto& t : outgoing_[s]) {
      if (!seen[t.to]) {
        seen[t.to] = true;
        queue.push_back(t.to);
      }
    }
  }
  for (std::size_t s = 0; s < num_states; ++s) {
    if (!seen[s]) throw ModelError("state " + std::to_string(s) + " is unreachable from the start state");
  }
}

std::vector<WeightedFsm::Transition> WeightedFsm::transitions() const {
  std::vector<Transition> all;
  for (const auto& out : outgoing_) all.insert(all.end(), out.begin(), out.end());
  return all;
}

std::optional<std::size_t> WeightedFsm::step(std::size_t state, const std::string& label) const {
  for (const auto& t : outgoing_.at(state)) {
    if (t.symbol.label == label) return t.to;
  }
  return std::nullopt;
}

bool WeightedFsm::accepts(std::span<const std::string> labels) const {
  std::size_t state = start_;
  for (const auto& label : labels) {
    auto next = step(state, label);
    if (!next) return false;
    state = *next;
  }
  return true;
}

bool WeightedFsm::is_strongly_connected() const {
  const std::size_t n = num_states();
  for (std::size_t source = 0; source < n; ++source) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t s = stack.back();
      stack.pop_back();
      for (const auto& t : outgoing_[s]) {
        if (!seen[t.to]) {
          seen[t.to] = true;
          ++count;
          stack.push_back(t.to);
        }
      }
    }
    if (count != n) return false;
  }
  return true;
}

std::size_t WeightedFsm::max_multiplicity() const {
  std::size_t best = 0;
  for (const auto& out : outgoing_) {
    std::map<std::size_t, std::size_t> per_target;
    for (const auto& t : out) best = std::max(best, ++per_target[t.to]);
  }
  return best;
}

std::size_t WeightedFsm::max_out_degree() const {
  std::size_t best = 0;
  for (const auto& out : outgoing_) best = std::max(best, out.size());
  return best;
}

double WeightedFsm::min_weight() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& out : outgoing_) {
    for (const auto& t : out) best = std::min(best, t.symbol.weight.value());
  }
  return best;
}

// ---------------------------------------------------------------------------
// BranchSystem

BranchSystem::BranchSystem(SystemKind kind, std::string name, NodeHandle root, ExpandFn expand)
    : impl_(std::make_shared<const Impl>(Impl{kind, std::move(name), root, std::move(expand), {}, {}})) {}

BranchSystem make_memoryless(Alphabet alphabet) {
  if (alphabet.empty()) throw ModelError("memoryless alphabet is empty");
  std::set<std::string> labels;
  for (const auto& symbol : alphabet) {
    validate_symbol(symbol);
    if (!labels.insert(symbol.label).second) throw ModelError("duplicate label '" + symbol.label + "'");
  }
  std::vector<Branch> branches;
  for (const auto& symbol : alphabet) branches.push_back({symbol, 0});

  BranchSystem system(SystemKind::memoryless, "memoryless", 0,
                      [branches](NodeHandle) { return branches; });
  auto impl = std::make_shared<BranchSystem::Impl>(*system.impl_);
  impl->alphabet = std::move(alphabet);
  system.impl_ = std::move(impl);
  return system;
}

BranchSystem fsm_to_branch_system(const WeightedFsm& fsm, std::string name) {
  std::vector<std::vector<Branch>> table(fsm.num_states());
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    for (const auto& t : fsm.outgoing(s)) table[s].push_back({t.symbol, static_cast<NodeHandle>(t.to)});
  }
  BranchSystem system(SystemKind::fsm, std::move(name), static_cast<NodeHandle>(fsm.start()),
                      [table = std::move(table)](NodeHandle node) { return table.at(static_cast<std::size_t>(node)); });
  auto impl = std::make_shared<BranchSystem::Impl>(*system.impl_);
  impl->fsm = fsm;
  system.impl_ = std::move(impl);
  return system;
}

BranchSystem make_dyck_prefix() {
  return BranchSystem(SystemKind::generator, "dyck_prefix", 0, [](NodeHandle balance) {
    std::vector<Branch> out{{Symbol{"(", 1}, balance + 1}};
    if (balance > 0) out.push_back({Symbol{")", 1}, balance - 1});
    return out;
  });
}

BranchSystem make_generator(std::string name, NodeHandle root, BranchSystem::ExpandFn expand) {
  return BranchSystem(SystemKind::generator, std::move(name), root, std::move(expand));
}

WeightedFsm memoryless_fsm(const Alphabet& alphabet) {
  std::vector<WeightedFsm::Transition> loops;
  for (const auto& symbol : alphabet) loops.push_back({0, symbol, 0});
  return WeightedFsm(1, 0, std::move(loops));
}

WeightedFsm make_rll(int d, int k) {
  if (d < 0 || k <= d) throw ModelError("rll requires 0 <= d < k");
  std::vector<WeightedFsm::Transition> transitions;
  for (int i = 0; i <= k; ++i) {
    const auto from = static_cast<std::size_t>(i);
    if (i < k) transitions.push_back({from, Symbol{"0", 1}, from + 1});
    if (i >= d) transitions.push_back({from, Symbol{"1", 1}, 0});
  }
  return WeightedFsm(static_cast<std::size_t>(k) + 1, 0, std::move(transitions));
}

WeightedFsm make_golden_mean() {
  return WeightedFsm(2, 0, {{0, Symbol{"0", 1}, 0}, {0, Symbol{"1", 1}, 1}, {1, Symbol{"0", 1}, 0}});
}

// ---------------------------------------------------------------------------
// Structural checks

namespace {

struct PathState {
  NodeHandle node;
  std::string label;
  Weight weight;
};

Weight add_weights(const Weight& a, const Weight& b) {
  if (a.exact() && b.exact()) return *a.exact() + *b.exact();
  return Weight::real(a.value() + b.value());
}

}  // namespace

std::map<std::string, Weight> flatten(const BranchSystem& system, int max_depth) {
  std::map<std::string, Weight> accepted;
  accepted.emplace("", Weight(0));
  std::vector<PathState> level{{system.root(), "", Weight(0)}};
  for (int depth = 1; depth <= max_depth && !level.empty(); ++depth) {
    std::vector<PathState> next;
    for (const auto& path : level) {
      for (const auto& branch : system.expand(path.node)) {
        PathState child{branch.next, path.label + branch.symbol.label, add_weights(path.weight, branch.symbol.weight)};
        if (!accepted.emplace(child.label, child.weight).second) {
          throw ModelError("two distinct paths carry the label '" + child.label + "'");
        }
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return accepted;
}

void check_branch_system(const BranchSystem& system, int max_depth) {
  std::set<std::string> seen_labels{""};
  std::vector<std::pair<NodeHandle, std::string>> level{{system.root(), ""}};
  for (int depth = 0; depth < max_depth; ++depth) {
    std::vector<std::pair<NodeHandle, std::string>> next;
    for (const auto& [node, label] : level) {
      auto branches = system.expand(node);
      if (branches.empty()) {
        throw ModelError("node after '" + label + "' has no outgoing branch");
      }
      std::set<std::string> local;
      for (const auto& branch : branches) {
        validate_symbol(branch.symbol);
        if (!local.insert(branch.symbol.label).second) {
          throw ModelError("node after '" + label + "' has two branches labeled '" + branch.symbol.label + "'");
        }
        std::string child = label + branch.symbol.label;
        if (!seen_labels.insert(child).second) {
          throw ModelError("two distinct paths carry the label '" + child + "'");
        }
        next.emplace_back(branch.next, std::move(child));
      }
    }
    level = std::move(next);
  }
}

}  // namespace dnc
