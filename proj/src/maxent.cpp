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

#include "dnc/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "dnc/bisection.hpp"
#include "dnc/format.hpp"

namespace dnc {

// ---------------------------------------------------------------------------
// LevelWalker

struct LevelWalker::State {
  BranchSystem system;
  std::size_t budget;
  int depth = 0;
  bool exact = true;
  std::map<std::pair<NodeHandle, Rational>, BigInt> exact_cells;
  std::map<std::pair<NodeHandle, double>, BigInt> real_cells;
  std::unordered_map<NodeHandle, std::vector<Branch>> expansions;

  const std::vector<Branch>& branches_of(NodeHandle node) {
    auto it = expansions.find(node);
    if (it == expansions.end()) {
      auto branches = system.expand(node);
      if (branches.empty()) throw ModelError("a reachable node has no outgoing branch");
      for (const auto& b : branches) validate_symbol(b.symbol);
      it = expansions.emplace(node, std::move(branches)).first;
    }
    return it->second;
  }

  void check_budget(std::size_t size) const {
    if (size > budget) {
      throw BudgetExceeded("level " + std::to_string(depth + 1) + " exceeded " + std::to_string(budget) +
                           " weight classes");
    }
  }

  void to_real() {
    for (auto& [key, count] : exact_cells) real_cells[{key.first, key.second.to_double()}] += count;
    exact_cells.clear();
    exact = false;
  }

  bool advance_exact() {
    std::map<std::pair<NodeHandle, Rational>, BigInt> next;
    for (const auto& [key, count] : exact_cells) {
      for (const auto& b : branches_of(key.first)) {
        if (!b.symbol.weight.is_exact()) return false;
        next[{b.next, key.second + *b.symbol.weight.exact()}] += count;
      }
      check_budget(next.size());
    }
    exact_cells = std::move(next);
    return true;
  }

  void advance_real() {
    std::map<std::pair<NodeHandle, double>, BigInt> next;
    for (const auto& [key, count] : real_cells) {
      for (const auto& b : branches_of(key.first)) next[{b.next, key.second + b.symbol.weight.value()}] += count;
      check_budget(next.size());
    }
    real_cells = std::move(next);
  }
};

LevelWalker::LevelWalker(BranchSystem system, std::size_t class_budget)
    : state_(std::make_unique<State>(State{std::move(system), class_budget})) {
  state_->exact_cells[{state_->system.root(), Rational(0)}] = 1;
}

LevelWalker::~LevelWalker() = default;
LevelWalker::LevelWalker(LevelWalker&&) noexcept = default;
LevelWalker& LevelWalker::operator=(LevelWalker&&) noexcept = default;

int LevelWalker::depth() const { return state_->depth; }

void LevelWalker::advance() {
  if (state_->exact && !state_->advance_exact()) state_->to_real();
  if (!state_->exact) state_->advance_real();
  ++state_->depth;
}

std::vector<WeightClass> LevelWalker::weight_classes() const {
  std::map<double, BigInt> merged;
  if (state_->exact) {
    std::map<Rational, BigInt> by_weight;
    for (const auto& [key, count] : state_->exact_cells) by_weight[key.second] += count;
    for (auto& [w, count] : by_weight) merged[w.to_double()] += count;
  } else {
    for (const auto& [key, count] : state_->real_cells) merged[key.second] += count;
  }
  std::vector<WeightClass> classes;
  classes.reserve(merged.size());
  for (auto& [w, count] : merged) classes.push_back({w, std::move(count)});
  return classes;
}

// ---------------------------------------------------------------------------
// Level solutions

LevelSolution solve_level(int level, const std::vector<WeightClass>& classes, const SolverOptions& options) {
  if (classes.empty()) throw ModelError("empty level support");
  LevelSolution sol;
  sol.level = level;
  sol.support_size = 0;
  double w_min = std::numeric_limits<double>::infinity();
  std::vector<double> log_counts;
  for (const auto& c : classes) {
    sol.support_size += c.count;
    w_min = std::min(w_min, c.weight);
    log_counts.push_back(log_big(c.count));
  }

  if (sol.support_size == 1) {
    sol.avg_weight = classes.front().weight;
    return sol;
  }

  auto target = [&](double s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) sum += std::exp(log_counts[i] - classes[i].weight * s);
    return sum - 1.0;
  };
  const double hi = widen_upper(target, log_big(sol.support_size) / w_min);
  auto r = bisect_decreasing(target, 0.0, hi, options.bisection_tol, options.bisection_max_iter);
  sol.rate = r.value;
  sol.residual = r.residual;
  sol.iterations = r.iterations;

  for (std::size_t i = 0; i < classes.size(); ++i) {
    const double q = std::exp(-classes[i].weight * sol.rate);
    const double mass = std::exp(log_counts[i] - classes[i].weight * sol.rate);
    sol.avg_weight += mass * classes[i].weight;
    if (q > 0.0) sol.entropy -= mass * std::log(q);
  }
  return sol;
}

LevelSolution solve_level_rate(const BranchSystem& system, int level, const MaxentOptions& options) {
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  LevelWalker walker(system, options.class_budget);
  for (int l = 0; l < level; ++l) walker.advance();
  return solve_level(level, walker.weight_classes(), options.solver);
}

std::vector<PathProbability> level_paths(const BranchSystem& system, int level, std::size_t path_budget) {
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  std::vector<PathProbability> paths;
  struct Frame {
    NodeHandle node;
    std::string label;
    double weight;
    int depth;
  };
  std::vector<Frame> stack{{system.root(), "", 0.0, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.depth == level) {
      if (paths.size() >= path_budget) {
        throw BudgetExceeded("level " + std::to_string(level) + " has more than " + std::to_string(path_budget) +
                             " paths");
      }
      paths.push_back({std::move(f.label), f.weight, 0.0});
      continue;
    }
    auto branches = system.expand(f.node);
    if (branches.empty()) throw ModelError("node after '" + f.label + "' has no outgoing branch");
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
      stack.push_back({it->next, f.label + it->symbol.label, f.weight + it->symbol.weight.value(), f.depth + 1});
    }
  }
  return paths;
}

MaxentPmf maxent_pmf(const BranchSystem& system, int level, double rate, const MaxentOptions& options) {
  MaxentPmf out;
  out.rate = rate;
  out.pmf.level = level;
  out.pmf.entries = level_paths(system, level, options.path_budget);
  double total = 0.0;
  for (auto& e : out.pmf.entries) {
    e.probability = std::exp(-e.weight * rate);
    total += e.probability;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw PmfError("rate " + format_double(rate) + " does not solve level " + std::to_string(level) +
                   " (masses sum to " + format_double(total) + ")");
  }
  return out;
}

EntropyAndWeight entropy_and_avg_weight(const LevelPmf& pmf) {
  double total = 0.0;
  EntropyAndWeight out{0.0, 0.0};
  for (const auto& e : pmf.entries) {
    if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
      throw PmfError("probability of '" + e.label + "' is not a finite nonnegative number");
    }
    total += e.probability;
    out.avg_weight += e.probability * e.weight;
    if (e.probability > 0.0) out.entropy -= e.probability * std::log(e.probability);
  }
  if (std::abs(total - 1.0) > 1e-6) throw PmfError("probabilities sum to " + format_double(total));
  return out;
}

KlGap kl_gap(const LevelPmf& p, const BranchSystem& system, int level, const MaxentOptions& options) {
  const LevelSolution sol = solve_level_rate(system, level, options);
  const MaxentPmf q = maxent_pmf(system, level, sol.rate, options);

  std::unordered_map<std::string, const PathProbability*> support;
  for (const auto& e : q.pmf.entries) support.emplace(e.label, &e);

  LevelPmf aligned;
  aligned.level = level;
  double gap = 0.0;
  for (const auto& e : p.entries) {
    auto it = support.find(e.label);
    if (it == support.end()) throw PmfError("'" + e.label + "' is not a depth-" + std::to_string(level) + " path");
    aligned.entries.push_back({e.label, it->second->weight, e.probability});
    if (e.probability > 0.0) gap += e.probability * std::log(e.probability / it->second->probability);
  }
  const auto hw = entropy_and_avg_weight(aligned);
  return {gap, hw.entropy / hw.avg_weight, sol.rate};
}

ProbCapacity cprob_estimate(const BranchSystem& system, int l_max, double tail_fraction, const MaxentOptions& options) {
  if (l_max < 2) throw std::invalid_argument("l_max must be at least 2");
  ProbCapacity out;
  LevelWalker walker(system, options.class_budget);
  for (int l = 1; l <= l_max; ++l) {
    try {
      walker.advance();
    } catch (const BudgetExceeded&) {
      out.truncated = true;
      break;
    }
    out.levels.push_back(solve_level(l, walker.weight_classes(), options.solver));
  }
  if (out.levels.empty()) throw BudgetExceeded("no level fits in the class budget");

  std::vector<double> rates;
  for (const auto& level : out.levels) rates.push_back(level.rate);
  const TailWindow tail = tail_window(rates, tail_fraction);
  out.estimate.value = tail.max;
  out.estimate.lo = tail.min;
  out.estimate.hi = tail.max;
  out.estimate.method = Method::empirical;
  out.estimate.iterations = static_cast<int>(rates.size());
  out.estimate.source = "maxent";
  return out;
}

void write_level_tsv(std::ostream& out, const std::vector<LevelSolution>& levels, bool in_bits) {
  const double scale = in_bits ? 1.0 / std::log(2.0) : 1.0;
  out << "l\tsupport_size\tR_l\tL_l\tH_l\tH_l/L_l\n";
  for (const auto& s : levels) {
    out << s.level << '\t' << s.support_size.str() << '\t' << format_double(s.rate * scale) << '\t'
        << format_double(s.avg_weight) << '\t' << format_double(s.entropy * scale) << '\t'
        << format_double(s.avg_weight > 0 ? s.entropy / s.avg_weight * scale : 0.0) << '\n';
  }
}

}  // namespace dnc
