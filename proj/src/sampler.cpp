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

#include "dnc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <thread>

#include "dnc/format.hpp"
#include "dnc/perron.hpp"

namespace dnc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

// Uniform on [0, 1) from the top 53 bits; std distributions are not
// portable across standard libraries.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename Weights>
std::size_t pick(std::mt19937_64& rng, const Weights& weights, double total) {
  const double u = unit_uniform(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

}  // namespace

MaxentChain maxent_chain(const WeightedFsm& fsm, const CapacityEstimate& capacity, const SolverOptions& options) {
  if (!fsm.is_strongly_connected()) {
    throw ModelError("maxentropic chain needs a strongly connected fsm (Perron vector not unique)");
  }
  const double s = capacity.value;
  const auto perron = perron_root(transfer_matrix(fsm, s), options.power_tol, options.power_max_iter);

  MaxentChain chain{fsm, s, {}, perron.vector / perron.vector(static_cast<Eigen::Index>(fsm.start()))};
  const Eigen::VectorXd& b = chain.right_eigvec;
  chain.transitions.resize(fsm.num_states());
  for (std::size_t i = 0; i < fsm.num_states(); ++i) {
    double row = 0.0;
    for (const auto& t : fsm.outgoing(i)) {
      const double p = b(static_cast<Eigen::Index>(t.to)) / b(static_cast<Eigen::Index>(i)) *
                       std::exp(-t.symbol.weight.value() * s);
      chain.transitions[i].push_back({t.symbol, t.to, p});
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-10) {
      throw EstimatorFailure("capacity " + format_double(s) + " does not match this fsm (row " + std::to_string(i) +
                             " sums to " + format_double(row) + ")");
    }
  }
  return chain;
}

Eigen::MatrixXd chain_matrix(const MaxentChain& chain) {
  const auto n = static_cast<Eigen::Index>(chain.transitions.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < chain.transitions.size(); ++i) {
    for (const auto& t : chain.transitions[i]) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t.to)) += t.probability;
  }
  return p;
}

Eigen::VectorXd stationary_distribution(const MaxentChain& chain) {
  const Eigen::MatrixXd p = chain_matrix(chain);
  const auto n = p.rows();
  Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;
  return a.fullPivLu().solve(rhs);
}

double analytic_entropy_rate(const MaxentChain& chain) {
  const Eigen::VectorXd pi = stationary_distribution(chain);
  double entropy = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < chain.transitions.size(); ++i) {
    for (const auto& t : chain.transitions[i]) {
      const double mass = pi(static_cast<Eigen::Index>(i)) * t.probability;
      if (t.probability > 0.0) entropy -= mass * std::log(t.probability);
      weight += mass * t.symbol.weight.value();
    }
  }
  return entropy / weight;
}

std::vector<SampledPath> sample_paths(const MaxentChain& chain, std::size_t count, std::size_t steps,
                                      std::uint64_t seed, unsigned threads) {
  if (count == 0 || steps == 0) throw std::invalid_argument("count and steps must be at least 1");
  std::vector<SampledPath> paths(count);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> probs;
    for (std::size_t index = begin; index < end; ++index) {
      auto rng = path_stream(seed, index);
      SampledPath& path = paths[index];
      path.labels.reserve(steps);
      std::size_t state = chain.fsm.start();
      for (std::size_t step = 0; step < steps; ++step) {
        const auto& out = chain.transitions[state];
        probs.clear();
        double total = 0.0;
        for (const auto& t : out) {
          probs.push_back(t.probability);
          total += t.probability;
        }
        const auto& t = out[pick(rng, probs, total)];
        path.labels.push_back(t.symbol.label);
        path.weight += t.symbol.weight.value();
        path.log_probability += std::log(t.probability);
        state = t.to;
      }
      if (!chain.fsm.accepts(path.labels)) throw std::logic_error("sampled path rejected by its own fsm");
    }
  };

  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(count, 256)));
  if (threads == 1) {
    work(0, count);
    return paths;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(count, t * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return paths;
}

std::vector<SampledPath> sample_level_paths(const BranchSystem& system, int level, double rate, std::size_t count,
                                            std::uint64_t seed) {
  if (level < 1 || count == 0) throw std::invalid_argument("level and count must be at least 1");
  std::map<std::pair<NodeHandle, int>, double> mass;

  // Subtree mass: sum over completions to depth `level` of exp(-w rate).
  auto subtree = [&](auto&& self, NodeHandle node, int depth) -> double {
    if (depth == level) return 1.0;
    auto key = std::make_pair(node, depth);
    if (auto it = mass.find(key); it != mass.end()) return it->second;
    double total = 0.0;
    for (const auto& b : system.expand(node)) {
      total += std::exp(-b.symbol.weight.value() * rate) * self(self, b.next, depth + 1);
    }
    if (total <= 0.0) throw ModelError("node has no continuation to the requested depth");
    mass.emplace(key, total);
    return total;
  };

  std::vector<SampledPath> paths(count);
  std::vector<double> probs;
  for (std::size_t index = 0; index < count; ++index) {
    auto rng = path_stream(seed, index);
    SampledPath& path = paths[index];
    NodeHandle node = system.root();
    for (int depth = 0; depth < level; ++depth) {
      const auto branches = system.expand(node);
      const double here = subtree(subtree, node, depth);
      probs.clear();
      for (const auto& b : branches) {
        probs.push_back(std::exp(-b.symbol.weight.value() * rate) * subtree(subtree, b.next, depth + 1) / here);
      }
      double total = 0.0;
      for (double p : probs) total += p;
      const std::size_t chosen = pick(rng, probs, total);
      path.labels.push_back(branches[chosen].symbol.label);
      path.weight += branches[chosen].symbol.weight.value();
      path.log_probability += std::log(probs[chosen]);
      node = branches[chosen].next;
    }
  }
  return paths;
}

double empirical_entropy_rate(std::span<const SampledPath> samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  double information = 0.0;
  double weight = 0.0;
  for (const auto& s : samples) {
    information -= s.log_probability;
    weight += s.weight;
  }
  return information / weight;
}

void write_samples_tsv(std::ostream& out, std::span<const SampledPath> samples) {
  for (const auto& s : samples) {
    for (const auto& label : s.labels) out << label;
    out << '\t' << format_double(s.weight) << '\t' << format_double(s.log_probability) << '\n';
  }
}

}  // namespace dnc
