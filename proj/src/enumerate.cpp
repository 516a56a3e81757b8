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

#include "dnc/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "dnc/format.hpp"

namespace dnc {

double log_big(const BigInt& value) {
  if (value <= 0) throw std::domain_error("log of a nonpositive count");
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 1000) return std::log(value.convert_to<double>());
  const std::size_t shift = bits - 64;
  BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

const char* to_string(Method method) {
  switch (method) {
    case Method::empirical:
      return "empirical";
    case Method::characteristic_root:
      return "characteristic_root";
    case Method::spectral_radius:
      return "spectral_radius";
    case Method::abscissa:
      return "abscissa";
  }
  return "unknown";
}

TailWindow tail_window(std::span<const double> sequence, double fraction) {
  if (sequence.empty()) throw std::invalid_argument("tail window of an empty sequence");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("tail fraction must be in (0, 1]");
  auto size = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(sequence.size())));
  size = std::clamp<std::size_t>(size, 1, sequence.size());
  TailWindow w;
  w.begin = sequence.size() - size;
  auto tail = sequence.subspan(w.begin);
  w.max = *std::max_element(tail.begin(), tail.end());
  w.min = *std::min_element(tail.begin(), tail.end());
  return w;
}

WeightSpectrum weight_spectrum(const BranchSystem& system, const Rational& w_max, SpectrumOptions options) {
  if (w_max <= 0) throw std::invalid_argument("w_max must be positive");

  std::unordered_map<NodeHandle, std::vector<Branch>> expansions;
  auto branches_of = [&](NodeHandle node) -> const std::vector<Branch>& {
    auto it = expansions.find(node);
    if (it == expansions.end()) {
      auto branches = system.expand(node);
      for (const auto& b : branches) {
        validate_symbol(b.symbol);
        if (!b.symbol.weight.is_exact()) {
          throw ModelError("weight spectrum needs exact weights; symbol '" + b.symbol.label + "' is real-only");
        }
      }
      it = expansions.emplace(node, std::move(branches)).first;
    }
    return it->second;
  };

  // frontier[w][node] = number of root paths of weight w ending at node
  std::map<Rational, std::unordered_map<NodeHandle, BigInt>> frontier;
  frontier[Rational(0)][system.root()] = 1;
  std::size_t live_states = 1;

  WeightSpectrum spectrum;
  spectrum.w_max = w_max;
  while (!frontier.empty()) {
    auto node = frontier.extract(frontier.begin());
    const Rational& weight = node.key();
    auto& states = node.mapped();
    live_states -= states.size();

    if (weight > 0) {
      BigInt total = 0;
      for (const auto& [handle, count] : states) total += count;
      spectrum.entries.push_back({weight, std::move(total)});
    }
    for (const auto& [handle, count] : states) {
      for (const auto& branch : branches_of(handle)) {
        Rational next = weight + *branch.symbol.weight.exact();
        if (next > w_max) continue;
        auto& bucket = frontier[next];
        auto [slot, inserted] = bucket.try_emplace(branch.next, 0);
        slot->second += count;
        if (inserted && ++live_states > options.state_budget) {
          throw BudgetExceeded("weight spectrum exceeded " + std::to_string(options.state_budget) + " states");
        }
      }
    }
  }
  return spectrum;
}

std::vector<std::int64_t> weights_below(const WeightSpectrum& spectrum) {
  const std::int64_t n_max = spectrum.w_max.floor();
  std::vector<std::int64_t> k_of_n;
  std::size_t k = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    while (k < spectrum.entries.size() && spectrum.entries[k].weight < Rational(n)) ++k;
    k_of_n.push_back(static_cast<std::int64_t>(k));
  }
  return k_of_n;
}

DensityReport density_check(const WeightSpectrum& spectrum, DensityOptions options) {
  if (spectrum.entries.empty()) throw std::invalid_argument("density check of an empty spectrum");
  auto k_of_n = weights_below(spectrum);
  std::vector<std::int64_t> n_range(k_of_n.size());
  for (std::size_t i = 0; i < n_range.size(); ++i) n_range[i] = static_cast<std::int64_t>(i) + 1;
  return density_check(std::move(n_range), std::move(k_of_n), options);
}

DensityReport density_check(std::vector<std::int64_t> n_range, std::vector<std::int64_t> k_of_n,
                            DensityOptions options) {
  if (n_range.size() != k_of_n.size()) throw std::invalid_argument("n_range and k_of_n differ in length");
  DensityReport report;
  report.n_range = std::move(n_range);
  report.k_of_n = std::move(k_of_n);

  auto bound_holds = [&](double L, double K) {
    for (std::size_t i = 0; i < report.n_range.size(); ++i) {
      const double n = static_cast<double>(report.n_range[i]);
      if (static_cast<double>(report.k_of_n[i]) > L * std::pow(n, K)) return false;
    }
    return true;
  };

  if (options.L && options.K) {
    report.fitted_L = *options.L;
    report.fitted_K = *options.K;
    report.passes = bound_holds(*options.L, *options.K);
    return report;
  }

  double K = 0.0;
  std::optional<std::size_t> previous;
  for (std::size_t i = 0; i < report.n_range.size(); ++i) {
    if (report.k_of_n[i] <= 0) continue;
    if (previous) {
      const double dn = std::log(static_cast<double>(report.n_range[i])) -
                        std::log(static_cast<double>(report.n_range[*previous]));
      const double dk = std::log(static_cast<double>(report.k_of_n[i])) -
                        std::log(static_cast<double>(report.k_of_n[*previous]));
      if (dn > 0) K = std::max(K, dk / dn);
    }
    previous = i;
  }
  double L = 0.0;
  for (std::size_t i = 0; i < report.n_range.size(); ++i) {
    const double n = static_cast<double>(report.n_range[i]);
    L = std::max(L, static_cast<double>(report.k_of_n[i]) / std::pow(n, K));
  }
  report.fitted_K = K;
  report.fitted_L = L;
  report.passes = K <= options.polynomial_cap;
  return report;
}

EmpiricalCapacity empirical_capacity(const WeightSpectrum& spectrum, double tail_fraction) {
  if (spectrum.entries.size() < 2) throw std::invalid_argument("empirical capacity needs at least two spectrum entries");
  EmpiricalCapacity result;
  result.sequence.reserve(spectrum.entries.size());
  for (const auto& e : spectrum.entries) result.sequence.push_back(log_big(e.count) / e.weight.to_double());

  const TailWindow tail = tail_window(result.sequence, tail_fraction);
  result.estimate.value = tail.max;
  result.estimate.lo = tail.min;
  result.estimate.hi = tail.max;
  result.estimate.method = Method::empirical;
  result.estimate.iterations = static_cast<int>(result.sequence.size());
  result.estimate.source = "spectrum";
  return result;
}

void write_spectrum_tsv(std::ostream& out, const WeightSpectrum& spectrum) {
  out << "weight\tcount\tc_k\n";
  for (const auto& e : spectrum.entries) {
    out << e.weight.to_string() << '\t' << e.count.str() << '\t'
        << format_double(log_big(e.count) / e.weight.to_double()) << '\n';
  }
}

}  // namespace dnc
